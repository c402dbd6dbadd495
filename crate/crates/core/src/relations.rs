//! Polylogarithm relations as declarative term lists.
//!
//! A relation is `sum of LHS terms = sum of RHS terms`, each term a rational
//! coefficient times a product of `Li_k(args)` factors whose arguments are
//! monomials `x^a y^b`. The same list drives the exact coefficient check
//! (as formal power series) and the numerical check (at sample points).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::index::Index;

/// Formal argument `x^a y^b`; exponents may be negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialArg {
    pub a: i32,
    pub b: i32,
}

impl MonomialArg {
    pub const ONE: MonomialArg = MonomialArg { a: 0, b: 0 };

    pub const fn new(a: i32, b: i32) -> Self {
        Self { a, b }
    }

    pub fn degree(self) -> i32 {
        self.a + self.b
    }

    pub fn eval(self, x: Complex64, y: Complex64) -> Complex64 {
        x.powi(self.a) * y.powi(self.b)
    }
}

impl fmt::Display for MonomialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return write!(f, "1");
        }
        for (v, e) in [("x", self.a), ("y", self.b)] {
            match e {
                0 => {}
                1 => write!(f, "{v}")?,
                e => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::ops::Mul for MonomialArg {
    type Output = MonomialArg;

    fn mul(self, o: MonomialArg) -> MonomialArg {
        MonomialArg::new(self.a + o.a, self.b + o.b)
    }
}

impl FromStr for MonomialArg {
    type Err = String;

    /// `1`, `x`, `y`, `xy`, `x^-1y`, `xy^-2`, `x^2`, ...
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "1" {
            return Ok(MonomialArg::ONE);
        }
        let mut out = MonomialArg::ONE;
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut seen = (false, false);
        if chars.is_empty() {
            return Err("empty monomial".into());
        }
        while i < chars.len() {
            let var = chars[i];
            i += 1;
            let mut exp = 1i32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                exp = t.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            }
            match var {
                'x' if !seen.0 => {
                    seen.0 = true;
                    out.a += exp;
                }
                'y' if !seen.1 => {
                    seen.1 = true;
                    out.b += exp;
                }
                _ => return Err(format!("cannot parse monomial {s:?}")),
            }
        }
        Ok(out)
    }
}

/// `Li_index(args)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiFactor {
    pub index: Index,
    pub args: Vec<MonomialArg>,
}

impl LiFactor {
    pub fn new(parts: &[u32], args: &[(i32, i32)]) -> Self {
        assert_eq!(parts.len(), args.len());
        Self {
            index: Index::new(parts.to_vec()).expect("positive parts"),
            args: args.iter().map(|&(a, b)| MonomialArg::new(a, b)).collect(),
        }
    }

    /// Gap monomials `prod_{i >= j} arg_i`, innermost first.
    pub fn gap_monomials(&self) -> Vec<MonomialArg> {
        let mut out = vec![MonomialArg::ONE; self.args.len()];
        let mut acc = MonomialArg::ONE;
        for j in (0..self.args.len()).rev() {
            acc = acc * self.args[j];
            out[j] = acc;
        }
        out
    }

    pub fn gap_weights(&self, x: Complex64, y: Complex64) -> Vec<Complex64> {
        self.gap_monomials().into_iter().map(|m| m.eval(x, y)).collect()
    }
}

impl fmt::Display for LiFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "Li_{{{}}}({})", self.index, args.join(", "))
    }
}

/// `(num/den) * prod factors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiTerm {
    pub num: i64,
    pub den: i64,
    pub factors: Vec<LiFactor>,
}

impl LiTerm {
    pub fn new(num: i64, factors: Vec<LiFactor>) -> Self {
        Self { num, den: 1, factors }
    }

    pub fn coeff(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiRelation {
    pub lhs: Vec<LiTerm>,
    pub rhs: Vec<LiTerm>,
}

fn li(parts: &[u32], args: &[(i32, i32)]) -> LiFactor {
    LiFactor::new(parts, args)
}

fn t(num: i64, factors: Vec<LiFactor>) -> LiTerm {
    LiTerm::new(num, factors)
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

const X: (i32, i32) = (1, 0);
const Y: (i32, i32) = (0, 1);
const XY: (i32, i32) = (1, 1);
const ONE: (i32, i32) = (0, 0);
const XINV_Y: (i32, i32) = (-1, 1);
const X_YINV: (i32, i32) = (1, -1);
const XINV: (i32, i32) = (-1, 0);
const YINV: (i32, i32) = (0, -1);

fn kk(k: u32) -> i32 {
    k as i32
}

/// Two-variable weighted sum formula (`k >= 2`):
/// `sum_j 2^{j-1} (Li_{k-j,j}(y/x, x) + Li_{k-j,j}(x/y, y)) + Li_{1,k-1}(1/x, xy) + Li_{1,k-1}(1/y, xy)
///  = (Li_1(x) + Li_1(y)) Li_{k-1}(xy) + (k-1) Li_k(xy)`.
pub fn thm1_2(k: u32) -> LiRelation {
    assert!(k >= 2);
    let mut lhs = Vec::new();
    for j in 1..k {
        let w = 1i64 << (j - 1);
        lhs.push(t(w, vec![li(&[k - j, j], &[XINV_Y, X])]));
        lhs.push(t(w, vec![li(&[k - j, j], &[X_YINV, Y])]));
    }
    lhs.push(t(1, vec![li(&[1, k - 1], &[XINV, XY])]));
    lhs.push(t(1, vec![li(&[1, k - 1], &[YINV, XY])]));
    let rhs = vec![
        t(1, vec![li(&[1], &[X]), li(&[k - 1], &[XY])]),
        t(1, vec![li(&[1], &[Y]), li(&[k - 1], &[XY])]),
        t(kk(k) as i64 - 1, vec![li(&[k], &[XY])]),
    ];
    LiRelation { lhs, rhs }
}

/// One-variable version on `|x| = 1`:
/// `sum_j 2^{j-1} (Li_{k-j,j}(x^-2, x) + Li_{k-j,j}(x^2, 1/x)) - Li_{k-1,1}(1, x) - Li_{k-1,1}(1, 1/x)
///  = Li_k(x) + Li_k(1/x) + (k-1) zeta(k)`.
pub fn cor1_2(k: u32) -> LiRelation {
    assert!(k >= 2);
    let mut lhs = Vec::new();
    for j in 1..k {
        let w = 1i64 << (j - 1);
        lhs.push(t(w, vec![li(&[k - j, j], &[(-2, 0), X])]));
        lhs.push(t(w, vec![li(&[k - j, j], &[(2, 0), XINV])]));
    }
    lhs.push(t(-1, vec![li(&[k - 1, 1], &[ONE, X])]));
    lhs.push(t(-1, vec![li(&[k - 1, 1], &[ONE, XINV])]));
    let rhs = vec![t(1, vec![li(&[k], &[X])]), t(1, vec![li(&[k], &[XINV])]), t(k as i64 - 1, vec![li(&[k], &[ONE])])];
    LiRelation { lhs, rhs }
}

/// `sum_j Li_{k-j}(x) Li_j(y) = sum_mu 2^{mu-1} (Li_{k-mu,mu}(y/x, x) + Li_{k-mu,mu}(x/y, y))`.
pub fn lemma2_1(k: u32) -> LiRelation {
    assert!(k >= 2);
    let lhs = (1..k).map(|j| t(1, vec![li(&[k - j], &[X]), li(&[j], &[Y])])).collect();
    let mut rhs = Vec::new();
    for mu in 1..k {
        let w = 1i64 << (mu - 1);
        rhs.push(t(w, vec![li(&[k - mu, mu], &[XINV_Y, X])]));
        rhs.push(t(w, vec![li(&[k - mu, mu], &[X_YINV, Y])]));
    }
    LiRelation { lhs, rhs }
}

/// Partial-fraction expansion of a product of two polylogarithms:
/// `Li_i(x) Li_j(y) = sum_mu C(mu-1, i-1) Li_{i+j-mu,mu}(y/x, x) + C(mu-1, j-1) Li_{i+j-mu,mu}(x/y, y)`.
pub fn eq2_3(i: u32, j: u32) -> LiRelation {
    assert!(i >= 1 && j >= 1);
    let k = i + j;
    let lhs = vec![t(1, vec![li(&[i], &[X]), li(&[j], &[Y])])];
    let mut rhs = Vec::new();
    for mu in 1..k {
        let c1 = binom(mu as i64 - 1, i as i64 - 1);
        let c2 = binom(mu as i64 - 1, j as i64 - 1);
        if c1 != 0 {
            rhs.push(t(c1, vec![li(&[k - mu, mu], &[XINV_Y, X])]));
        }
        if c2 != 0 {
            rhs.push(t(c2, vec![li(&[k - mu, mu], &[X_YINV, Y])]));
        }
    }
    LiRelation { lhs, rhs }
}

/// `Li_p(x) Li_q(y) = Li_{p,q}(x, y) + Li_{q,p}(y, x) + Li_{p+q}(xy)`.
pub fn stuffle(p: u32, q: u32) -> LiRelation {
    assert!(p >= 1 && q >= 1);
    LiRelation {
        lhs: vec![t(1, vec![li(&[p], &[X]), li(&[q], &[Y])])],
        rhs: vec![t(1, vec![li(&[p, q], &[X, Y])]), t(1, vec![li(&[q, p], &[Y, X])]), t(1, vec![li(&[p + q], &[XY])])],
    }
}

/// `Li_{k-1}(xy) Li_1(y) = Li_{1,k-1}(1/x, xy) + sum_j Li_{k-j,j}(x, y)`.
pub fn eq2_5(k: u32) -> LiRelation {
    assert!(k >= 2);
    let lhs = vec![t(1, vec![li(&[k - 1], &[XY]), li(&[1], &[Y])])];
    let mut rhs = vec![t(1, vec![li(&[1, k - 1], &[XINV, XY])])];
    for j in 1..k {
        rhs.push(t(1, vec![li(&[k - j, j], &[X, Y])]));
    }
    LiRelation { lhs, rhs }
}

/// `Li_{k-1}(xy) Li_1(x) = sum_j Li_{j,k-j}(y, x) + Li_{1,k-1}(1/y, xy)`.
pub fn eq2_6(k: u32) -> LiRelation {
    assert!(k >= 2);
    let lhs = vec![t(1, vec![li(&[k - 1], &[XY]), li(&[1], &[X])])];
    let mut rhs: Vec<LiTerm> = (1..k).map(|j| t(1, vec![li(&[j, k - j], &[Y, X])])).collect();
    rhs.push(t(1, vec![li(&[1, k - 1], &[YINV, XY])]));
    LiRelation { lhs, rhs }
}

/// Combined relation on the torus `|x| = |y| = 1` obtained from the
/// one-variable formula at `x` and `y` and the two-variable formula at
/// `(1/x, y)` and `(x, 1/y)`.
pub fn wsf3(k: u32) -> LiRelation {
    assert!(k >= 2);
    let mut lhs = Vec::new();
    let ki = k as i64;
    for j in 2..k {
        let w = 1i64 << (j - 1);
        let d = [k - j, j];
        for (s, a1, a2) in [
            (1, (2, 0), XINV),
            (1, (-2, 0), X),
            (1, (0, 2), YINV),
            (1, (0, -2), Y),
            (-1, XY, XINV),
            (-1, (-1, -1), X),
            (-1, XY, YINV),
            (-1, (-1, -1), Y),
        ] {
            lhs.push(t(s * w, vec![li(&d, &[a1, a2])]));
        }
    }
    let one_k = [1, k - 1];
    for (s, a1, a2) in [
        (1, XINV, XINV_Y),
        (-1, X, XINV_Y),
        (1, Y, XINV_Y),
        (-1, YINV, XINV_Y),
        (1, X, X_YINV),
        (-1, XINV, X_YINV),
        (1, YINV, X_YINV),
        (-1, Y, X_YINV),
    ] {
        lhs.push(t(s, vec![li(&one_k, &[a1, a2])]));
    }
    let k_one = [k - 1, 1];
    for (s, a1, a2) in [
        (1, (-2, 0), X),
        (-1, ONE, X),
        (1, (2, 0), XINV),
        (-1, ONE, XINV),
        (1, (0, -2), Y),
        (-1, ONE, Y),
        (1, (0, 2), YINV),
        (-1, ONE, YINV),
        (1, XINV_Y, XINV),
        (-1, XY, XINV),
        (1, XINV_Y, Y),
        (-1, (-1, -1), Y),
        (1, X_YINV, X),
        (-1, (-1, -1), X),
        (1, X_YINV, YINV),
        (-1, XY, YINV),
    ] {
        lhs.push(t(s, vec![li(&k_one, &[a1, a2])]));
    }
    let mut rhs = Vec::new();
    for (s, a) in [(1, X), (1, XINV), (-1, (-1, 2)), (-1, (1, -2)), (1, Y), (1, YINV), (-1, (-2, 1)), (-1, (2, -1))] {
        rhs.push(t(s, vec![li(&[k], &[a])]));
    }
    rhs.push(t(2 * (ki - 1), vec![li(&[k], &[ONE])]));
    rhs.push(t(-(ki - 1), vec![li(&[k], &[XINV_Y])]));
    rhs.push(t(-(ki - 1), vec![li(&[k], &[X_YINV])]));
    LiRelation { lhs, rhs }
}
