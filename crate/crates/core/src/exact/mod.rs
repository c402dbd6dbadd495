//! Exact coefficient-level checks with truncated bivariate power series over
//! arbitrary-precision rationals.

mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::Index;
pub use crate::relations::MonomialArg;
use crate::relations::{self, LiFactor, LiRelation, LiTerm};
pub use poly::BivariatePoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("non-convergent expansion: gap {gap} has total degree {degree} < 1")]
    NonconvergentExpansion { gap: usize, degree: i32 },
    #[error("negative exponent: gap {gap} carries x^{a} y^{b}")]
    NegativeExponent { gap: usize, a: i32, b: i32 },
    #[error("argument count {args} does not match the depth {depth}")]
    ArityMismatch { args: usize, depth: usize },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("missing parameter {0}")]
    MissingParam(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Parameters of a parametrized identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
}

impl ExactParams {
    pub fn k(k: u32) -> Self {
        Self { k: Some(k), ..Self::default() }
    }

    pub fn ij(i: u32, j: u32) -> Self {
        Self { i: Some(i), j: Some(j), ..Self::default() }
    }

    pub fn pq(p: u32, q: u32) -> Self {
        Self { p: Some(p), q: Some(q), ..Self::default() }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Power series of `Li_index(args)` with monomial arguments, to total degree `n`.
///
/// Enumerates gap variables `d_j >= 1`; gap `j` contributes
/// `(x^{alpha_j} y^{beta_j})^{d_j}` with `(alpha_j, beta_j)` the suffix product of
/// the arguments. Each gap must have total degree at least 1.
pub fn expand_li(index: &Index, args: &[MonomialArg], n: u32) -> Result<BivariatePoly, ExactError> {
    let r = index.depth();
    if args.len() != r {
        return Err(ExactError::ArityMismatch { args: args.len(), depth: r });
    }
    if r == 0 {
        return Ok(BivariatePoly::one(n));
    }
    let gaps = LiFactor { index: index.clone(), args: args.to_vec() }.gap_monomials();
    for (j, g) in gaps.iter().enumerate() {
        if g.degree() < 1 {
            return Err(ExactError::NonconvergentExpansion { gap: j + 1, degree: g.degree() });
        }
        if g.a < 0 || g.b < 0 {
            return Err(ExactError::NegativeExponent { gap: j + 1, a: g.a, b: g.b });
        }
    }
    let mut out = BivariatePoly::zero(n);
    let steps: Vec<(u32, u32)> = gaps.iter().map(|g| (g.a as u32, g.b as u32)).collect();
    let mut state = Enum { parts: index.parts(), steps: &steps, n, out: &mut out };
    state.rec(0, 0, 0, 0, BigInt::one());
    Ok(out)
}

struct Enum<'a> {
    parts: &'a [u32],
    steps: &'a [(u32, u32)],
    n: u32,
    out: &'a mut BivariatePoly,
}

impl Enum<'_> {
    fn rec(&mut self, level: usize, m: u64, a: u32, b: u32, den: BigInt) {
        if level == self.parts.len() {
            self.out.add_term(a, b, BigRational::new(BigInt::one(), den));
            return;
        }
        let (da, db) = self.steps[level];
        let mut d = 1u32;
        loop {
            let (na, nb) = (a + d * da, b + d * db);
            if na + nb > self.n {
                break;
            }
            let mj = m + d as u64;
            let den_j = &den * BigInt::from(mj).pow(self.parts[level]);
            self.rec(level + 1, mj, na, nb, den_j);
            d += 1;
        }
    }
}

fn expand_term(term: &LiTerm, n: u32) -> Result<BivariatePoly, ExactError> {
    let mut acc = BivariatePoly::one(n);
    for f in &term.factors {
        acc = acc.mul(&expand_li(&f.index, &f.args, n)?)?;
    }
    Ok(acc.scale(&rat(term.num, term.den)))
}

fn expand_side(terms: &[LiTerm], n: u32) -> Result<BivariatePoly, ExactError> {
    let mut acc = BivariatePoly::zero(n);
    for t in terms {
        acc = acc.add(&expand_term(t, n)?)?;
    }
    Ok(acc)
}

/// `LHS - RHS` of a relation as a power series to total degree `n`.
pub fn relation_difference(rel: &LiRelation, n: u32) -> Result<BivariatePoly, ExactError> {
    expand_side(&rel.lhs, n)?.sub(&expand_side(&rel.rhs, n)?)
}

/// `1/(m^i n^j) = sum_mu [C(mu-1,i-1) / (n^{i+j-mu} (m+n)^mu) + C(mu-1,j-1) / (m^{i+j-mu} (m+n)^mu)]`
/// checked in exact rational arithmetic.
pub fn exact_check_partial_fraction(i: u32, j: u32, m: u64, n: u64) -> bool {
    assert!(i >= 1 && j >= 1 && m >= 1 && n >= 1);
    let pow = |b: u64, e: u32| BigInt::from(b).pow(e);
    let lhs = BigRational::new(BigInt::one(), pow(m, i) * pow(n, j));
    let binom = |a: u32, b: u32| -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        let mut r = BigInt::one();
        for t in 0..b {
            r = r * BigInt::from(a - t) / BigInt::from(t + 1);
        }
        r
    };
    let mut rhs = BigRational::zero();
    for mu in 1..i + j {
        let s = pow(m + n, mu);
        rhs += BigRational::new(binom(mu - 1, i - 1), pow(n, i + j - mu) * &s);
        rhs += BigRational::new(binom(mu - 1, j - 1), pow(m, i + j - mu) * &s);
    }
    lhs == rhs
}

/// Identities with an exact coefficient check.
pub const EXACT_IDS: [&str; 6] = ["thm1.2", "lemma2.1", "eq2.3", "stuffle", "eq2.5", "eq2.6"];

/// Term list of an exactly checkable identity.
pub fn exact_relation(id: &str, params: &ExactParams) -> Result<LiRelation, ExactError> {
    let k = || params.k.ok_or(ExactError::MissingParam("k"));
    let need = |v: Option<u32>, name: &'static str| v.filter(|&v| v >= 1).ok_or(ExactError::MissingParam(name));
    let k2 = || k().and_then(|k| if k >= 2 { Ok(k) } else { Err(ExactError::MissingParam("k >= 2")) });
    Ok(match id {
        "thm1.2" => relations::thm1_2(k2()?),
        "lemma2.1" => relations::lemma2_1(k2()?),
        "eq2.3" => relations::eq2_3(need(params.i, "i")?, need(params.j, "j")?),
        "stuffle" => relations::stuffle(need(params.p, "p")?, need(params.q, "q")?),
        "eq2.5" => relations::eq2_5(k2()?),
        "eq2.6" => relations::eq2_6(k2()?),
        other => return Err(ExactError::UnknownIdentity(other.to_string())),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub id: String,
    pub params: ExactParams,
    pub degree: u32,
    /// Largest `|coefficient|` of `LHS - RHS`, as `num/den`.
    pub max_abs_diff: String,
    /// First exponent pair with a nonzero difference.
    pub offending: Option<(u32, u32)>,
    pub nonzero_terms: usize,
}

impl ExactReport {
    pub fn is_zero(&self) -> bool {
        self.nonzero_terms == 0
    }
}

pub fn exact_check_identity(id: &str, params: &ExactParams, n: u32) -> Result<ExactReport, ExactError> {
    let rel = exact_relation(id, params)?;
    let diff = relation_difference(&rel, n)?;
    let (max, offending) = diff.max_abs_coeff();
    Ok(ExactReport {
        id: id.to_string(),
        params: *params,
        degree: n,
        max_abs_diff: format!("{}/{}", max.numer(), max.denom()),
        offending,
        nonzero_terms: diff.len(),
    })
}

/// Difference polynomial of an identity (for coefficient dumps).
pub fn identity_difference(id: &str, params: &ExactParams, n: u32) -> Result<BivariatePoly, ExactError> {
    relation_difference(&exact_relation(id, params)?, n)
}
