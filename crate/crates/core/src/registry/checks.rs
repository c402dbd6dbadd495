//! Left and right sides of every numerically verified identity.

use std::collections::HashMap;

use num_complex::Complex64;

use super::sampling::{connection_u, SamplePoint};
use crate::characters::{dirichlet_l, l_sh_eval, l_sh_via_li, l_star_eval, Character, Conductor};
use crate::engine::{li_eval_gaps, ll_eval, t_value_eval, zeta_eval, EvalConfig, EvalError, EvalResult, TwoVarPoint};
use crate::index::{compositions, Index};
use crate::relations::{LiRelation, LiTerm};

/// A value with its accumulated error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Side {
    pub value: Complex64,
    pub err: f64,
    pub terms: u64,
    pub converged: bool,
}

impl Side {
    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn constant(value: Complex64) -> Self {
        Self { value, err: 0.0, terms: 0, converged: true }
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    /// `self + c * o`.
    pub fn plus(self, o: Side, c: f64) -> Self {
        Self {
            value: self.value + o.value * c,
            err: self.err + o.err * c.abs(),
            terms: self.terms + o.terms,
            converged: self.converged && o.converged,
        }
    }

    pub fn times(self, o: Side) -> Self {
        Self {
            value: self.value * o.value,
            err: self.value.norm() * o.err + o.value.norm() * self.err + self.err * o.err,
            terms: self.terms + o.terms,
            converged: self.converged && o.converged,
        }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self { value: self.value * c, err: self.err * c.norm(), ..self }
    }
}

impl From<EvalResult> for Side {
    fn from(r: EvalResult) -> Self {
        Self { value: r.value, err: r.err_est, terms: r.terms_used, converged: r.converged }
    }
}

/// One comparison inside a sample.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: Option<String>,
    pub lhs: Side,
    pub rhs: Side,
    pub tolerance: f64,
    pub relative: bool,
}

impl Check {
    pub fn new(lhs: Side, rhs: Side, tolerance: f64, relative: bool) -> Self {
        Self { label: None, lhs, rhs, tolerance, relative }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn idx(parts: Vec<u32>) -> Index {
    Index::new(parts).expect("positive parts")
}

fn ones(n: usize) -> Vec<u32> {
    vec![1; n]
}

fn li(parts: &[u32], gaps: &[Complex64], cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(li_eval_gaps(&idx(parts.to_vec()), gaps, cfg)?.into())
}

fn ll(parts: &[u32], x: Complex64, y: Complex64, cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(ll_eval(&idx(parts.to_vec()), &TwoVarPoint::new(x, y), cfg)?.into())
}

fn zeta(parts: &[u32], cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(zeta_eval(&idx(parts.to_vec()), cfg)?.into())
}

fn tval(parts: &[u32], cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(t_value_eval(&idx(parts.to_vec()), cfg)?.into())
}

fn lsh(p: u32, q: u32, chi: Character, cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(l_sh_eval(&idx(vec![p, q]), &[chi, chi], cfg)?.into())
}

fn lstar(p: u32, q: u32, chi: Character, cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(l_star_eval(p, q, chi, cfg)?.into())
}

fn dl(k: u32, chi: Character, cfg: &EvalConfig) -> Result<Side, EvalError> {
    Ok(dirichlet_l(k, chi, cfg)?.into())
}

fn term_value(term: &LiTerm, x: Complex64, y: Complex64, cfg: &EvalConfig) -> Result<Side, EvalError> {
    let mut acc = Side::real(term.coeff());
    for f in &term.factors {
        let v: Side = li_eval_gaps(&f.index, &f.gap_weights(x, y), cfg)?.into();
        acc = acc.times(v);
    }
    Ok(acc)
}

fn side_value(terms: &[LiTerm], x: Complex64, y: Complex64, cfg: &EvalConfig) -> Result<Side, EvalError> {
    let mut acc = Side::zero();
    for t in terms {
        acc = acc.plus(term_value(t, x, y, cfg)?, 1.0);
    }
    Ok(acc)
}

/// Both sides of a term-list relation at `(x, y)`.
pub fn relation_sides(
    rel: &LiRelation,
    x: Complex64,
    y: Complex64,
    cfg: &EvalConfig,
) -> Result<(Side, Side), EvalError> {
    Ok((side_value(&rel.lhs, x, y, cfg)?, side_value(&rel.rhs, x, y, cfg)?))
}

pub fn relation_check(
    rel: &LiRelation,
    pt: &SamplePoint,
    tol: f64,
    relative: bool,
    cfg: &EvalConfig,
) -> Result<Vec<Check>, EvalError> {
    let (l, r) = relation_sides(rel, pt.x, pt.y_or_zero(), cfg)?;
    Ok(vec![Check::new(l, r, tol, relative)])
}

/// `sum_{j=2}^{k-1} 2^{j-1} zeta(k-j, j)` against `(k+1)/2 zeta(k)`.
pub fn wsf_oz(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let mut lhs = Side::zero();
    for j in 2..k {
        lhs = lhs.plus(zeta(&[k - j, j], cfg)?, (1u64 << (j - 1)) as f64);
    }
    let rhs = Side::zero().plus(zeta(&[k], cfg)?, (k as f64 + 1.0) / 2.0);
    Ok(vec![Check::new(lhs, rhs, tol, true)])
}

/// `sum_{j=2}^{k-1} 2^{j-1} T(k-j, j)` against `(k-1) T(k)`.
pub fn wsf_kt(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let mut lhs = Side::zero();
    for j in 2..k {
        lhs = lhs.plus(tval(&[k - j, j], cfg)?, (1u64 << (j - 1)) as f64);
    }
    let rhs = Side::zero().plus(tval(&[k], cfg)?, k as f64 - 1.0);
    Ok(vec![Check::new(lhs, rhs, tol, true)])
}

/// Weighted sum of `L_sh(k-j, j; chi, chi)` plus the extra `L_sh(k-1, 1)`.
fn weighted_lsh(k: u32, chi: Character, cfg: &EvalConfig) -> Result<Side, EvalError> {
    let mut s = Side::zero();
    for j in 1..k {
        s = s.plus(lsh(k - j, j, chi, cfg)?, (1u64 << (j - 1)) as f64);
    }
    Ok(s.plus(lsh(k - 1, 1, chi, cfg)?, 1.0))
}

/// Sides of the conductor-4 weighted sum formula.
pub fn prop_f4_sides(k: u32, cfg: &EvalConfig) -> Result<(Side, Side), EvalError> {
    let lhs = weighted_lsh(k, Character::Chi4, cfg)?;
    let rhs = Side::zero().plus(dl(k, Character::Principal(4), cfg)?, (k as f64 - 1.0) / 2.0);
    Ok((lhs, rhs))
}

/// Sides of the conductor-3 weighted sum formula.
pub fn prop_f3_sides(k: u32, cfg: &EvalConfig) -> Result<(Side, Side), EvalError> {
    let chi = Character::Chi3;
    let lhs = weighted_lsh(k, chi, cfg)?.plus(lstar(1, k - 1, chi, cfg)?, 1.0).plus(lstar(k - 1, 1, chi, cfg)?, 1.0);
    let rhs = Side::zero().plus(dl(k, Character::Principal(3), cfg)?, (k as f64 - 3.0) / 2.0);
    Ok((lhs, rhs))
}

pub fn prop_f3(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (l, r) = prop_f3_sides(k, cfg)?;
    let closed = c((k as f64 - 3.0) * (1.0 - 3f64.powi(-(k as i32))) / 2.0);
    let z = zeta(&[k], cfg)?.scale(closed);
    Ok(vec![Check::new(l, r, tol, false), Check::new(r, z, tol, false).labelled("principal-value")])
}

pub fn prop_f4(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (l, r) = prop_f4_sides(k, cfg)?;
    let closed = c((k as f64 - 1.0) * (1.0 - 2f64.powi(-(k as i32))) / 2.0);
    let z = zeta(&[k], cfg)?.scale(closed);
    Ok(vec![Check::new(l, r, tol, false), Check::new(r, z, tol, false).labelled("principal-value")])
}

/// `sum_j (2^{j-1} + 1) L_sh(k-j, j) + L_sh(1, k-1) + L_sh(k-1, 1) = (k-1)/2 L(k; chi3^2)`.
pub fn nishi(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let chi = Character::Chi3;
    let mut lhs = Side::zero();
    for j in 1..k {
        lhs = lhs.plus(lsh(k - j, j, chi, cfg)?, (1u64 << (j - 1)) as f64 + 1.0);
    }
    lhs = lhs.plus(lsh(1, k - 1, chi, cfg)?, 1.0).plus(lsh(k - 1, 1, chi, cfg)?, 1.0);
    let rhs = Side::zero().plus(dl(k, Character::Principal(3), cfg)?, (k as f64 - 1.0) / 2.0);
    Ok(vec![Check::new(lhs, rhs, tol, false)])
}

/// `sum_j L_sh(k-j, j) + L_sh(1, k-1) - L_*(1, k-1) - L_*(k-1, 1) = L(k; chi3^2)`.
pub fn lsum(k: u32, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let chi = Character::Chi3;
    let mut lhs = Side::zero();
    for j in 1..k {
        lhs = lhs.plus(lsh(k - j, j, chi, cfg)?, 1.0);
    }
    lhs = lhs
        .plus(lsh(1, k - 1, chi, cfg)?, 1.0)
        .plus(lstar(1, k - 1, chi, cfg)?, -1.0)
        .plus(lstar(k - 1, 1, chi, cfg)?, -1.0);
    let rhs = dl(k, Character::Principal(3), cfg)?;
    Ok(vec![Check::new(lhs, rhs, tol, false)])
}

/// Memoized `LL` values at the three points the connection formula uses.
struct LlCache<'a> {
    x: Complex64,
    y: Complex64,
    u: Complex64,
    cfg: &'a EvalConfig,
    memo: HashMap<(Vec<u32>, u8), Side>,
}

impl<'a> LlCache<'a> {
    fn new(x: Complex64, y: Complex64, cfg: &'a EvalConfig) -> Self {
        Self { x, y, u: connection_u(x, y), cfg, memo: HashMap::new() }
    }

    /// `which`: 0 at `(x, y)`, 1 at `(u, y)`, 2 at `(1, y)`.
    fn get(&mut self, parts: Vec<u32>, which: u8) -> Result<Side, EvalError> {
        if let Some(v) = self.memo.get(&(parts.clone(), which)) {
            return Ok(*v);
        }
        let x = match which {
            0 => self.x,
            1 => self.u,
            _ => c(1.0),
        };
        let v = ll(&parts, x, self.y, self.cfg)?;
        self.memo.insert((parts, which), v);
        Ok(v)
    }
}

/// Sides of the connection formula for `LL_{1^{r-1},k}((1-x)/(1-xy), y)`.
pub fn connection_sides(
    r: u32,
    k: u32,
    x: Complex64,
    y: Complex64,
    cfg: &EvalConfig,
) -> Result<(Side, Side), EvalError> {
    let mut cache = LlCache::new(x, y, cfg);
    let mut head = ones(r as usize - 1);
    head.push(k);
    let lhs = cache.get(head, 1)?;
    let mut sum = Side::zero();
    for comp in compositions(r + k, k as usize) {
        let p = comp.parts();
        let jk = p[k as usize - 1];
        let a = cache.get(ones(jk as usize - 1), 1)?;
        let b = cache.get(p[..k as usize - 1].to_vec(), 0)?;
        sum = sum.plus(a.times(b), 1.0);
    }
    let sign = if (k - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut rhs = Side::zero().plus(sum, sign);
    for j in 0..=k - 2 {
        let mut top = ones(r as usize - 1);
        top.push(k - j);
        let a = cache.get(top, 2)?;
        let b = cache.get(ones(j as usize), 0)?;
        rhs = rhs.plus(a.times(b), if j % 2 == 0 { 1.0 } else { -1.0 });
    }
    Ok((lhs, rhs))
}

pub fn connection(r: u32, k: u32, pt: &SamplePoint, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (l, rr) = connection_sides(r, k, pt.x, pt.y_or_zero(), cfg)?;
    Ok(vec![Check::new(l, rr, tol, true)])
}

/// The `k = 2` case written out on its own:
/// `LL_{1^{r-1},2}(u, y) = -sum_{j=0}^{r} LL_{1^j}(u, y) LL_{r+1-j}(x, y) + LL_{1^{r-1},2}(1, y)`.
pub fn connection_k2(r: u32, pt: &SamplePoint, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (x, y) = (pt.x, pt.y_or_zero());
    let u = connection_u(x, y);
    let mut head = ones(r as usize - 1);
    head.push(2);
    let lhs = ll(&head, u, y, cfg)?;
    let mut rhs = ll(&head, c(1.0), y, cfg)?;
    for j in 0..=r {
        let a = ll(&ones(j as usize), u, y, cfg)?;
        let b = ll(&[r + 1 - j], x, y, cfg)?;
        rhs = rhs.plus(a.times(b), -1.0);
    }
    Ok(vec![Check::new(lhs, rhs, tol, true)])
}

/// `Li_2(1 - z) = -Li_2(z) + zeta(2) - log z log(1 - z)`.
pub fn reflection(pt: &SamplePoint, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let z = pt.x;
    let w = c(1.0) - z;
    let lhs = li(&[2], &[w], cfg)?;
    let rhs = Side::zero()
        .plus(li(&[2], &[z], cfg)?, -1.0)
        .plus(zeta(&[2], cfg)?, 1.0)
        .plus(Side::constant(-(z.ln() * w.ln())), 1.0);
    Ok(vec![Check::new(lhs, rhs, tol, false)])
}

/// Both forms of the five-term relation at a real point.
pub fn five_term(pt: &SamplePoint, tol_ll: f64, tol_log: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (x, y) = (pt.x, pt.y_or_zero());
    let one = c(1.0);
    let u = connection_u(x, y);
    let v = (one - y) / (one - x * y);
    let lhs = ll(&[2], u, y, cfg)?;
    let rhs = ll(&[1], u, y, cfg)?
        .times(ll(&[1], x, y, cfg)?)
        .scale(c(-1.0))
        .plus(ll(&[2], x, y, cfg)?, -1.0)
        .plus(ll(&[2], one, y, cfg)?, 1.0);
    let ll_form = Check::new(lhs, rhs, tol_ll, false).labelled("LL-form");
    let mut lhs = Side::zero();
    for z in [x, y, one - x * y, u, v] {
        lhs = lhs.plus(li(&[2], &[z], cfg)?, 1.0);
    }
    let logs = -(x.ln() * (one - x).ln()) - y.ln() * (one - y).ln() - u.ln() * v.ln();
    let rhs = Side::zero().plus(zeta(&[2], cfg)?, 3.0).plus(Side::constant(logs), 1.0);
    let log_form = Check::new(lhs, rhs, tol_log, false).labelled("log-form");
    Ok(vec![ll_form, log_form])
}

/// The `(r, k) = (2, 2)` connection formula in polylogarithm form.
pub fn example_2_2(pt: &SamplePoint, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let (x, y) = (pt.x, pt.y_or_zero());
    let u = connection_u(x, y);
    let uy = u * y;
    // Li_{1,2}(1,u) - Li_{1,2}(y,u) - Li_{1,2}(1/y,uy) + Li_{1,2}(1,uy), in gap weights.
    let lhs = Side::zero()
        .plus(li(&[1, 2], &[u, u], cfg)?, 1.0)
        .plus(li(&[1, 2], &[uy, u], cfg)?, -1.0)
        .plus(li(&[1, 2], &[u, uy], cfg)?, -1.0)
        .plus(li(&[1, 2], &[uy, uy], cfg)?, 1.0);
    let lx = x.ln();
    let rhs = Side::zero()
        .plus(zeta(&[3], cfg)?, 1.0)
        .plus(li(&[3], &[x], cfg)?, -1.0)
        .plus(li(&[3], &[y], cfg)?, -1.0)
        .plus(li(&[3], &[x * y], cfg)?, 1.0)
        .plus(li(&[2], &[x], cfg)?.plus(li(&[2], &[x * y], cfg)?, -1.0).scale(lx), 1.0)
        .plus(Side::constant(lx * lx * u.ln() * 0.5), 1.0);
    Ok(vec![Check::new(lhs, rhs, tol, false)])
}

/// Extra comparisons of the combined torus relation at `(i, -i)` and
/// `(w, w^-1)` against the conductor-4 and conductor-3 formulas computed
/// from `L_sh` directly: the sides agree with 8 and 6 times theirs.
pub fn wsf3_specializations(k: u32, rel: &LiRelation, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let i = Complex64::new(0.0, 1.0);
    let (l4, r4) = relation_sides(rel, i, -i, cfg)?;
    let (f4l, f4r) = prop_f4_sides(k, cfg)?;
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let (l3, r3) = relation_sides(rel, w, w.conj(), cfg)?;
    let (f3l, f3r) = prop_f3_sides(k, cfg)?;
    Ok(vec![
        Check::new(l4, f4l.scale(c(8.0)), tol, false).labelled("(i,-i) lhs vs 8 f4"),
        Check::new(r4, f4r.scale(c(8.0)), tol, false).labelled("(i,-i) rhs vs 8 f4"),
        Check::new(l3, f3l.scale(c(6.0)), tol, false).labelled("(w,1/w) lhs vs 6 f3"),
        Check::new(r3, f3r.scale(c(6.0)), tol, false).labelled("(w,1/w) rhs vs 6 f3"),
    ])
}

/// `L_sh(k-j, j; chi, chi)` summed directly and through the root-of-unity
/// decomposition into `Li`, for `j = 1..k-1`.
pub fn two_path(k: u32, which: Conductor, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    let chi = match which {
        Conductor::Chi3 => Character::Chi3,
        Conductor::Chi4 => Character::Chi4,
    };
    let mut out = Vec::new();
    for j in 1..k {
        let direct = lsh(k - j, j, chi, cfg)?;
        let via: Side = l_sh_via_li(k - j, j, which, cfg)?.into();
        out.push(Check::new(direct, via, TWO_PATH_TOL, false).labelled(format!("two-path L_sh({},{j};{chi})", k - j)));
    }
    Ok(out)
}

pub const TWO_PATH_TOL: f64 = 2e-6;
