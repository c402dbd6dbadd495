//! Numerical evaluation of multiple polylogarithms, the two-variable series
//! `LL`, multiple zeta values and multiple T-values.
//!
//! Everything is parametrized by gap weights `w_j = z_j z_{j+1} ... z_r`.
//! Interior points (all `|w_j|` at most [`EvalConfig::direct_radius`]) are
//! summed directly with the gap recursion in [`gap_dp`]. Points with some
//! `|w_j|` near or on the unit circle go through the path-splitting
//! evaluator, which converges geometrically up to and including the
//! boundary. The periodic-weight kernel with [`boundary_accel_sum`] is kept
//! as a second, independent route for root-of-unity arguments.

mod accel;
mod compensated;
pub mod gap_dp;
mod iterated;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::Index;
pub use accel::{boundary_accel_sum, extrapolate, AsymptoticModel};
pub use compensated::CompensatedSum;
use gap_dp::{GapDp, LevelWeight, PositionDp};

/// Slack allowed when testing `|w| <= 1` and distances to singular points.
pub const ADMISSIBILITY_EPS: f64 = 1e-12;

/// Highest depth any evaluator accepts.
pub const MAX_DEPTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("inadmissible argument: {0}")]
    InadmissibleArgument(String),
    #[error("divergent index ({0}): the last part must be at least 2")]
    DivergentIndex(Index),
    #[error("not converged: err_est {err_est:.3e} after {terms_used} terms")]
    NotConverged { value: Complex64, err_est: f64, terms_used: u64 },
    #[error("cross-check failure: direct {direct} vs series {series} (|diff| = {diff:.3e})")]
    CrossCheckFailure { direct: Complex64, series: Complex64, diff: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// How the value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "q")]
pub enum AccelMode {
    Interior,
    BoundaryGeneric,
    RootOfUnity(u32),
}

impl std::fmt::Display for AccelMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AccelMode::Interior => write!(f, "interior"),
            AccelMode::BoundaryGeneric => write!(f, "boundary-generic"),
            AccelMode::RootOfUnity(q) => write!(f, "root-of-unity({q})"),
        }
    }
}

/// Evaluation strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Direct series inside `direct_radius`, path splitting outside.
    #[default]
    Auto,
    /// Gap recursion only; roots of unity use periodic weights plus
    /// [`boundary_accel_sum`].
    DirectSeries,
    /// Path splitting everywhere.
    PathSplit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub target_tol: f64,
    pub n_initial: u64,
    pub n_max: u64,
    /// Minimum distance from singular sets such as `x = 1`, `y = 1`, `xy = 1`.
    pub boundary_margin: f64,
    pub method: Method,
    /// Largest gap-weight modulus summed directly under [`Method::Auto`].
    pub direct_radius: f64,
    /// Number of doubling samples fed to the Richardson table.
    pub accel_levels: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_tol: 1e-10,
            n_initial: 1 << 14,
            n_max: 1 << 24,
            boundary_margin: 0.05,
            method: Method::Auto,
            direct_radius: 0.8,
            accel_levels: 8,
        }
    }
}

impl EvalConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_tol = tol;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    // Negated comparisons so that NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), EvalError> {
        if !(self.target_tol > 0.0) {
            return Err(EvalError::InvalidConfig("target_tol must be positive".into()));
        }
        if self.n_initial == 0 || self.n_initial > self.n_max {
            return Err(EvalError::InvalidConfig("need 0 < n_initial <= n_max".into()));
        }
        if !(self.boundary_margin > 0.0) {
            return Err(EvalError::InvalidConfig("boundary_margin must be positive".into()));
        }
        if !(self.direct_radius > 0.0 && self.direct_radius < 1.0) {
            return Err(EvalError::InvalidConfig("direct_radius must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_est: f64,
    pub terms_used: u64,
    pub mode: AccelMode,
    pub converged: bool,
}

impl EvalResult {
    pub fn exact(value: Complex64) -> Self {
        Self { value, err_est: 0.0, terms_used: 0, mode: AccelMode::Interior, converged: true }
    }

    /// Turn a non-converged result into [`EvalError::NotConverged`].
    pub fn require_converged(self) -> Result<Self, EvalError> {
        if self.converged {
            Ok(self)
        } else {
            Err(EvalError::NotConverged { value: self.value, err_est: self.err_est, terms_used: self.terms_used })
        }
    }

    fn merge_mode(a: AccelMode, b: AccelMode) -> AccelMode {
        use AccelMode::*;
        match (a, b) {
            (BoundaryGeneric, _) | (_, BoundaryGeneric) => BoundaryGeneric,
            (RootOfUnity(p), RootOfUnity(q)) => RootOfUnity(lcm(p, q)),
            (RootOfUnity(p), Interior) | (Interior, RootOfUnity(p)) => RootOfUnity(p),
            (Interior, Interior) => Interior,
        }
    }

    /// `self + factor * other`, with errors added.
    pub fn combine(self, other: EvalResult, factor: f64) -> EvalResult {
        EvalResult {
            value: self.value + other.value * factor,
            err_est: self.err_est + other.err_est * factor.abs(),
            terms_used: self.terms_used + other.terms_used,
            mode: Self::merge_mode(self.mode, other.mode),
            converged: self.converged && other.converged,
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Arguments `z_1, ..., z_r` of a multiple polylogarithm, stored through
/// their gap weights so that zero arguments and arguments of modulus above
/// one (whose gap weights are still small) are representable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgVector {
    gaps: Vec<Complex64>,
}

impl ArgVector {
    pub fn new(args: &[Complex64]) -> Self {
        let mut gaps = vec![Complex64::new(1.0, 0.0); args.len()];
        let mut acc = Complex64::new(1.0, 0.0);
        for j in (0..args.len()).rev() {
            acc *= args[j];
            gaps[j] = acc;
        }
        Self { gaps }
    }

    pub fn from_gap_weights(gaps: Vec<Complex64>) -> Self {
        Self { gaps }
    }

    /// `(1, ..., 1, z)` of the given length.
    pub fn ones_then(len: usize, z: Complex64) -> Self {
        Self { gaps: vec![z; len] }
    }

    pub fn gap_weights(&self) -> &[Complex64] {
        &self.gaps
    }

    /// `z_j = w_j / w_{j+1}`; infinite where a later gap weight vanishes.
    pub fn args(&self) -> Vec<Complex64> {
        let r = self.gaps.len();
        (0..r).map(|j| if j + 1 < r { self.gaps[j] / self.gaps[j + 1] } else { self.gaps[j] }).collect()
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoVarPoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl TwoVarPoint {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_depth(index: &Index) -> Result<(), EvalError> {
    if index.depth() > MAX_DEPTH {
        return Err(EvalError::InadmissibleArgument(format!(
            "depth {} exceeds the supported maximum {MAX_DEPTH}",
            index.depth()
        )));
    }
    Ok(())
}

/// Order `q <= 12` of `w` as a root of unity, if it is one.
pub fn root_of_unity_order(w: Complex64) -> Option<u32> {
    if (w.norm() - 1.0).abs() > 1e-12 {
        return None;
    }
    (1..=12u32).find(|&q| (w.powu(q) - c64(1.0)).norm() < 1e-11)
}

/// Exact table of `w^d mod q` for a root of unity of order `q`.
fn root_table(w: Complex64, q: u32) -> Vec<Complex64> {
    let step = (w.arg() * q as f64 / std::f64::consts::TAU).round() as i64;
    (0..q as i64)
        .map(|d| {
            let s = (step * d).rem_euclid(q as i64);
            exact_unit(s as u32, q)
        })
        .collect()
}

/// `exp(2 pi i s / q)` with exact components for the small orders.
fn exact_unit(s: u32, q: u32) -> Complex64 {
    let s = s % q;
    let h = 3f64.sqrt() / 2.0;
    let g = (s * 12 / q, (s * 12) % q);
    if g.1 == 0 {
        match g.0 {
            0 => return c64(1.0),
            3 => return Complex64::new(0.0, 1.0),
            6 => return c64(-1.0),
            9 => return Complex64::new(0.0, -1.0),
            2 => return Complex64::new(0.5, h),
            4 => return Complex64::new(-0.5, h),
            8 => return Complex64::new(-0.5, -h),
            10 => return Complex64::new(0.5, -h),
            _ => {}
        }
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * s as f64 / q as f64)
}

fn split_mode(gaps: &[Complex64]) -> AccelMode {
    let mut q = 1;
    for w in gaps {
        match root_of_unity_order(*w) {
            Some(o) => q = lcm(q, o),
            None => return AccelMode::BoundaryGeneric,
        }
    }
    AccelMode::RootOfUnity(q)
}

/// Direct summation with doubling; the estimate is the larger of the
/// doubling difference and the analytic tail bound.
fn sum_interior(exponents: &[u32], weights: &[LevelWeight], cfg: &EvalConfig) -> EvalResult {
    let rho = weights.iter().map(|w| w.radius()).fold(0.0, f64::max);
    let amp: f64 = weights.iter().map(|w| w.amplitude()).product();
    let r = exponents.len();
    let bound = |n: u64| amp * iterated::gap_tail_bound(rho, r, n);
    let mut n = cfg.n_initial;
    // Start where the analytic bound is already negligible when that is cheaper.
    let mut probe = 16u64;
    while probe < n && bound(probe) > 1e-3 * cfg.target_tol.min(1e-15) {
        probe *= 2;
    }
    n = n.min(probe).max(16);
    let mut dp = GapDp::new(exponents, weights);
    let mut prev = dp.advance_to(n);
    loop {
        let cur = dp.advance_to(2 * n);
        let err = (cur - prev).norm().max(bound(2 * n)) + dp.rounding_bound();
        if err <= cfg.target_tol || 4 * n > cfg.n_max {
            return EvalResult {
                value: cur,
                err_est: err,
                terms_used: 2 * n,
                mode: AccelMode::Interior,
                converged: err <= cfg.target_tol,
            };
        }
        prev = cur;
        n *= 2;
    }
}

/// Summation with periodic gap weights (all `|w_j| = 1` roots of unity).
fn sum_periodic(exponents: &[u32], weights: Vec<LevelWeight>, cfg: &EvalConfig) -> EvalResult {
    let model = periodic_model(exponents, &weights);
    let dp = GapDp::new(exponents, &weights);
    boundary_accel_sum(dp, model, cfg)
}

/// Remainder model of a nested sum with periodic weights: inner levels with
/// exponent 1 and non-zero mean each add one power of `log N`.
pub fn periodic_model(exponents: &[u32], weights: &[LevelWeight]) -> AsymptoticModel {
    let period = weights.iter().filter_map(|w| w.period()).fold(1u32, |acc, q| lcm(acc, q as u32));
    let r = exponents.len();
    let nonzero_mean = |w: &LevelWeight| w.mean().is_none_or(|m| m.norm() > 1e-12);
    let logs = (0..r - 1).filter(|&j| exponents[j] == 1 && nonzero_mean(&weights[j])).count() as u32;
    let last = exponents[r - 1];
    let p = if nonzero_mean(&weights[r - 1]) { last.saturating_sub(1) } else { last };
    AsymptoticModel::new(period, p.max(1), logs)
}

/// Gap-form multiple polylogarithm with geometric gap weights.
fn eval_gap_geometric(exponents: &[u32], gaps: &[Complex64], cfg: &EvalConfig) -> EvalResult {
    if gaps.iter().any(|w| w.norm() == 0.0) {
        return EvalResult::exact(c64(0.0));
    }
    let rho = gaps.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let geometric = || gaps.iter().map(|w| LevelWeight::Geometric(*w)).collect::<Vec<_>>();
    let split = || {
        let ev = iterated::gap_li_split(exponents, gaps, cfg.n_max)
            .expect("admissible gap weights always admit a cut point");
        EvalResult {
            value: ev.value,
            err_est: ev.err,
            terms_used: ev.terms,
            mode: split_mode(gaps),
            converged: ev.err <= cfg.target_tol,
        }
    };
    match cfg.method {
        Method::Auto if rho <= cfg.direct_radius => sum_interior(exponents, &geometric(), cfg),
        Method::Auto | Method::PathSplit => split(),
        Method::DirectSeries => {
            let boundary: Vec<bool> = gaps.iter().map(|w| w.norm() > 1.0 - 1e-12).collect();
            if boundary.iter().all(|b| *b) {
                let orders: Option<Vec<u32>> = gaps.iter().map(|w| root_of_unity_order(*w)).collect();
                if let Some(orders) = orders {
                    let weights =
                        gaps.iter().zip(&orders).map(|(w, &q)| LevelWeight::Periodic(root_table(*w, q))).collect();
                    return sum_periodic(exponents, weights, cfg);
                }
            }
            let mut r = sum_interior(exponents, &geometric(), cfg);
            if boundary.iter().any(|b| *b) {
                r.mode = AccelMode::BoundaryGeneric;
            }
            r
        }
    }
}

fn admissible_gaps(index: &Index, gaps: &[Complex64]) -> Result<(), EvalError> {
    if gaps.len() != index.depth() {
        return Err(EvalError::InadmissibleArgument(format!(
            "{} arguments for an index of depth {}",
            gaps.len(),
            index.depth()
        )));
    }
    for (j, w) in gaps.iter().enumerate() {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(EvalError::InadmissibleArgument(format!("gap weight w_{} is not finite", j + 1)));
        }
        if w.norm() > 1.0 + ADMISSIBILITY_EPS {
            return Err(EvalError::InadmissibleArgument(format!("|w_{}| = {:.6} exceeds 1", j + 1, w.norm())));
        }
    }
    if index.last() == Some(1) {
        let w = gaps[gaps.len() - 1];
        if (w - c64(1.0)).norm() <= ADMISSIBILITY_EPS {
            return Err(EvalError::InadmissibleArgument(
                "last part is 1 and the outer gap weight equals 1 (divergent)".into(),
            ));
        }
    }
    Ok(())
}

/// Multiple polylogarithm `Li_{k_1..k_r}(z_1..z_r)` over `0 < m_1 < ... < m_r`.
pub fn li_eval(index: &Index, args: &ArgVector, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    cfg.validate()?;
    check_depth(index)?;
    if index.is_empty() {
        return Ok(EvalResult::exact(c64(1.0)));
    }
    admissible_gaps(index, args.gap_weights())?;
    Ok(eval_gap_geometric(index.parts(), args.gap_weights(), cfg))
}

/// [`li_eval`] with the gap weights given directly.
pub fn li_eval_gaps(index: &Index, gaps: &[Complex64], cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    li_eval(index, &ArgVector::from_gap_weights(gaps.to_vec()), cfg)
}

/// Depth-one polylogarithm `Li_k(z)`.
pub fn polylog(k: u32, z: Complex64, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    li_eval_gaps(&Index::single(k), &[z], cfg)
}

/// Two-variable series
/// `LL_{k}(x, y) = sum_{n_j >= 1} prod_j x^{n_j} (1 - y^{n_j}) / prod_j m_j^{k_j}`.
pub fn ll_eval(index: &Index, pt: &TwoVarPoint, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    cfg.validate()?;
    check_depth(index)?;
    if index.is_empty() {
        return Ok(EvalResult::exact(c64(1.0)));
    }
    let (x, y) = (pt.x, pt.y);
    for (name, v) in [("x", x), ("y", y)] {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(EvalError::InadmissibleArgument(format!("{name} is not finite")));
        }
        if v.norm() > 1.0 + ADMISSIBILITY_EPS {
            return Err(EvalError::InadmissibleArgument(format!("|{name}| = {:.6} exceeds 1", v.norm())));
        }
    }
    let xy = x * y;
    if index.last() == Some(1) {
        if (x - c64(1.0)).norm() <= ADMISSIBILITY_EPS {
            return Err(EvalError::InadmissibleArgument("x = 1 with last part 1 (divergent)".into()));
        }
        if (xy - c64(1.0)).norm() <= ADMISSIBILITY_EPS {
            return Err(EvalError::InadmissibleArgument("xy = 1 with last part 1 (divergent)".into()));
        }
    }
    if x.norm() == 0.0 {
        return Ok(EvalResult::exact(c64(0.0)));
    }
    let exps = index.parts();
    let r = exps.len();
    let direct = cfg.method == Method::DirectSeries || (cfg.method == Method::Auto && x.norm() <= cfg.direct_radius);
    if direct && x.norm() < 1.0 - 1e-12 {
        let weights = vec![LevelWeight::Difference(x, xy); r];
        return Ok(sum_interior(exps, &weights, cfg));
    }
    // Expand prod (x^n - (xy)^n) into 2^r signed gap-form polylogarithms.
    let mut total = EvalResult::exact(c64(0.0));
    let mut gaps = vec![x; r];
    for mask in 0u32..(1 << r) {
        let mut sign = 1.0;
        for (j, g) in gaps.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *g = xy;
                sign = -sign;
            } else {
                *g = x;
            }
        }
        if xy.norm() == 0.0 && mask != 0 {
            continue;
        }
        let part = eval_gap_geometric(exps, &gaps, cfg);
        total = total.combine(part, sign);
    }
    total.converged = total.err_est <= cfg.target_tol;
    Ok(total)
}

/// Multiple zeta value `zeta(k_1, ..., k_r)`, `k_r >= 2`.
pub fn zeta_eval(index: &Index, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    if index.is_empty() {
        return Ok(EvalResult::exact(c64(1.0)));
    }
    if index.last() == Some(1) {
        return Err(EvalError::DivergentIndex(index.clone()));
    }
    li_eval(index, &ArgVector::ones_then(index.depth(), c64(1.0)), cfg)
}

/// Position weights `m_j = j (mod 2)` of the multiple T-value.
fn parity_tables(r: usize) -> Vec<Vec<Complex64>> {
    (1..=r).map(|j| if j % 2 == 1 { vec![c64(0.0), c64(1.0)] } else { vec![c64(1.0), c64(0.0)] }).collect()
}

/// `T(k)` from its defining parity-restricted sum, accelerated at period 2.
pub fn t_value_direct(index: &Index, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    cfg.validate()?;
    check_depth(index)?;
    if index.is_empty() {
        return Ok(EvalResult::exact(c64(1.0)));
    }
    if index.last() == Some(1) {
        return Err(EvalError::DivergentIndex(index.clone()));
    }
    let exps = index.parts();
    let r = exps.len();
    let logs = exps[..r - 1].iter().filter(|&&k| k == 1).count() as u32;
    let model = AsymptoticModel::new(2, exps[r - 1] - 1, logs);
    let dp = PositionDp::new(exps, parity_tables(r));
    let mut res = boundary_accel_sum(dp, model, cfg);
    let scale = (1u64 << r) as f64;
    res.value *= scale;
    res.err_est *= scale;
    res.converged = res.err_est <= cfg.target_tol;
    Ok(res)
}

/// Multiple T-value `T(k_1, ..., k_r)`, computed as `LL_k(1, -1)` and
/// cross-checked against the parity-restricted sum. The returned error
/// includes the disagreement between the two.
pub fn t_value_eval(index: &Index, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    if index.last() == Some(1) {
        return Err(EvalError::DivergentIndex(index.clone()));
    }
    let series = ll_eval(index, &TwoVarPoint::real(1.0, -1.0), cfg)?;
    let direct = t_value_direct(index, cfg)?;
    let diff = (direct.value - series.value).norm();
    if diff > 10.0 * cfg.target_tol {
        return Err(EvalError::CrossCheckFailure { direct: direct.value, series: series.value, diff });
    }
    let mut out = series;
    out.err_est += diff;
    out.terms_used += direct.terms_used;
    out.converged = out.err_est <= cfg.target_tol;
    Ok(out)
}

/// `d/dx LL_k(x, y)` through the closed forms
/// `LL_{..,k_r - 1}(x, y) / x` (`k_r > 1`) and
/// `(1 - y) / ((1 - x)(1 - xy)) LL_{k_1..k_{r-1}}(x, y)` (`k_r = 1`).
pub fn ll_partial_x(index: &Index, pt: &TwoVarPoint, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    let (x, y) = (pt.x, pt.y);
    if index.is_empty() {
        return Ok(EvalResult::exact(c64(0.0)));
    }
    if x.norm() >= 1.0 {
        return Err(EvalError::InadmissibleArgument("derivative needs |x| < 1".into()));
    }
    if index.last() == Some(1) {
        let inner = ll_eval(&index.drop_last(), pt, cfg)?;
        let factor = (c64(1.0) - y) / ((c64(1.0) - x) * (c64(1.0) - x * y));
        let mut out = inner;
        out.value = inner.value * factor;
        out.err_est = inner.err_est * factor.norm();
        return Ok(out);
    }
    let lowered = index.decrement_last();
    if x.norm() == 0.0 {
        // Removable singularity: the x^1 coefficient of LL_{k'}(x, y).
        let v = if index.depth() == 1 { c64(1.0) - y } else { c64(0.0) };
        return Ok(EvalResult::exact(v));
    }
    let inner = ll_eval(&lowered, pt, cfg)?;
    let mut out = inner;
    out.value = inner.value / x;
    out.err_est = inner.err_est / x.norm();
    Ok(out)
}

/// Partial sums `V(N)` of the gap recursion at each requested `N`, plus the
/// largest recursion-state modulus seen.
pub fn gap_partial_sums(index: &Index, gaps: &[Complex64], checkpoints: &[u64]) -> (Vec<Complex64>, f64) {
    let weights: Vec<_> = gaps.iter().map(|w| LevelWeight::Geometric(*w)).collect();
    let mut dp = GapDp::new(index.parts(), &weights);
    let mut out = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        out.push(dp.advance_to(n));
    }
    (out, dp.max_state())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    const ZETA3: f64 = 1.2020569031595942;

    fn idx(p: &[u32]) -> Index {
        Index::new(p.to_vec()).unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn li1_is_minus_log() {
        let r = li_eval(&idx(&[1]), &ArgVector::new(&[c64(0.5)]), &cfg()).unwrap();
        assert!((r.value.re - LN_2).abs() < 1e-15);
        assert!(r.converged);
        assert_eq!(r.mode, AccelMode::Interior);
    }

    #[test]
    fn li2_at_zero_is_zero() {
        let r = li_eval(&idx(&[2]), &ArgVector::new(&[c64(0.0)]), &cfg()).unwrap();
        assert_eq!(r.value, c64(0.0));
    }

    #[test]
    fn li2_at_one_is_basel() {
        let r = li_eval(&idx(&[2]), &ArgVector::new(&[c64(1.0)]), &cfg()).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(r.mode, AccelMode::RootOfUnity(1));
    }

    #[test]
    fn li12_at_ones_is_zeta3() {
        let r = li_eval(&idx(&[1, 2]), &ArgVector::new(&[c64(1.0), c64(1.0)]), &cfg()).unwrap();
        assert!((r.value.re - ZETA3).abs() < 1e-13);
    }

    #[test]
    fn inadmissible_arguments_are_rejected() {
        let e = li_eval(&idx(&[2]), &ArgVector::new(&[c64(1.5)]), &cfg()).unwrap_err();
        assert!(matches!(e, EvalError::InadmissibleArgument(_)));
        let e = li_eval(&idx(&[1]), &ArgVector::new(&[c64(1.0)]), &cfg()).unwrap_err();
        assert!(matches!(e, EvalError::InadmissibleArgument(_)));
        let e = li_eval(&idx(&[2, 1]), &ArgVector::new(&[c64(0.5)]), &cfg()).unwrap_err();
        assert!(matches!(e, EvalError::InadmissibleArgument(_)));
    }

    #[test]
    fn argument_vector_gap_weights() {
        let a = ArgVector::new(&[c64(0.5), c64(-0.5), c64(0.25)]);
        let g = a.gap_weights();
        assert!((g[0] - c64(-0.0625)).norm() < 1e-16);
        assert!((g[1] - c64(-0.125)).norm() < 1e-16);
        assert!((g[2] - c64(0.25)).norm() < 1e-16);
        let back = a.args();
        assert!((back[0] - c64(0.5)).norm() < 1e-15);
    }

    #[test]
    fn ll_examples() {
        let r = ll_eval(&idx(&[2]), &TwoVarPoint::real(0.5, 0.0), &cfg()).unwrap();
        assert!((r.value.re - (PI * PI / 12.0 - LN_2 * LN_2 / 2.0)).abs() < 1e-15);
        let r = ll_eval(&idx(&[2]), &TwoVarPoint::real(1.0, -1.0), &cfg()).unwrap();
        assert!((r.value.re - PI * PI / 4.0).abs() < 1e-14);
        let r = ll_eval(&idx(&[1, 2]), &TwoVarPoint::real(1.0, -1.0), &cfg()).unwrap();
        assert!((r.value.re - 1.75 * ZETA3).abs() < 1e-13);
        let r = ll_eval(&Index::empty(), &TwoVarPoint::real(0.3, 0.2), &cfg()).unwrap();
        assert_eq!(r.value, c64(1.0));
    }

    #[test]
    fn ll_rejects_divergent_points() {
        assert!(ll_eval(&idx(&[1]), &TwoVarPoint::real(1.0, 0.5), &cfg()).is_err());
        let x = Complex64::from_polar(1.0, 0.7);
        assert!(ll_eval(&idx(&[1]), &TwoVarPoint::new(x, x.inv()), &cfg()).is_err());
    }

    #[test]
    fn zeta_examples() {
        let z = |p: &[u32]| zeta_eval(&idx(p), &cfg()).unwrap().value.re;
        assert!((z(&[2]) - 1.6449340668482264).abs() < 1e-14);
        assert!((z(&[1, 2]) - ZETA3).abs() < 1e-13);
        assert!((z(&[2, 2]) - PI.powi(4) / 120.0).abs() < 1e-14);
        assert!(matches!(zeta_eval(&idx(&[2, 1]), &cfg()), Err(EvalError::DivergentIndex(_))));
    }

    #[test]
    fn t_value_examples() {
        let t = |p: &[u32]| t_value_eval(&idx(p), &cfg()).unwrap().value.re;
        assert!((t(&[2]) - PI * PI / 4.0).abs() < 1e-12);
        assert!((t(&[3]) - 1.75 * ZETA3).abs() < 1e-12);
        let lhs = 2.0 * t(&[2, 2]) + 4.0 * t(&[1, 3]);
        assert!((lhs - 3.0 * t(&[4])).abs() < 1e-10);
    }

    #[test]
    fn direct_series_route_at_roots_of_unity() {
        let c = cfg().with_method(Method::DirectSeries);
        let i = Complex64::new(0.0, 1.0);
        let a = li_eval_gaps(&idx(&[1, 2]), &[c64(-1.0), i], &c).unwrap();
        let b = li_eval_gaps(&idx(&[1, 2]), &[c64(-1.0), i], &cfg()).unwrap();
        assert!((a.value - b.value).norm() < 1e-9, "{:?} vs {:?}", a, b);
        assert_eq!(a.mode, AccelMode::RootOfUnity(4));
    }

    #[test]
    fn partial_x_examples() {
        let r = ll_partial_x(&idx(&[1]), &TwoVarPoint::real(0.0, 0.3), &cfg()).unwrap();
        assert!((r.value.re - 0.7).abs() < 1e-15);
        let fd = |index: &Index, x: f64, y: f64| {
            let h = 1e-5;
            let f = |x| ll_eval(index, &TwoVarPoint::real(x, y), &cfg()).unwrap().value;
            (f(x + h) - f(x - h)) / (2.0 * h)
        };
        for (p, x, y) in [(vec![2], 0.5, 0.3), (vec![1, 1], 0.4, 0.2)] {
            let i = idx(&p);
            let a = ll_partial_x(&i, &TwoVarPoint::real(x, y), &cfg()).unwrap().value;
            let b = fd(&i, x, y);
            assert!(((a - b) / a).norm() < 1e-6, "{a} vs {b}");
        }
        let r = ll_partial_x(&idx(&[2]), &TwoVarPoint::real(0.0, 0.3), &cfg()).unwrap();
        assert!((r.value.re - 0.7).abs() < 1e-15);
        let r = ll_partial_x(&idx(&[1, 2]), &TwoVarPoint::real(0.0, 0.3), &cfg()).unwrap();
        assert_eq!(r.value, c64(0.0));
    }

    #[test]
    fn exact_units() {
        for q in [1u32, 2, 3, 4, 6, 12] {
            for s in 0..q {
                let e = exact_unit(s, q);
                let t = Complex64::from_polar(1.0, std::f64::consts::TAU * s as f64 / q as f64);
                assert!((e - t).norm() < 1e-15);
            }
        }
        assert_eq!(root_of_unity_order(Complex64::new(0.0, -1.0)), Some(4));
        assert_eq!(root_of_unity_order(exact_unit(1, 3)), Some(3));
        assert_eq!(root_of_unity_order(Complex64::from_polar(1.0, 1.0)), None);
    }
}
