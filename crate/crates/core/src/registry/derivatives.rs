//! `d/dx LL` closed forms against finite differences.

use num_complex::Complex64;

use super::checks::{Check, Side};
use super::sampling::{connection_u, SamplePoint};
use crate::engine::{ll_eval, ll_partial_x, EvalConfig, EvalError, TwoVarPoint};
use crate::index::Index;

/// Step of the five-point stencil.
pub const FD_STEP: f64 = 1e-3;
/// Accuracy requested from the evaluations inside the stencil.
pub const FD_EVAL_TOL: f64 = 1e-13;
pub const INDEX_TOL: f64 = 1e-6;
pub const CHAIN_TOL: f64 = 1e-5;

pub fn default_indices() -> Vec<Index> {
    [&[1][..], &[2], &[3], &[1, 1], &[1, 2], &[2, 1], &[2, 2], &[1, 1, 2], &[1, 2, 1], &[1, 1, 1, 1], &[1, 1, 1, 2]]
        .iter()
        .map(|p| Index::new(p.to_vec()).expect("positive"))
        .collect()
}

/// `f'(x)` from `f(x +- h)`, `f(x +- 2h)`, stepping along the real axis.
pub fn central_difference<F>(f: F, x: Complex64, h: f64) -> Result<(Complex64, f64, bool), EvalError>
where
    F: Fn(Complex64) -> Result<(Complex64, f64, bool), EvalError>,
{
    let mut err = 0.0;
    let mut ok = true;
    let mut at = |s: f64| -> Result<Complex64, EvalError> {
        let (v, e, c) = f(x + Complex64::new(s * h, 0.0))?;
        err += e;
        ok &= c;
        Ok(v)
    };
    let (p1, m1, p2, m2) = (at(1.0)?, at(-1.0)?, at(2.0)?, at(-2.0)?);
    let d = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
    Ok((d, err * 18.0 / (12.0 * h), ok))
}

fn ll_at<'a>(
    index: &'a Index,
    y: Complex64,
    cfg: &'a EvalConfig,
) -> impl Fn(Complex64) -> Result<(Complex64, f64, bool), EvalError> + 'a {
    move |x| {
        let r = ll_eval(index, &TwoVarPoint::new(x, y), cfg)?;
        Ok((r.value, r.err_est, r.converged))
    }
}

fn fd_cfg(cfg: &EvalConfig) -> EvalConfig {
    cfg.clone().with_tol(cfg.target_tol.min(FD_EVAL_TOL))
}

/// Closed form vs stencil for one index at one point.
pub fn index_check(index: &Index, pt: &SamplePoint, cfg: &EvalConfig) -> Result<Check, EvalError> {
    let cfg = fd_cfg(cfg);
    let (x, y) = (pt.x, pt.y_or_zero());
    let closed: Side = ll_partial_x(index, &TwoVarPoint::new(x, y), &cfg)?.into();
    let (d, e, ok) = central_difference(ll_at(index, y, &cfg), x, FD_STEP)?;
    let fd = Side { value: d, err: e, terms: 0, converged: ok };
    Ok(Check::new(closed, fd, INDEX_TOL, true).labelled(format!("d/dx LL_{{{index}}}")))
}

/// `d/dx LL_{1,2}(u(x, y), y)` by the chain rule
/// `du/dx = -(1 - y) / (1 - xy)^2`, against the stencil applied to the composite.
pub fn chain_rule_check(pt: &SamplePoint, cfg: &EvalConfig) -> Result<Check, EvalError> {
    let cfg = fd_cfg(cfg);
    let index = Index::new(vec![1, 2]).expect("positive");
    let (x, y) = (pt.x, pt.y_or_zero());
    let one = Complex64::new(1.0, 0.0);
    let u = connection_u(x, y);
    let du = -(one - y) / ((one - x * y) * (one - x * y));
    let closed = Side::from(ll_partial_x(&index, &TwoVarPoint::new(u, y), &cfg)?).scale(du);
    let composite = |x: Complex64| {
        let r = ll_eval(&index, &TwoVarPoint::new(connection_u(x, y), y), &cfg)?;
        Ok((r.value, r.err_est, r.converged))
    };
    let (d, e, ok) = central_difference(composite, x, FD_STEP)?;
    let fd = Side { value: d, err: e, terms: 0, converged: ok };
    Ok(Check::new(closed, fd, CHAIN_TOL, true).labelled("chain rule LL_{1,2}(u, y)"))
}
