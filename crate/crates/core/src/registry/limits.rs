//! Trend checks for the boundary limits behind the weighted sum formulas.
//!
//! Both differences vanish as `x -> 1` along the unit circle. They are
//! evaluated at `x_t = exp(i 2^-t)`; inside the disc the `1/x` gaps would
//! leave the region of convergence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RegistryError;
use crate::engine::{li_eval_gaps, EvalConfig, EvalError};
use crate::index::Index;

pub const LIMIT_IDS: [&str; 2] = ["limit-3.1", "limit-companion"];

/// First `t` from which magnitudes must decrease.
pub const TREND_START: u32 = 8;
/// Bound on the final magnitude.
pub const FINAL_BOUND: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitPoint {
    pub t: u32,
    pub x: Complex64,
    pub value: Complex64,
    pub magnitude: f64,
    pub err_est: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub id: String,
    pub k: u32,
    pub t_max: u32,
    pub points: Vec<LimitPoint>,
    pub decreasing: bool,
    pub final_magnitude: f64,
    pub conclusive: bool,
    pub pass: bool,
}

pub fn limit_point(t: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2f64.powi(-(t as i32)))
}

/// `Li_{k-1,1}(x^-2, x) - Li_{k-1,1}(1, x)` or, for the companion,
/// `Li_{k-1,1}(-x, x) - Li_{k-1,1}(-1/x, x)`.
pub fn limit_difference(id: &str, k: u32, x: Complex64, cfg: &EvalConfig) -> Result<(Complex64, f64, bool), EvalError> {
    let index = Index::new(vec![k - 1, 1]).expect("k >= 2");
    let (a, b) = match id {
        "limit-3.1" => ([x.inv(), x], [x, x]),
        _ => ([-x * x, x], [-Complex64::new(1.0, 0.0), x]),
    };
    let ra = li_eval_gaps(&index, &a, cfg)?;
    let rb = li_eval_gaps(&index, &b, cfg)?;
    Ok((ra.value - rb.value, ra.err_est + rb.err_est, ra.converged && rb.converged))
}

pub fn verify_limit(id: &str, k: u32, t_max: u32, cfg: &EvalConfig) -> Result<LimitReport, RegistryError> {
    if !LIMIT_IDS.contains(&id) {
        return Err(RegistryError::UnknownIdentity(id.to_string()));
    }
    if k < 3 {
        return Err(RegistryError::InvalidParams(format!("{id} needs k >= 3, got {k}")));
    }
    if t_max < TREND_START {
        return Err(RegistryError::InvalidParams(format!("t_max must be at least {TREND_START}")));
    }
    let mut points = Vec::new();
    for t in 4..=t_max {
        let x = limit_point(t);
        let p = match limit_difference(id, k, x, cfg) {
            Ok((value, err_est, converged)) => {
                LimitPoint { t, x, value, magnitude: value.norm(), err_est, converged, note: None }
            }
            Err(e) => LimitPoint {
                t,
                x,
                value: Complex64::new(f64::NAN, f64::NAN),
                magnitude: f64::NAN,
                err_est: f64::INFINITY,
                converged: false,
                note: Some(e.to_string()),
            },
        };
        points.push(p);
    }
    let tail: Vec<&LimitPoint> = points.iter().filter(|p| p.t >= TREND_START).collect();
    let decreasing = tail.windows(2).all(|w| w[1].magnitude < w[0].magnitude);
    let final_magnitude = points.last().map_or(f64::NAN, |p| p.magnitude);
    let conclusive = points.iter().all(|p| p.converged);
    let pass = decreasing && final_magnitude <= FINAL_BOUND;
    Ok(LimitReport { id: id.to_string(), k, t_max, points, decreasing, final_magnitude, conclusive, pass })
}
