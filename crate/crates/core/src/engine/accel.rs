//! Boundary acceleration for slowly convergent nested sums.
//!
//! Partial sums are sampled only at totals `N` that are multiples of the
//! weight period `q`, where every root-of-unity factor `w^N` equals one. On
//! that subsequence the remainder has a smooth expansion
//!
//! ```text
//!   V(N) = V + sum_{i >= 0} sum_{l <= L} c_{i,l} (log N)^l / N^{p+i}
//! ```
//!
//! and repeated Richardson elimination over `N, 2N, 4N, ...` removes it term
//! by term. Each sample is the average of `q` consecutive partial sums
//! `V(N), ..., V(N+q-1)`, which shrinks the leading oscillatory remainder.

use num_complex::Complex64;

use super::compensated::CompensatedSum;
use super::{AccelMode, EvalConfig, EvalResult};

/// Shape of the remainder of a partial-sum sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticModel {
    /// Period `q` of the oscillating weights (1 when there are none).
    pub period: u32,
    /// Leading power `p` in `N^{-p}`.
    pub exponent: u32,
    /// Highest power of `log N` multiplying each inverse power.
    pub log_degree: u32,
}

impl AsymptoticModel {
    pub fn new(period: u32, exponent: u32, log_degree: u32) -> Self {
        Self { period: period.max(1), exponent: exponent.max(1), log_degree }
    }
}

/// Sum an infinite term stream with period averaging and Richardson
/// extrapolation. The stream yields the terms for `n = 1, 2, ...`.
///
/// Returns the extrapolated value with `err_est` equal to the spread of the
/// last two extrapolants; `converged` reports whether that met the target.
pub fn boundary_accel_sum<I>(terms: I, model: AsymptoticModel, cfg: &EvalConfig) -> EvalResult
where
    I: IntoIterator<Item = Complex64>,
{
    let q = model.period as u64;
    let samples_at = sample_points(q, cfg);
    let last = *samples_at.last().expect("at least one sample point");
    let mut it = terms.into_iter();
    let mut acc = CompensatedSum::new();
    let mut samples = Vec::with_capacity(samples_at.len());
    let mut n = 0u64;
    for &target in &samples_at {
        while n < target {
            acc.add(it.next().expect("term stream ended early"));
            n += 1;
        }
        let mut window = CompensatedSum::new();
        window.add(acc.value());
        for _ in 1..q {
            acc.add(it.next().expect("term stream ended early"));
            n += 1;
            window.add(acc.value());
        }
        samples.push((target as f64, window.value() / q as f64));
    }
    let (value, err) = extrapolate(&samples, model);
    let err = err + acc.rounding_bound();
    EvalResult {
        value,
        err_est: err,
        terms_used: last + q - 1,
        mode: AccelMode::RootOfUnity(model.period),
        converged: err <= cfg.target_tol,
    }
}

/// Totals `N_0 2^i` (multiples of `q`) up to `cfg.n_max`.
fn sample_points(q: u64, cfg: &EvalConfig) -> Vec<u64> {
    let levels = cfg.accel_levels.max(2) as u64;
    let top = cfg.n_max.max(q * 4);
    let mut base = (cfg.n_initial / 16).max(q * 4);
    base = base.div_ceil(q) * q;
    while base > q && base * (1u64 << (levels - 1)) > top {
        base /= 2;
        base = base.div_ceil(q) * q;
    }
    (0..levels).map(|i| base << i).collect()
}

/// Basis functions of the remainder in elimination order, for `K` terms.
fn basis(model: AsymptoticModel, k: usize) -> Vec<(i32, u32)> {
    let mut out = Vec::with_capacity(k);
    let mut i = 0;
    while out.len() < k {
        for l in 0..=model.log_degree {
            if out.len() == k {
                break;
            }
            out.push((model.exponent as i32 + i, l));
        }
        i += 1;
    }
    out
}

/// Generalized Richardson elimination over `(N, V(N))` pairs sorted by `N`.
///
/// For each `K` the last `K+1` samples determine the limit and `K`
/// remainder coefficients exactly. The `K` with the smallest change from
/// `K-1` wins.
pub fn extrapolate(samples: &[(f64, Complex64)], model: AsymptoticModel) -> (Complex64, f64) {
    let s = samples.len();
    if s == 0 {
        return (Complex64::new(0.0, 0.0), f64::INFINITY);
    }
    let n_ref = samples[s - 1].0;
    let mut estimates = Vec::with_capacity(s);
    for k in 0..s {
        let pts = &samples[s - 1 - k..];
        let funcs = basis(model, k);
        estimates.push(solve_limit(pts, &funcs, n_ref));
    }
    if s == 1 {
        return (estimates[0], f64::INFINITY);
    }
    let mut best = (estimates[1], (estimates[1] - estimates[0]).norm());
    for k in 2..s {
        let d = (estimates[k] - estimates[k - 1]).norm();
        if d <= best.1 {
            best = (estimates[k], d);
        }
    }
    best
}

/// Solve for the constant term with the given remainder basis (real
/// matrix, complex right-hand side), by Gaussian elimination with partial
/// pivoting. Logs are centred at `n_ref` for conditioning.
fn solve_limit(pts: &[(f64, Complex64)], funcs: &[(i32, u32)], n_ref: f64) -> Complex64 {
    let dim = funcs.len() + 1;
    debug_assert_eq!(pts.len(), dim);
    let mut a = vec![vec![0.0f64; dim]; dim];
    let mut b: Vec<Complex64> = pts.iter().map(|p| p.1).collect();
    for (row, &(n, _)) in pts.iter().enumerate() {
        a[row][0] = 1.0;
        let ratio = n_ref / n;
        let lg = (n / n_ref).ln();
        for (col, &(p, l)) in funcs.iter().enumerate() {
            a[row][col + 1] = ratio.powi(p) * lg.powi(l as i32);
        }
    }
    for col in 0..dim {
        let piv = (col..dim).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        if d == 0.0 {
            continue;
        }
        let pivot = a[col].clone();
        for row in 0..dim {
            if row == col {
                continue;
            }
            let f = a[row][col] / d;
            if f == 0.0 {
                continue;
            }
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                *dst -= f * src;
            }
            let bc = b[col];
            b[row] -= bc * f;
        }
    }
    b[0] / a[0][0]
}
