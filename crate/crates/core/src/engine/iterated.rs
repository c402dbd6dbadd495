//! Boundary evaluation by splitting the integration path.
//!
//! A gap-form multiple polylogarithm is an iterated integral
//!
//! ```text
//!   Li_{k_1..k_r}(w) = (-1)^r G(0^{k_r-1}, 1/w_r, ..., 0^{k_1-1}, 1/w_1; 1)
//!   G(a_1, ..., a_n; y) = int_{y > t_1 > ... > t_n > 0} prod dt_i / (t_i - a_i)
//! ```
//!
//! Cutting the path `[0, 1]` at `c` gives
//!
//! ```text
//!   G(a; 1) = sum_j (-1)^j G(1-a_j, ..., 1-a_1; 1-c) G(a_{j+1}, ..., a_n; c)
//! ```
//!
//! and every factor is again a gap-form series whose ratios are
//! `(1-c)/|1-a|` and `c/|a|`. With `c = A/(A+B)`, `A = min |a|`,
//! `B = min |1-a|`, both are at most `1/(A+B) < 1` whenever all gap weights
//! lie in the closed unit disc, so unit-modulus arguments converge
//! geometrically.

use num_complex::Complex64;

use super::compensated::CompensatedSum;
use super::gap_dp::{GapDp, LevelWeight};

/// Letters closer than this to 1 are treated as exactly 1.
const SNAP: f64 = 1e-13;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Evaluated {
    pub value: Complex64,
    pub err: f64,
    pub terms: u64,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Letters of the integral word, outermost first.
fn word_from_gaps(exponents: &[u32], gaps: &[Complex64]) -> Vec<Complex64> {
    let mut word = Vec::new();
    for j in (0..exponents.len()).rev() {
        for _ in 1..exponents[j] {
            word.push(zero());
        }
        let mut a = one() / gaps[j];
        if (a - one()).norm() < SNAP {
            a = one();
        }
        word.push(a);
    }
    word
}

/// Tail bound for a gap series of depth `r` with all ratios at most `rho`,
/// after summing outer totals up to `n`.
pub(crate) fn gap_tail_bound(rho: f64, r: usize, n: u64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    let n1 = (n + 1) as f64;
    let log = (n1) * rho.ln() + (r as f64 - 1.0) * n1.ln() - r as f64 * (1.0 - rho).ln();
    log.exp()
}

/// Sum a gap series with geometric weights until the tail bound drops below
/// `abs_tol`. `amplitude` scales the bound for non-unit weight amplitudes.
pub(crate) fn sum_geometric(exponents: &[u32], weights: &[LevelWeight], abs_tol: f64, n_cap: u64) -> Evaluated {
    let rho = weights.iter().map(|w| w.radius()).fold(0.0, f64::max);
    let amp: f64 = weights.iter().map(|w| w.amplitude()).product();
    let r = exponents.len();
    if rho == 0.0 {
        return Evaluated { value: zero(), err: 0.0, terms: 0 };
    }
    let mut dp = GapDp::new(exponents, weights);
    let mut n = 32u64;
    loop {
        dp.advance_to(n);
        let bound = amp * gap_tail_bound(rho, r, n);
        if bound <= abs_tol || n >= n_cap {
            return Evaluated { value: dp.partial_sum(), err: bound + dp.rounding_bound(), terms: n };
        }
        n = (n * 2).min(n_cap);
    }
}

/// `G(word; y)` for a word without trailing zeros, `0 < y`.
fn g_series(word: &[Complex64], y: f64, abs_tol: f64, n_cap: u64) -> Evaluated {
    if word.is_empty() {
        return Evaluated { value: one(), err: 0.0, terms: 0 };
    }
    if word.iter().all(|a| *a == zero()) {
        let n = word.len() as i32;
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        return Evaluated { value: Complex64::new(y.ln().powi(n) / fact, 0.0), err: 0.0, terms: 0 };
    }
    assert!(*word.last().unwrap() != zero(), "trailing zero letters are not produced by path splitting");
    // Groups (0^{m-1}, c), outermost first.
    let mut exps = Vec::new();
    let mut letters = Vec::new();
    let mut zeros = 0u32;
    for &a in word {
        if a == zero() {
            zeros += 1;
        } else {
            exps.push(zeros + 1);
            letters.push(a);
            zeros = 0;
        }
    }
    let depth = exps.len();
    // Innermost gap belongs to the last letter.
    let inner_exps: Vec<u32> = exps.iter().rev().copied().collect();
    let weights: Vec<LevelWeight> =
        letters.iter().rev().map(|c| LevelWeight::Geometric(Complex64::new(y, 0.0) / *c)).collect();
    let mut ev = sum_geometric(&inner_exps, &weights, abs_tol, n_cap);
    if depth % 2 == 1 {
        ev.value = -ev.value;
    }
    ev
}

/// Cut point and convergence ratio for a word whose letters satisfy
/// `|a| >= A`, `|1 - a| >= B` (ignoring letters that are exactly 0 or 1).
fn cut_point(word: &[Complex64]) -> Option<(f64, f64)> {
    let a_min = word.iter().filter(|a| **a != zero()).map(|a| a.norm()).fold(f64::INFINITY, f64::min);
    let b_min = word.iter().filter(|a| **a != one()).map(|a| (one() - *a).norm()).fold(f64::INFINITY, f64::min);
    let (a_min, b_min) = (a_min.min(1e6), b_min.min(1e6));
    if a_min + b_min <= 1.0 {
        return None;
    }
    let c = a_min / (a_min + b_min);
    Some((c, 1.0 / (a_min + b_min)))
}

/// Gap-form multiple polylogarithm `sum prod w_j^{n_j} / prod m_j^{k_j}` by
/// path splitting. Caller guarantees convergence (`|w_j| <= 1`, and
/// `w_r != 1` when `k_r = 1`).
pub(crate) fn gap_li_split(exponents: &[u32], gaps: &[Complex64], n_cap: u64) -> Option<Evaluated> {
    if gaps.iter().any(|w| *w == zero()) {
        return Some(Evaluated { value: zero(), err: 0.0, terms: 0 });
    }
    let word = word_from_gaps(exponents, gaps);
    let (c, _rate) = cut_point(&word)?;
    let n = word.len();
    let abs_tol = 1e-18;
    let mut total = CompensatedSum::new();
    let mut err = 0.0;
    let mut terms = 0u64;
    for j in 0..=n {
        let first: Vec<Complex64> = word[..j].iter().rev().map(|a| one() - *a).collect();
        let second = &word[j..];
        let f = g_series(&first, 1.0 - c, abs_tol, n_cap);
        let s = g_series(second, c, abs_tol, n_cap);
        let prod = f.value * s.value;
        if j % 2 == 0 {
            total.add(prod);
        } else {
            total.add(-prod);
        }
        err += f.value.norm() * s.err + s.value.norm() * f.err + f.err * s.err;
        err += 4.0 * f64::EPSILON * prod.norm();
        terms += f.terms + s.terms;
    }
    let sign = if exponents.len() % 2 == 1 { -1.0 } else { 1.0 };
    Some(Evaluated { value: total.value() * sign, err: err + total.rounding_bound(), terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const ZETA3: f64 = 1.2020569031595942;
    const CATALAN: f64 = 0.915_965_594_177_219;

    fn li(exps: &[u32], gaps: &[Complex64]) -> Complex64 {
        gap_li_split(exps, gaps, 1 << 26).unwrap().value
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zeta_values() {
        assert!((li(&[2], &[re(1.0)]).re - PI * PI / 6.0).abs() < 1e-15);
        assert!((li(&[3], &[re(1.0)]).re - ZETA3).abs() < 1e-15);
        // zeta(1,2) = zeta(3)
        assert!((li(&[1, 2], &[re(1.0), re(1.0)]).re - ZETA3).abs() < 1e-14);
        // zeta(2,2) = pi^4/120
        assert!((li(&[2, 2], &[re(1.0), re(1.0)]).re - PI.powi(4) / 120.0).abs() < 1e-14);
    }

    #[test]
    fn unit_circle_depth_one() {
        let v = li(&[2], &[re(-1.0)]);
        assert!((v.re + PI * PI / 12.0).abs() < 1e-15);
        let v = li(&[2], &[Complex64::new(0.0, 1.0)]);
        assert!((v.re + PI * PI / 48.0).abs() < 1e-15);
        assert!((v.im - CATALAN).abs() < 1e-15);
        let v = li(&[1], &[re(-1.0)]);
        assert!((v.re + std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn interior_agrees_with_direct_series() {
        let gaps = [Complex64::new(0.3, -0.5), Complex64::new(-0.6, 0.2), Complex64::new(0.9, 0.1)];
        let exps = [1, 2, 1];
        let split = li(&exps, &gaps);
        let weights: Vec<_> = gaps.iter().map(|w| LevelWeight::Geometric(*w)).collect();
        let direct = sum_geometric(&exps, &weights, 1e-18, 1 << 22).value;
        assert!((split - direct).norm() < 1e-13, "{split} vs {direct}");
    }
}
