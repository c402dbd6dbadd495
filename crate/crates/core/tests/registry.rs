use std::f64::consts::PI;

use mplv::engine::{ll_eval, EvalConfig, TwoVarPoint};
use mplv::index::Index;
use mplv::registry::checks::{five_term, Check};
use mplv::registry::sampling::connection_u;
use mplv::registry::{
    admissible, find_identity, sample_admissible, verify_derivatives, verify_identity, verify_limit, Mode, Params,
    RegistryError, SamplePoint, Status, VerifyOptions,
};
use num_complex::Complex64;

const DELTA: f64 = 0.05;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn passes(c: &Check) -> bool {
    let residual = (c.lhs.value - c.rhs.value).norm();
    let scale = if c.relative { c.lhs.value.norm().max(c.rhs.value.norm()) } else { 1.0 };
    residual <= c.tolerance * scale + c.lhs.err + c.rhs.err
}

#[test]
fn sampled_points_satisfy_their_hypotheses() {
    let pts = sample_admissible("thm1.4", 3, 7).unwrap();
    assert_eq!(pts.len(), 3);
    for p in &pts {
        let y = p.y.unwrap();
        assert!(p.x.norm() <= 0.8 && y.norm() <= 0.8);
        assert!(connection_u(p.x, y).norm() <= 1.0 - DELTA / 2.0);
        assert!(admissible(find_identity("thm1.4").unwrap().domain, p.x, y, DELTA));
    }

    let pts = sample_admissible("cor1.2", 5, 1).unwrap();
    assert_eq!(pts.len(), 5);
    for p in &pts {
        assert!((p.x.norm() - 1.0).abs() < 1e-12);
        assert!((p.x - 1.0).norm() >= DELTA);
    }

    for p in sample_admissible("thm1.2", 5, 1).unwrap() {
        assert!((Complex64::new(1.0, 0.0) - p.x * p.y.unwrap()).norm() >= DELTA);
    }

    for p in sample_admissible("five-term", 50, 3).unwrap() {
        let y = p.y.unwrap();
        assert!(p.x.im == 0.0 && y.im == 0.0);
        assert!(p.x.re > 0.05 && p.x.re < 0.95 && y.re > 0.05 && y.re < 0.95);
    }
}

#[test]
fn sampling_is_seeded() {
    let a = sample_admissible("thm1.2", 8, 11).unwrap();
    assert_eq!(a, sample_admissible("thm1.2", 8, 11).unwrap());
    assert_ne!(a, sample_admissible("thm1.2", 8, 12).unwrap());
    assert!(matches!(sample_admissible("nope", 1, 0), Err(RegistryError::UnknownIdentity(_))));
}

#[test]
fn double_zeta_formula_at_weight_three() {
    let r = verify_identity("wsf-oz", &Params::k(3), &VerifyOptions::default(), &cfg()).unwrap();
    assert!(r.pass);
    for s in &r.samples {
        // 2 zeta(1,2) against 2 zeta(3).
        assert!(s.residual.unwrap() <= 1e-10, "{s:?}");
        assert!((s.rhs.unwrap().re - 2.0 * 1.202_056_903_159_594_3).abs() < 1e-10);
    }
}

#[test]
fn double_t_formula_at_weight_four() {
    let r = verify_identity("wsf-kt", &Params::k(4), &VerifyOptions::default(), &cfg()).unwrap();
    assert!(r.pass);
    // T(4) = 2 (1 - 1/16) zeta(4) = (15/8) pi^4/90.
    let t4 = 15.0 / 8.0 * PI.powi(4) / 90.0;
    let main = &r.samples[0];
    assert!((main.rhs.unwrap().re - 3.0 * t4).abs() < 1e-8);
    assert!(main.residual.unwrap() <= 1e-8);
}

#[test]
fn exact_generic_formula_at_weight_two() {
    let opts = VerifyOptions { mode: Some(Mode::Exact), degree: Some(16), ..VerifyOptions::default() };
    let r = verify_identity("thm1.2", &Params::k(2), &opts, &cfg()).unwrap();
    assert_eq!(r.exact.len(), 1);
    assert!(r.exact[0].is_zero());
    assert_eq!(r.max_residual, 0.0);
    assert!(r.pass);
}

#[test]
fn five_term_at_one_half() {
    let pt = SamplePoint { x: Complex64::new(0.5, 0.0), y: Some(Complex64::new(0.5, 0.0)), seed: 0, draw: 0 };
    let checks = five_term(&pt, 1e-12, 1e-12, &cfg()).unwrap();
    assert_eq!(checks.len(), 2);
    for c in &checks {
        assert!(passes(c), "{:?}", c.label);
    }
}

#[test]
fn reports_are_reproducible() {
    let opts = VerifyOptions { n_samples: Some(4), seed: 9, ..VerifyOptions::default() };
    for id in ["thm1.2", "thm1.4", "five-term"] {
        let a = verify_identity(id, &Params::default(), &opts, &cfg()).unwrap();
        let b = verify_identity(id, &Params::default(), &opts, &cfg()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

/// Compositions of `n` into `k` positive parts, by plain recursion.
fn naive_compositions(n: u32, k: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in naive_compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn ones_then(ones: u32, last: Option<u32>) -> Index {
    let mut parts = vec![1; ones as usize];
    parts.extend(last);
    Index::new(parts).unwrap()
}

/// Both sides of the connection formula with an independently coded composition sum.
#[test]
fn connection_formula_with_independent_compositions() {
    let tight = cfg().with_tol(1e-13);
    let ll = |ix: &Index, x: Complex64, y: Complex64| ll_eval(ix, &TwoVarPoint::new(x, y), &tight).unwrap().value;
    let one = Complex64::new(1.0, 0.0);
    let pt = sample_admissible("thm1.4", 1, 5).unwrap()[0];
    let (x, y) = (pt.x, pt.y.unwrap());
    let u = connection_u(x, y);
    for r in 1..=3u32 {
        for k in 2..=4u32 {
            let lhs = ll(&ones_then(r - 1, Some(k)), u, y);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let mut rhs = Complex64::new(0.0, 0.0);
            for j in naive_compositions(r + k, k) {
                let head = Index::new(j[..k as usize - 1].to_vec()).unwrap();
                rhs += sign * ll(&ones_then(j[k as usize - 1] - 1, None), u, y) * ll(&head, x, y);
            }
            for j in 0..=k - 2 {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                rhs += s * ll(&ones_then(r - 1, Some(k - j)), one, y) * ll(&ones_then(j, None), x, y);
            }
            assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1e-3), "r={r} k={k}: {lhs} vs {rhs}");
        }
    }
    let opts = VerifyOptions { n_samples: Some(3), seed: 5, ..VerifyOptions::default() };
    let rep = verify_identity("thm1.4", &Params::default(), &opts, &cfg()).unwrap();
    assert_eq!(rep.params.len(), 9);
    assert!(rep.pass, "{}", rep.summary_line());
}

#[test]
fn torus_formula_specializes_to_character_sums() {
    let opts = VerifyOptions { n_samples: Some(3), ..VerifyOptions::default() };
    for k in [2, 3, 4] {
        let r = verify_identity("wsf-3", &Params::k(k), &opts, &cfg()).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", r.summary_line());
        let labels: Vec<&str> = r.samples.iter().filter_map(|s| s.label.as_deref()).collect();
        assert!(labels.iter().any(|l| l.contains("(i,-i)")), "{labels:?}");
        assert!(labels.iter().any(|l| l.contains("(w,1/w)")), "{labels:?}");
    }
}

#[test]
fn derivative_examples() {
    for s in ["2", "1,1", "1,2,1"] {
        let ix: Index = s.parse().unwrap();
        let r = verify_derivatives(&[ix], 20, 42, &cfg()).unwrap();
        assert!(r.pass, "{s}: {}", r.summary_line());
        for rec in &r.samples {
            let limit = if rec.label.as_deref().is_some_and(|l| l.starts_with("d/dx LL")) { 1e-6 } else { 1e-5 };
            assert!(rec.rel_residual.unwrap() <= limit, "{rec:?}");
        }
    }
    let deep: Index = "1,1,1,1,1".parse().unwrap();
    assert!(matches!(verify_derivatives(&[deep], 2, 0, &cfg()), Err(RegistryError::InvalidParams(_))));
}

#[test]
fn companion_limit_at_weight_four() {
    let r = verify_limit("limit-companion", 4, 16, &cfg()).unwrap();
    assert!(r.conclusive);
    assert!(r.decreasing);
    assert!(r.final_magnitude <= 1e-2, "{}", r.final_magnitude);
    assert!(r.pass);
}

#[test]
fn modes_and_params_are_checked() {
    let bad_mode = VerifyOptions { mode: Some(Mode::Exact), ..VerifyOptions::default() };
    assert!(matches!(
        verify_identity("five-term", &Params::default(), &bad_mode, &cfg()),
        Err(RegistryError::UnsupportedMode { .. })
    ));
    assert!(matches!(
        verify_identity("wsf-oz", &Params::k(2), &VerifyOptions::default(), &cfg()),
        Err(RegistryError::InvalidParams(_))
    ));
}
