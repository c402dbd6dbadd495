//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use mplv::characters::Conductor;
use mplv::engine::{
    li_eval, li_eval_gaps, ll_eval, t_value_direct, t_value_eval, zeta_eval, ArgVector, EvalConfig, TwoVarPoint,
};
use mplv::exact::{exact_check_partial_fraction, expand_li, MonomialArg};
use mplv::index::{compositions, Index};
use mplv::registry::checks::two_path;
use mplv::registry::derivatives::default_indices;
use mplv::registry::{verify_derivatives, verify_identity, IdentityReport, Mode, Params, Status, VerifyOptions};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Term<'a> = (&'a [u32], &'a [(i32, i32)]);

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn ix(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn opts(n: Option<usize>, tol: Option<f64>) -> VerifyOptions {
    VerifyOptions { n_samples: n, tolerance: tol, ..VerifyOptions::default() }
}

fn run_id(id: &str, p: Params, o: &VerifyOptions) -> Result<IdentityReport, String> {
    verify_identity(id, &p, o, &cfg()).map_err(|e| format!("{id}: {e}"))
}

/// PASS only if every report passes; reports the worst residual.
fn all_pass(reports: &[IdentityReport]) -> Outcome {
    let mut notes = Vec::new();
    for r in reports {
        if r.status != Status::Pass {
            return Err(r.summary_line());
        }
        notes.push(format!("{} {:.1e}", r.id, r.max_residual));
    }
    Ok(notes.join(", "))
}

fn c1_exact_generic() -> Outcome {
    let t = Instant::now();
    let o = VerifyOptions { mode: Some(Mode::Exact), degree: Some(24), ..VerifyOptions::default() };
    let r = run_id("thm1.2", Params::default(), &o)?;
    let ks: Vec<u32> = r.params.iter().filter_map(|p| p.k).collect();
    if ks != [2, 3, 4, 5, 6] || r.exact.len() != 5 || !r.exact.iter().all(|e| e.is_zero()) {
        return Err(format!("k={ks:?} {}", r.summary_line()));
    }
    let secs = t.elapsed().as_secs_f64();
    if secs > 120.0 {
        return Err(format!("zero difference but took {secs:.0}s > 120s"));
    }
    Ok(format!("k=2..6 degree 24 zero difference in {secs:.1}s"))
}

/// `m^s n^s (m+n)^s` times both sides of the partial fraction split, in integers.
fn partial_fraction_cleared(i: u32, j: u32, m: u128, n: u128) -> bool {
    let s = i + j;
    let mut pascal = vec![vec![1u128]];
    for a in 1..s as usize {
        let prev = &pascal[a - 1];
        let mut row = vec![1u128; a + 1];
        for b in 1..a {
            row[b] = prev[b - 1] + prev[b];
        }
        pascal.push(row);
    }
    let binom = |a: u32, b: u32| if b > a { 0 } else { pascal[a as usize][b as usize] };
    let lhs = m.pow(s - i) * n.pow(s - j) * (m + n).pow(s);
    let mut rhs = 0u128;
    for mu in 1..s {
        rhs += binom(mu - 1, i - 1) * m.pow(s) * n.pow(mu) * (m + n).pow(s - mu);
        rhs += binom(mu - 1, j - 1) * m.pow(mu) * n.pow(s) * (m + n).pow(s - mu);
    }
    lhs == rhs
}

fn c2_exact_lemmas() -> Outcome {
    let mut checked = 0;
    for s in 2..=8 {
        for i in 1..s {
            let j = s - i;
            for m in 1..=20u64 {
                for n in 1..=20u64 {
                    let lib = exact_check_partial_fraction(i, j, m, n);
                    let oracle = partial_fraction_cleared(i, j, m as u128, n as u128);
                    if !(lib && oracle) {
                        return Err(format!("partial fraction i={i} j={j} m={m} n={n}: lib {lib} oracle {oracle}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    let o = VerifyOptions { mode: Some(Mode::Exact), degree: Some(20), ..VerifyOptions::default() };
    let mut reports = Vec::new();
    for id in ["lemma2.1", "eq2.3", "stuffle", "eq2.5", "eq2.6"] {
        reports.push(run_id(id, Params::default(), &o)?);
    }
    all_pass(&reports)?;
    let sets: usize = reports.iter().map(|r| r.exact.len()).sum();
    Ok(format!("{checked} partial fractions equal; {sets} parameter sets zero to degree 20"))
}

fn c3_wsf_oz() -> Outcome {
    let r = run_id("wsf-oz", Params::default(), &opts(None, Some(1e-8)))?;
    let ks: Vec<u32> = r.params.iter().filter_map(|p| p.k).collect();
    if ks != [3, 4, 5, 6, 7, 8] {
        return Err(format!("grid {ks:?}"));
    }
    let summary = all_pass(std::slice::from_ref(&r))?;
    let z12 = zeta_eval(&ix(&[1, 2]), &cfg()).map_err(|e| e.to_string())?.value;
    let z3 = zeta_eval(&ix(&[3]), &cfg()).map_err(|e| e.to_string())?.value;
    let d = (z12 - z3).norm();
    if d > 1e-10 {
        return Err(format!("|zeta(1,2) - zeta(3)| = {d:.2e}"));
    }
    Ok(format!("{summary}; |zeta(1,2) - zeta(3)| = {d:.1e}"))
}

fn c4_wsf_kt() -> Outcome {
    let r = run_id("wsf-kt", Params::default(), &opts(None, Some(1e-8)))?;
    let summary = all_pass(std::slice::from_ref(&r))?;
    // Both evaluation paths for every T-value in the grid.
    let mut worst = 0f64;
    for k in 3..=8u32 {
        let mut indices = vec![ix(&[k])];
        indices.extend((2..k).map(|j| ix(&[k - j, j])));
        for index in &indices {
            let a = t_value_eval(index, &cfg()).map_err(|e| e.to_string())?.value;
            let b = t_value_direct(index, &cfg()).map_err(|e| e.to_string())?.value;
            worst = worst.max((a - b).norm());
        }
    }
    if worst > 1e-8 {
        return Err(format!("path disagreement {worst:.2e}"));
    }
    Ok(format!("{summary}; path agreement {worst:.1e}"))
}

fn c5_character_sums() -> Outcome {
    let mut reports = Vec::new();
    for id in ["prop3.1-f3", "prop3.1-f4", "nishi", "lsum"] {
        let r = run_id(id, Params::default(), &opts(None, Some(1e-6)))?;
        let ks: Vec<u32> = r.params.iter().filter_map(|p| p.k).collect();
        if ks != [2, 3, 4, 5, 6] {
            return Err(format!("{id} grid {ks:?}"));
        }
        reports.push(r);
    }
    let summary = all_pass(&reports)?;
    let mut worst = 0f64;
    for k in 2..=6 {
        for which in [Conductor::Chi3, Conductor::Chi4] {
            for c in two_path(k, which, &cfg()).map_err(|e| e.to_string())? {
                worst = worst.max((c.lhs.value - c.rhs.value).norm());
            }
        }
    }
    if worst > 2e-6 {
        return Err(format!("two-path disagreement {worst:.2e}"));
    }
    Ok(format!("{summary}; two-path {worst:.1e}"))
}

fn c6_generic_numeric() -> Outcome {
    let r = run_id("thm1.2", Params::default(), &opts(Some(25), Some(1e-10)))?;
    let ks: Vec<u32> = r.params.iter().filter_map(|p| p.k).collect();
    if ks != [2, 3, 4, 5] || r.mode != Mode::Numeric {
        return Err(format!("grid {ks:?} mode {}", r.mode));
    }
    all_pass(&[r])
}

fn c7_connection() -> Outcome {
    let a = run_id("thm1.4", Params::default(), &opts(Some(25), Some(1e-9)))?;
    if a.params.len() != 9 || !a.relative {
        return Err(format!("{} parameter sets, relative {}", a.params.len(), a.relative));
    }
    let b = run_id("thm1.4-k2", Params::default(), &opts(Some(25), Some(1e-9)))?;
    let rs: Vec<u32> = b.params.iter().filter_map(|p| p.r).collect();
    if rs != [1, 2, 3, 4] {
        return Err(format!("k=2 grid {rs:?}"));
    }
    all_pass(&[a, b])
}

fn c8_torus() -> Outcome {
    let r = run_id("wsf-3", Params::default(), &opts(Some(15), Some(1e-9)))?;
    let spec: Vec<_> = r.samples.iter().filter(|s| s.label.as_deref().is_some_and(|l| l.contains(" vs "))).collect();
    if spec.len() != 4 * r.params.len() || spec.iter().any(|s| s.status != Status::Pass) {
        return Err(format!("{} specialization records, not all passing", spec.len()));
    }
    all_pass(&[r])
}

fn c9_five_term() -> Outcome {
    let a = run_id("five-term", Params::default(), &opts(Some(100), Some(1e-12)))?;
    let mut worst: BTreeMap<&str, f64> = BTreeMap::new();
    for s in &a.samples {
        let (label, limit) = match s.label.as_deref() {
            Some("LL-form") => ("LL-form", 1e-12),
            Some("log-form") => ("log-form", 1e-10),
            other => return Err(format!("unexpected record {other:?}")),
        };
        let res = s.residual.unwrap_or(f64::INFINITY);
        if res > limit + s.err_budget {
            return Err(format!("{label} residual {res:.2e} at {:?}", s.point));
        }
        let w = worst.entry(label).or_default();
        *w = w.max(res);
    }
    if a.samples.len() != 200 {
        return Err(format!("{} records", a.samples.len()));
    }
    let b = run_id("example-2-2", Params::default(), &opts(Some(25), Some(1e-8)))?;
    let s = all_pass(&[a, b])?;
    Ok(format!("{s}; {worst:?}"))
}

fn c10_derivatives() -> Outcome {
    let indices = default_indices();
    if indices.iter().map(|i| i.depth()).max() != Some(4) {
        return Err("index set does not reach depth 4".into());
    }
    let r = verify_derivatives(&indices, 20, 42, &cfg()).map_err(|e| e.to_string())?;
    if r.samples.len() != 20 * (indices.len() + 1) {
        return Err(format!("{} records", r.samples.len()));
    }
    Ok(format!("{} indices: {}", indices.len(), all_pass(&[r])?))
}

fn c11_limits() -> Outcome {
    let o = VerifyOptions { t_max: 16, ..VerifyOptions::default() };
    let r = run_id("limit-3.1", Params::default(), &o)?;
    if r.limits.len() != 6 {
        return Err(format!("{} limit sequences", r.limits.len()));
    }
    let mut notes = Vec::new();
    for l in &r.limits {
        if !(l.conclusive && l.decreasing && l.final_magnitude <= 1e-2) {
            return Err(format!("{} k={}: decreasing {} final {:.2e}", l.id, l.k, l.decreasing, l.final_magnitude));
        }
        notes.push(format!("{} k={} {:.1e}", l.id, l.k, l.final_magnitude));
    }
    all_pass(&[r])?;
    Ok(notes.join(", "))
}

/// `sum over 0 < m_1 < ... < m_r <= cap` of `x^{m_r} / prod m_j^{k_j}`,
/// optionally with `m_j = j (mod 2)` and the factor `2^r`.
fn brute_force(parts: &[u32], x: Complex64, parity: bool, cap: u32) -> Complex64 {
    fn rec(parts: &[u32], depth: usize, lo: u32, cap: u32, parity: bool, x: Complex64, acc: f64) -> Complex64 {
        if depth == parts.len() {
            return x.powu(lo) * acc;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for m in lo + 1..=cap {
            if parity && m % 2 != (depth as u32 + 1) % 2 {
                continue;
            }
            s += rec(parts, depth + 1, m, cap, parity, x, acc / (m as f64).powi(parts[depth] as i32));
        }
        s
    }
    let factor = if parity { 2f64.powi(parts.len() as i32) } else { 1.0 };
    rec(parts, 0, 0, cap, parity, x, 1.0) * factor
}

fn c12_specializations() -> Outcome {
    let mut indices = Vec::new();
    for w in 1..=6 {
        for d in 1..=3.min(w as usize) {
            indices.extend(compositions(w, d));
        }
    }
    let points: Vec<Complex64> = (0..20)
        .map(|t| {
            Complex64::from_polar(0.15 + 0.45 * (t as f64 / 19.0), 0.3 + 2.0 * std::f64::consts::PI * t as f64 / 20.0)
        })
        .collect();
    let tight = cfg().with_tol(1e-14);
    let zero = Complex64::new(0.0, 0.0);
    let minus_one = Complex64::new(-1.0, 0.0);
    let mut worst = [0f64; 3];
    for index in &indices {
        for &x in &points {
            let parts = index.parts();
            let at0 = ll_eval(index, &TwoVarPoint::new(x, zero), &tight).map_err(|e| e.to_string())?.value;
            let li = li_eval(index, &ArgVector::ones_then(parts.len(), x), &tight).map_err(|e| e.to_string())?.value;
            let at_m1 = ll_eval(index, &TwoVarPoint::new(x, minus_one), &tight).map_err(|e| e.to_string())?.value;
            let b0 = brute_force(parts, x, false, 90);
            let b1 = brute_force(parts, x, true, 90);
            let d = [(at0 - li).norm(), (at0 - b0).norm(), (at_m1 - b1).norm()];
            for (w, v) in worst.iter_mut().zip(d) {
                *w = w.max(v);
            }
            if d.iter().any(|&v| v > 1e-12) {
                return Err(format!("({index}) at {x}: {:.2e} {:.2e} {:.2e}", d[0], d[1], d[2]));
            }
        }
    }
    Ok(format!(
        "{} indices x 20 points; y=0 vs Li {:.1e}, vs sum {:.1e}; y=-1 vs sum {:.1e}",
        indices.len(),
        worst[0],
        worst[1],
        worst[2]
    ))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn naive_expand(parts: &[u32], args: &[(i32, i32)], n: u32) -> BTreeMap<(u32, u32), BigRational> {
    fn rec(
        parts: &[u32],
        args: &[(i32, i32)],
        n: u32,
        lo: u32,
        acc: (i64, i64, BigInt),
        out: &mut BTreeMap<(u32, u32), BigRational>,
    ) {
        if args.is_empty() {
            let (a, b, den) = acc;
            if a >= 0 && b >= 0 && a + b <= n as i64 {
                *out.entry((a as u32, b as u32)).or_insert_with(|| rat(0, 1)) += BigRational::new(1.into(), den);
            }
            return;
        }
        let k = parts[parts.len() - args.len()];
        let (da, db) = args[0];
        for m in lo + 1..=n {
            let den = &acc.2 * BigInt::from(m).pow(k);
            rec(parts, &args[1..], n, m, (acc.0 + (da * m as i32) as i64, acc.1 + (db * m as i32) as i64, den), out);
        }
    }
    let mut out = BTreeMap::new();
    rec(parts, args, n, 0, (0, 0, BigInt::from(1)), &mut out);
    out.retain(|_, v| *v != rat(0, 1));
    out
}

fn c13_engine_soundness() -> Outcome {
    let terms: &[Term] = &[
        (&[3], &[(1, 1)]),
        (&[1, 2], &[(-1, 1), (1, 0)]),
        (&[2, 1], &[(1, -1), (0, 1)]),
        (&[1, 2], &[(-1, 0), (1, 1)]),
        (&[2, 2], &[(1, 0), (0, 1)]),
        (&[1, 1, 1], &[(1, 0), (0, 1), (1, 0)]),
        (&[1, 1, 2], &[(-1, 1), (1, -1), (1, 1)]),
        (&[2, 1, 1], &[(0, 1), (1, 0), (0, 1)]),
    ];
    let n = 20;
    let mut worst_ratio = 0f64;
    for (t, &(parts, args)) in terms.iter().enumerate() {
        let index = ix(parts);
        let margs: Vec<MonomialArg> = args.iter().map(|&(a, b)| MonomialArg::new(a, b)).collect();
        let poly = expand_li(&index, &margs, n).map_err(|e| e.to_string())?;
        let got: BTreeMap<(u32, u32), BigRational> = poly.terms().map(|(k, v)| (*k, v.clone())).collect();
        if got != naive_expand(parts, args, n) {
            return Err(format!("coefficients of term {t} differ from enumeration"));
        }
        for s in 0..20 {
            let x = Complex64::from_polar(0.3 * ((s % 5) as f64 + 1.0) / 5.0, 0.7 * s as f64);
            let y = Complex64::from_polar(0.3 * ((s % 4) as f64 + 1.0) / 4.0, 2.0 - 0.9 * s as f64);
            let gaps: Vec<Complex64> =
                (0..args.len()).map(|j| args[j..].iter().map(|&(a, b)| x.powi(a) * y.powi(b)).product()).collect();
            let num = li_eval_gaps(&index, &gaps, &cfg()).map_err(|e| e.to_string())?;
            let rho = x.norm().max(y.norm());
            let r = parts.len() as i32;
            let tail: f64 = (n + 1..n + 400).map(|d| (d as f64).powi(r - 1) * rho.powi(d as i32)).sum();
            let budget = num.err_est + tail + 1e-15;
            let diff = (poly.evaluate(x, y) - num.value).norm();
            if diff > budget {
                return Err(format!("term {t} at ({x}, {y}): {diff:.2e} > {budget:.2e}"));
            }
            worst_ratio = worst_ratio.max(diff / budget);
        }
    }
    let o = opts(Some(5), None);
    for id in ["thm1.2", "thm1.4", "five-term", "prop3.1-f4"] {
        let a = serde_json::to_string(&run_id(id, Params::default(), &o)?).unwrap();
        let b = serde_json::to_string(&run_id(id, Params::default(), &o)?).unwrap();
        if a != b {
            return Err(format!("{id} report bodies differ"));
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bodies = Vec::new();
    for name in ["a.jsonl", "b.jsonl"] {
        let path = dir.path().join(name);
        let argv =
            ["mplv", "verify", "--id", "thm1.4", "--samples", "4", "--seed", "42", "--out", path.to_str().unwrap()];
        let code = mplv::cli::run(argv, &mut Vec::new(), &mut Vec::new());
        if code != 0 {
            return Err(format!("cli exit {code}"));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        bodies.push(text.lines().skip(1).collect::<Vec<_>>().join("\n"));
    }
    if bodies[0] != bodies[1] {
        return Err("cli report bodies differ".into());
    }
    Ok(format!("{} terms equal to degree {n}; worst diff/budget {worst_ratio:.2}; reports byte-identical", terms.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("exact generic weighted sum, k=2..6, degree 24", c1_exact_generic),
        ("partial fractions and exact product lemmas", c2_exact_lemmas),
        ("double zeta weighted sum, k=3..8", c3_wsf_oz),
        ("double T weighted sum, k=3..8", c4_wsf_kt),
        ("character weighted sums and two-path L values, k=2..6", c5_character_sums),
        ("generic weighted sum, 25 complex points, k=2..5", c6_generic_numeric),
        ("connection formula, (r,k) in {1,2,3}x{2,3,4} and k=2, r<=4", c7_connection),
        ("torus formula, 15 points, and its root-of-unity specializations", c8_torus),
        ("five-term relation, 100 points; (r,k)=(2,2), 25 points", c9_five_term),
        ("differential formulas, 20 points per index", c10_derivatives),
        ("limit trends, k=3,4,5, t<=16", c11_limits),
        ("y=0 and y=-1 specializations", c12_specializations),
        ("engine soundness and reproducibility", c13_engine_soundness),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}  [{detail}] ({secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}  [{detail}] ({secs:.1}s)", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
