//! Raw partial sums at a root of unity against the accelerated limit.

use mplv::engine::gap_dp::{GapDp, LevelWeight};
use mplv::engine::{boundary_accel_sum, li_eval_gaps, periodic_model, EvalConfig, Method};
use mplv::index::Index;
use num_complex::Complex64;

fn main() {
    // Li_{1,2}(1, i): both gap weights are i, so c(d) = i^d has period 4.
    let i = Complex64::new(0.0, 1.0);
    let table: Vec<Complex64> = (0..4).map(|d| i.powu(d)).collect();
    let weights = vec![LevelWeight::Periodic(table.clone()), LevelWeight::Periodic(table)];
    let exps = [1u32, 2];

    let mut dp = GapDp::new(&exps, &weights);
    for n in [1u64 << 8, 1 << 12, 1 << 16] {
        println!("partial sum N = {n:>6}: {:.12}", dp.advance_to(n));
    }

    let model = periodic_model(&exps, &weights);
    println!("model: period {}, N^-{} with log degree {}", model.period, model.exponent, model.log_degree);
    let cfg = EvalConfig::default();
    let r = boundary_accel_sum(GapDp::new(&exps, &weights), model, &cfg);
    println!("accelerated:           {:.12}  err {:.1e}  terms {}", r.value, r.err_est, r.terms_used);

    let ix = Index::new(exps.to_vec()).unwrap();
    let split = li_eval_gaps(&ix, &[i, i], &cfg.clone().with_method(Method::PathSplit)).unwrap();
    println!("path splitting:        {:.12}", split.value);
}
