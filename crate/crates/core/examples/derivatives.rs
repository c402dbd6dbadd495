//! d/dx LL closed forms compared with finite differences.

use mplv::engine::EvalConfig;
use mplv::index::Index;
use mplv::registry::verify_derivatives;

fn main() {
    let indices: Vec<Index> = ["2", "1,1", "1,2", "2,1,1"].iter().map(|s| s.parse().unwrap()).collect();
    let r = verify_derivatives(&indices, 5, 3, &EvalConfig::default()).unwrap();
    for s in &r.samples {
        println!("{:<28} rel {:.1e}", s.label.as_deref().unwrap_or(""), s.rel_residual.unwrap_or(f64::NAN));
    }
    println!("{}", r.summary_line());
}
