//! The boundary differences shrinking as x approaches 1 on the unit circle.

use mplv::engine::EvalConfig;
use mplv::registry::verify_limit;

fn main() {
    let cfg = EvalConfig::default();
    let t_max = std::env::args().nth(1).map_or(14, |s| s.parse().expect("t_max"));
    for id in ["limit-3.1", "limit-companion"] {
        let r = verify_limit(id, 4, t_max, &cfg).unwrap();
        for p in &r.points {
            println!("{id} k=4 t={:>2} |D| = {:.3e}", p.t, p.magnitude);
        }
        println!("decreasing from t=8: {}  final {:.2e}  pass {}", r.decreasing, r.final_magnitude, r.pass);
    }
}
