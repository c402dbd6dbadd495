//! LL at u = (1 - x)/(1 - xy) expressed through values at x and at 1.

use mplv::engine::EvalConfig;
use mplv::registry::checks::connection_sides;
use mplv::registry::sample_admissible;

fn main() {
    let cfg = EvalConfig::default();
    let points = sample_admissible("thm1.4", 3, 7).unwrap();
    for (r, k) in [(1, 2), (2, 3), (3, 4)] {
        for pt in &points {
            let (lhs, rhs) = connection_sides(r, k, pt.x, pt.y_or_zero(), &cfg).unwrap();
            println!(
                "(r,k)=({r},{k}) x={:.3} y={:.3}: |lhs - rhs| = {:.1e}",
                pt.x,
                pt.y_or_zero(),
                (lhs.value - rhs.value).norm()
            );
        }
    }
}
