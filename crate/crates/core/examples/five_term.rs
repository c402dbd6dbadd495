//! The dilogarithm five-term relation in both of its forms.

use mplv::engine::EvalConfig;
use mplv::registry::checks::five_term;
use mplv::registry::sample_admissible;

fn main() {
    let cfg = EvalConfig::default();
    for pt in sample_admissible("five-term", 5, 1).unwrap() {
        for c in five_term(&pt, 1e-12, 1e-10, &cfg).unwrap() {
            println!(
                "x={:.4} y={:.4} {:<8} residual {:.1e}",
                pt.x.re,
                pt.y_or_zero().re,
                c.label.unwrap_or_default(),
                (c.lhs.value - c.rhs.value).norm()
            );
        }
    }
}
