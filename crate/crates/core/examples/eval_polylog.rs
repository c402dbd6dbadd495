//! One- and multi-variable polylogarithms inside the disc and on its boundary.

use mplv::engine::{li_eval, polylog, ArgVector, EvalConfig};
use mplv::index::Index;
use num_complex::Complex64;

fn main() {
    let cfg = EvalConfig::default();
    let half = Complex64::new(0.5, 0.0);
    let li2 = polylog(2, half, &cfg).unwrap();
    // Li_2(1/2) = pi^2/12 - log^2(2)/2
    let closed = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
    println!("Li_2(1/2)          = {:.15}  (closed form {closed:.15})", li2.value.re);

    let z = Complex64::from_polar(1.0, 1.0);
    let r = polylog(3, z, &cfg).unwrap();
    println!("Li_3(e^i)          = {:.12}  err {:.1e}  via {}", r.value, r.err_est, r.mode);

    let index: Index = "1,2".parse().unwrap();
    let args = ArgVector::new(&[Complex64::new(0.3, 0.4), Complex64::new(-0.5, 0.2)]);
    let r = li_eval(&index, &args, &cfg).unwrap();
    println!("Li_1,2(0.3+0.4i, -0.5+0.2i) = {:.12}  terms {}", r.value, r.terms_used);
}
