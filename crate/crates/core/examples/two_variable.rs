//! The two-variable series LL: at y = 0 it is a one-variable multiple
//! polylogarithm, at y = -1 a parity-restricted sum.

use mplv::engine::{li_eval, ll_eval, ArgVector, EvalConfig, TwoVarPoint};
use mplv::index::Index;
use num_complex::Complex64;

fn main() {
    let cfg = EvalConfig::default();
    let index: Index = "1,2".parse().unwrap();
    let x = Complex64::new(0.4, 0.3);

    let at_zero = ll_eval(&index, &TwoVarPoint::new(x, Complex64::new(0.0, 0.0)), &cfg).unwrap();
    let li = li_eval(&index, &ArgVector::ones_then(2, x), &cfg).unwrap();
    println!("LL_1,2(x, 0)  = {:.14}", at_zero.value);
    println!("Li_1,2(1, x)  = {:.14}", li.value);

    for y in [0.5, -0.5, -1.0] {
        let r = ll_eval(&index, &TwoVarPoint::new(x, Complex64::new(y, 0.0)), &cfg).unwrap();
        println!("LL_1,2(x, {y:>4}) = {:.14}  err {:.1e}", r.value, r.err_est);
    }

    // Boundary point, handled by splitting the iterated integral.
    let pt = TwoVarPoint::new(Complex64::from_polar(1.0, 2.0), Complex64::new(0.3, 0.0));
    let r = ll_eval(&index, &pt, &cfg).unwrap();
    println!("LL_1,2(e^2i, 0.3) = {:.14}  via {}", r.value, r.mode);
}
