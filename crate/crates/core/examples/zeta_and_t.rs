//! Multiple zeta and T-values, with the weighted sum formulas as a sanity check.

use mplv::engine::{t_value_direct, t_value_eval, zeta_eval, EvalConfig};
use mplv::index::Index;

fn ix(s: &str) -> Index {
    s.parse().unwrap()
}

fn main() {
    let cfg = EvalConfig::default();
    for s in ["2", "3", "1,2", "2,2", "1,1,2"] {
        let z = zeta_eval(&ix(s), &cfg).unwrap();
        println!("zeta({s:<6}) = {:.15}  err {:.1e}", z.value.re, z.err_est);
    }
    for s in ["2", "1,2", "2,2", "1,3"] {
        let t = t_value_eval(&ix(s), &cfg).unwrap();
        let d = t_value_direct(&ix(s), &cfg).unwrap();
        println!("T({s:<4}) = {:.15}  direct sum {:.15}", t.value.re, d.value.re);
    }

    for k in 3..=7u32 {
        let mut lhs = 0.0;
        for j in 2..k {
            let v = zeta_eval(&Index::new(vec![k - j, j]).unwrap(), &cfg).unwrap();
            lhs += (1u64 << (j - 1)) as f64 * v.value.re;
        }
        let rhs = (k as f64 + 1.0) / 2.0 * zeta_eval(&Index::single(k), &cfg).unwrap().value.re;
        println!("k={k}: sum 2^(j-1) zeta(k-j,j) - (k+1)/2 zeta(k) = {:.1e}", lhs - rhs);
    }
}
