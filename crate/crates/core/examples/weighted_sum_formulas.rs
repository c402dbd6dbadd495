//! Weighted sum formulas for L-values of conductor 3 and 4 through the registry.

use mplv::engine::EvalConfig;
use mplv::registry::{verify_identity, Params, VerifyOptions};

fn main() {
    let cfg = EvalConfig::default();
    let opts = VerifyOptions::default();
    for id in ["prop3.1-f3", "prop3.1-f4", "nishi", "lsum", "wsf-oz", "wsf-kt"] {
        for k in 3..=5 {
            let r = verify_identity(id, &Params::k(k), &opts, &cfg).unwrap();
            let main = &r.samples[0];
            println!(
                "{id:<11} k={k}  lhs {:>18.12}  rhs {:>18.12}  {}",
                main.lhs.unwrap().re,
                main.rhs.unwrap().re,
                r.status
            );
        }
    }
}
