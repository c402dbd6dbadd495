//! Run every identity in the catalogue at its default grid and print one line each.
//!
//! `cargo run --example verify_registry -- [samples] [seed]`

use std::time::Instant;

use mplv::engine::EvalConfig;
use mplv::registry::{list_identities, verify_identity, Params, VerifyOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let n_samples = args.next().map(|s| s.parse().expect("samples"));
    let seed = args.next().map_or(42, |s| s.parse().expect("seed"));
    let opts = VerifyOptions { n_samples, seed, ..VerifyOptions::default() };
    let cfg = EvalConfig::default();
    for spec in list_identities() {
        let t = Instant::now();
        match verify_identity(spec.id, &Params::default(), &opts, &cfg) {
            Ok(r) => println!("{}  ({:.1}s)", r.summary_line(), t.elapsed().as_secs_f64()),
            Err(e) => println!("{} error: {e}", spec.id),
        }
    }
}
