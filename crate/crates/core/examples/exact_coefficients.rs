//! Exact power-series coefficients and identities checked coefficient by coefficient.

use mplv::exact::{exact_check_identity, expand_li, ExactParams, MonomialArg};
use mplv::index::Index;

fn main() {
    let p = expand_li(&Index::new(vec![1, 2]).unwrap(), &[MonomialArg::new(1, 0), MonomialArg::new(0, 1)], 6).unwrap();
    print!("Li_1,2(x, y) to degree 6:\n{}", p.to_canonical());

    for (id, params) in [
        ("thm1.2", ExactParams::k(3)),
        ("lemma2.1", ExactParams::k(4)),
        ("stuffle", ExactParams::pq(2, 3)),
        ("eq2.3", ExactParams::ij(2, 2)),
    ] {
        let r = exact_check_identity(id, &params, 16).unwrap();
        println!("{id:<9} degree {}: {} nonzero differences", r.degree, r.nonzero_terms);
    }
}
