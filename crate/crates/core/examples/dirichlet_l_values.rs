//! Character-twisted double sums for conductors 3 and 4.

use mplv::characters::{dirichlet_l, l_sh_eval, l_sh_via_li, l_star_eval, Character, Conductor};
use mplv::engine::EvalConfig;
use mplv::index::Index;

fn main() {
    let cfg = EvalConfig::default();
    let catalan = dirichlet_l(2, Character::Chi4, &cfg).unwrap();
    println!("L(2; chi4) = {:.15} (Catalan)", catalan.value.re);
    println!("L(3; chi3^2) = {:.15}", dirichlet_l(3, Character::Chi3.square(), &cfg).unwrap().value.re);

    for (chi, which) in [(Character::Chi3, Conductor::Chi3), (Character::Chi4, Conductor::Chi4)] {
        for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let ix = Index::new(vec![p, q]).unwrap();
            let direct = l_sh_eval(&ix, &[chi, chi], &cfg).unwrap();
            let via = l_sh_via_li(p, q, which, &cfg).unwrap();
            println!(
                "L_sh({p},{q}; {chi}) = {:.13}   through Li: {:.13}   diff {:.1e}",
                direct.value.re,
                via.value.re,
                (direct.value - via.value).norm()
            );
        }
        let s = l_star_eval(1, 2, chi, &cfg).unwrap();
        println!("L_*(1,2; {chi}) = {:.13}", s.value.re);
    }
}
