use std::collections::BTreeMap;

use mplv::engine::{gap_partial_sums, li_eval, li_eval_gaps, ll_eval, ArgVector, EvalConfig, TwoVarPoint};
use mplv::exact::{expand_li, BivariatePoly, MonomialArg};
use mplv::index::{compositions, Index};
use mplv::relations::LiFactor;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients of `Li_index(args)` by looping over `0 < m_1 < ... < m_r <= n`.
fn naive_expand(parts: &[u32], args: &[(i32, i32)], n: u32) -> BTreeMap<(u32, u32), BigRational> {
    fn rec(
        parts: &[u32],
        args: &[(i32, i32)],
        n: u32,
        lo: u32,
        acc: (i64, i64, BigInt),
        out: &mut BTreeMap<(u32, u32), BigRational>,
    ) {
        if args.is_empty() {
            let (a, b, den) = acc;
            if a >= 0 && b >= 0 && a + b <= n as i64 {
                *out.entry((a as u32, b as u32)).or_insert_with(|| rat(0, 1)) += BigRational::new(1.into(), den);
            }
            return;
        }
        let k = parts[parts.len() - args.len()];
        for m in lo + 1..=n {
            let (da, db) = args[0];
            let den = &acc.2 * BigInt::from(m).pow(k);
            rec(parts, &args[1..], n, m, (acc.0 + da as i64 * m as i64, acc.1 + db as i64 * m as i64, den), out);
        }
    }
    let mut out = BTreeMap::new();
    rec(parts, args, n, 0, (0, 0, BigInt::from(1)), &mut out);
    out.retain(|_, v| *v != rat(0, 1));
    out
}

fn index_and_args() -> impl Strategy<Value = (Vec<u32>, Vec<(i32, i32)>)> {
    (1usize..=3)
        .prop_flat_map(|r| (prop::collection::vec(1u32..=3, r), prop::collection::vec((-1i32..=2, -1i32..=2), r)))
}

fn small_poly(n: u32) -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec((0u32..=4, 0u32..=4, -9i64..=9, 1i64..=6), 0..6).prop_map(move |terms| {
        let mut p = BivariatePoly::zero(n);
        for (a, b, num, den) in terms {
            p.add_term(a, b, rat(num, den));
        }
        p
    })
}

fn disc_point(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_mul_is_commutative_and_associative(a in small_poly(6), b in small_poly(6), c in small_poly(6)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn expand_li_matches_naive_enumeration((parts, args) in index_and_args(), n in 4u32..=12) {
        let index = Index::new(parts.clone()).unwrap();
        let margs: Vec<MonomialArg> = args.iter().map(|&(a, b)| MonomialArg::new(a, b)).collect();
        if let Ok(p) = expand_li(&index, &margs, n) {
            let want = naive_expand(&parts, &args, n);
            let got: BTreeMap<(u32, u32), BigRational> = p.terms().map(|(k, v)| (*k, v.clone())).collect();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn series_value_matches_the_engine((parts, args) in index_and_args(), x in disc_point(0.3), y in disc_point(0.3)) {
        let index = Index::new(parts.clone()).unwrap();
        let factor = LiFactor::new(&parts, &args);
        let n = 20;
        if let Ok(p) = expand_li(&index, &factor.args, n) {
            let series = p.evaluate(x, y);
            let numeric = li_eval_gaps(&index, &factor.gap_weights(x, y), &EvalConfig::default()).unwrap();
            // Omitted terms: at most d^(r-1) monomials of total degree d, each below rho^d.
            let rho = x.norm().max(y.norm());
            let r = parts.len() as i32;
            let tail: f64 = (n + 1..n + 400).map(|d| (d as f64).powi(r - 1) * rho.powi(d as i32)).sum();
            prop_assert!((series - numeric.value).norm() <= numeric.err_est + tail + 1e-15,
                "{series} vs {}", numeric.value);
        }
    }

    #[test]
    fn stuffle_holds_numerically(p in 1u32..=4, q in 1u32..=4, x in disc_point(0.95), y in disc_point(0.95)) {
        let cfg = EvalConfig::default();
        let one = |k: u32, z: Complex64| li_eval(&Index::single(k), &ArgVector::new(&[z]), &cfg).unwrap();
        let two = |a: u32, b: u32, z1: Complex64, z2: Complex64| {
            li_eval(&Index::new(vec![a, b]).unwrap(), &ArgVector::new(&[z1, z2]), &cfg).unwrap()
        };
        let (lp, lq) = (one(p, x), one(q, y));
        let terms = [two(p, q, x, y), two(q, p, y, x), one(p + q, x * y)];
        let rhs: Complex64 = terms.iter().map(|t| t.value).sum();
        let budget = 3.0 * (lp.err_est + lq.err_est + terms.iter().map(|t| t.err_est).sum::<f64>());
        // Plus double-precision rounding of the products.
        prop_assert!((lp.value * lq.value - rhs).norm() <= budget + 1e-14);
    }

    #[test]
    fn y_zero_is_the_one_variable_polylog(parts in prop::collection::vec(1u32..=3, 1..=3), x in disc_point(0.99)) {
        let cfg = EvalConfig::default();
        let index = Index::new(parts.clone()).unwrap();
        let a = ll_eval(&index, &TwoVarPoint::new(x, Complex64::new(0.0, 0.0)), &cfg).unwrap();
        let b = li_eval(&index, &ArgVector::ones_then(parts.len(), x), &cfg).unwrap();
        prop_assert!((a.value - b.value).norm() <= a.err_est + b.err_est + 1e-14);
    }

    #[test]
    fn refinement_is_monotone_for_interior_points(
        parts in prop::collection::vec(1u32..=3, 1..=3),
        moduli in prop::collection::vec(0.9990f64..0.9997, 3),
        angles in prop::collection::vec(0.3f64..6.0, 3),
    ) {
        let r = parts.len();
        let gaps: Vec<Complex64> = (0..r).map(|j| Complex64::from_polar(moduli[j], angles[j])).collect();
        let n = EvalConfig::default().n_initial;
        let (v, _) = gap_partial_sums(&Index::new(parts).unwrap(), &gaps, &[n, 2 * n, 4 * n]);
        prop_assert!((v[1] - v[2]).norm() <= (v[0] - v[1]).norm());
    }

    #[test]
    fn gap_recursion_state_stays_bounded(
        parts in prop::collection::vec(1u32..=3, 1..=4),
        angles in prop::collection::vec(0.0f64..std::f64::consts::TAU, 4),
        on_circle in any::<bool>(),
    ) {
        let r = parts.len();
        let modulus = if on_circle { 1.0 } else { 0.97 };
        let gaps: Vec<Complex64> = (0..r).map(|j| Complex64::from_polar(modulus, angles[j])).collect();
        for n in [64u64, 1024, 8192] {
            let (_, max_state) = gap_partial_sums(&Index::new(parts.clone()).unwrap(), &gaps, &[n]);
            prop_assert!(max_state <= (n as f64).powi(r as i32));
        }
    }
}

/// Compositions by stars and bars over all subsets of cut points.
fn naive_compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        if mask.count_ones() as usize != k - 1 {
            continue;
        }
        let mut parts = Vec::new();
        let mut last = 0;
        for cut in 1..n {
            if mask & (1 << (cut - 1)) != 0 {
                parts.push(cut - last);
                last = cut;
            }
        }
        parts.push(n - last);
        out.push(parts);
    }
    out.sort();
    out
}

#[test]
fn compositions_match_stars_and_bars() {
    for n in 1..=9 {
        for k in 1..=n as usize {
            let mut got: Vec<Vec<u32>> = compositions(n, k).iter().map(|c| c.parts().to_vec()).collect();
            got.sort();
            assert_eq!(got, naive_compositions(n, k), "n={n} k={k}");
        }
    }
}
