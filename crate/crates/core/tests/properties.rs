//! Invariants checked on random inputs.

use proptest::prelude::*;
use qde_core::bethe::{bethe_residual, bethe_solve};
use qde_core::field::{rat, Field, Rat};
use qde_core::params::{ahat, lambda_bullet, HalfMonomial, Params, QFunc, SignedClass};
use qde_core::poly::Poly;
use qde_core::series::ZSeries;
use qde_core::stab::stab_matrix;
use qde_core::young::{
    admissible_trees, is_rpp, partitions, rpp_enumerate, Alcove, Partition, Polarization,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=17).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

fn qfunc() -> impl Strategy<Value = QFunc> {
    let poly = || prop::collection::vec(small_rat(), 1..4).prop_map(Poly::new);
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| QFunc::new(n, d))
}

fn series(order: usize) -> impl Strategy<Value = ZSeries<Rat>> {
    prop::collection::vec(small_rat(), order + 1).prop_map(move |c| ZSeries::from_coeffs(c, order))
}

fn generic_params() -> impl Strategy<Value = Params<Rat>> {
    (
        2i64..=9,
        2i64..=9,
        11i64..=19,
        2i64..=9,
        2i64..=9,
        21i64..=29,
    )
        .prop_filter("distinct", |(a, _, b, _, _, _)| a != b)
        .prop_map(|(a1, b1, a2, b2, c1, c2)| {
            Params::new(rat(a1, a2), rat(b1 + 13, b2 + 3), rat(c1, c2))
        })
        .prop_filter("generic", |p| {
            let (t1, t2) = (p.t1(), p.t2());
            (-4..=4).all(|i: i64| {
                (-4..=4).all(|j: i64| (i, j) == (0, 0) || t1.powi(i) * t2.powi(j) != rat(1, 1))
            })
        })
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!((a.clone() + b) + c, a.clone() + &(b.clone() + c));
    assert_eq!((a.clone() * b) * c, a.clone() * &(b.clone() * c));
    assert_eq!(
        a.clone() * &(b.clone() + c),
        a.clone() * b + &(a.clone() * c)
    );
    assert_eq!(a.clone() + b, b.clone() + a);
    assert_eq!(a.clone() - a, F::zero());
    if !a.is_zero() {
        assert_eq!(a.clone() * &a.inv(), F::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_function_field_axioms(a in qfunc(), b in qfunc(), c in qfunc()) {
        field_axioms(&a, &b, &c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zshift_is_a_ring_homomorphism(a in series(4), b in series(4), m in -3i64..=3, qh in nonzero_rat()) {
        prop_assert_eq!((&a * &b).zshift(m, &qh), &a.zshift(m, &qh) * &b.zshift(m, &qh));
        prop_assert_eq!((&a + &b).zshift(m, &qh), &a.zshift(m, &qh) + &b.zshift(m, &qh));
        prop_assert_eq!(a.zshift(m, &qh).zshift(-m, &qh), a);
    }

    #[test]
    fn series_inverse(a in series(5), c0 in nonzero_rat()) {
        let mut a = a;
        *a.coeff_mut(0) = c0;
        prop_assert_eq!(&a * &a.try_inv().unwrap(), ZSeries::one(5));
    }

    #[test]
    fn ahat_is_odd_and_lambda_is_multiplicative(
        p in generic_params(),
        ea in -3i64..=3, eb in -3i64..=3, fa in -3i64..=3, fb in -3i64..=3,
    ) {
        let x = HalfMonomial::new(2 * ea, 2 * eb, 0);
        let y = HalfMonomial::new(2 * fa, 2 * fb, 0);
        prop_assert_eq!(ahat(&x.inv(), &p).unwrap(), -ahat(&x, &p).unwrap());
        let cx = SignedClass { plus: vec![x.clone()], minus: vec![] };
        let cy = SignedClass { plus: vec![y.clone()], minus: vec![] };
        let both = SignedClass { plus: vec![x, y], minus: vec![] };
        prop_assert_eq!(lambda_bullet(&both, &p).unwrap(), lambda_bullet(&cx, &p).unwrap() * lambda_bullet(&cy, &p).unwrap());
    }

    #[test]
    fn interpolation_roundtrip(c in prop::collection::vec(small_rat(), 1..6)) {
        let p = Poly::new(c);
        let xs: Vec<Rat> = (0..6).map(|k| rat(k + 1, 3)).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(Poly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn bethe_truncation_coherence(p in generic_params(), k in 0usize..3) {
        let mu = &partitions(2)[k % 2];
        let lo = bethe_solve(&p, mu, 1).unwrap();
        let hi = bethe_solve(&p, mu, 2).unwrap();
        for (a, b) in lo.x.iter().zip(&hi.x) {
            prop_assert_eq!(a, &b.truncate(1));
        }
        prop_assert!(bethe_residual(&p, &hi.x).unwrap().iter().all(|r| r.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn stab_depends_only_on_the_alcove(p in generic_params(), n in 1usize..=3, k in 1i64..=5, pol in prop::bool::ANY) {
        let pol = if pol { Polarization::Std } else { Polarization::Opp };
        let a = Alcove::containing(n, &rat(-1, 2 * n as i64)).unwrap();
        let width = a.hi.clone() - &a.lo;
        let s = a.lo.clone() + width * rat(k, 7);
        prop_assert_eq!(stab_matrix(&p, n, &s, pol).unwrap(), stab_matrix(&p, n, &a.slope(), pol).unwrap());
    }
}

fn squares(lam: &Partition) -> u32 {
    let bs = lam.boxes();
    let contents: std::collections::BTreeSet<i64> = bs.iter().map(|b| b.content()).collect();
    (bs.len() - contents.len()) as u32
}

#[test]
fn tree_counts_up_to_eight() {
    for n in 1..=8 {
        for lam in partitions(n) {
            let ts = admissible_trees(&lam);
            assert_eq!(ts.len(), 1 << squares(&lam), "{lam}");
            assert!(ts.iter().all(|t| t.edges.len() == n - 1), "{lam}");
        }
    }
}

#[test]
fn rpp_matches_brute_force() {
    for n in 1..=4 {
        for lam in partitions(n) {
            for max in 0..=3usize {
                let mut brute = Vec::new();
                let total = (max + 1).pow(n as u32);
                for code in 0..total {
                    let d: Vec<usize> = (0..n)
                        .map(|i| code / (max + 1).pow(i as u32) % (max + 1))
                        .collect();
                    if d.iter().sum::<usize>() <= max && is_rpp(&lam, &d) {
                        brute.push(d);
                    }
                }
                brute.sort();
                let mut got = rpp_enumerate(&lam, max);
                got.sort();
                assert_eq!(got, brute, "{lam} D={max}");
            }
        }
    }
}

#[test]
fn rho_tracks_content_and_height() {
    for n in 1..=6 {
        for lam in partitions(n) {
            let bs = lam.boxes();
            for b in &bs {
                let r = b.rho();
                assert_eq!(r.main, rat(b.content(), 1));
                assert_eq!(r.eps, rat(-b.height(), 2));
            }
            let mut rs: Vec<_> = bs.iter().map(|b| b.rho()).collect();
            rs.sort();
            rs.dedup();
            assert_eq!(rs.len(), bs.len(), "{lam}");
        }
    }
}
