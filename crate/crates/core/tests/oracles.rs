//! Closed-form values and small-case identities across the pipeline.

use num_traits::{One, Zero};
use qde_core::field::{rat, Field, Rat};
use qde_core::params::{lambda_bullet, HalfMonomial, Mode, ParamSpec, Params, QFunc, SignedClass};
use qde_core::poly::Poly;
use qde_core::qde::{adjacent_residual, verify_qde};
use qde_core::ratfunc::LimitDir;
use qde_core::stab::{diagonal_oracle, stab_matrix};
use qde_core::vertex::{limit_report, psi_matrix};
use qde_core::young::{partitions, walls_in, Alcove, Partition, Polarization, Wall};

fn params() -> Params<Rat> {
    Params::new(rat(2, 9), rat(7, 5), rat(3, 11))
}

fn q() -> QFunc {
    QFunc::var()
}

#[test]
fn rational_functions_reduce() {
    let one = QFunc::one();
    let a = (q() - &one) * &(q() + &one);
    assert_eq!(a, q() * &q() - &one);
    assert_eq!(a.clone() / &a, one);
    assert_eq!((q() * &q() - &one) / &(q() - &one), q() + &one);
}

#[test]
fn rational_function_limits() {
    let one = QFunc::one();
    let c = QFunc::constant(rat(5, 3));
    let e = one.clone() / &(one.clone() - &(q() * &q() * &c));
    assert_eq!(e.limit(LimitDir::ToZero), Some(rat(1, 1)));
    assert_eq!(q().limit(LimitDir::ToInfinity), None);
    let e = (q() * &q() + &one) / &(q() * &q());
    assert_eq!(e.limit(LimitDir::ToInfinity), Some(rat(1, 1)));
    assert_eq!(
        QFunc::new(
            Poly::new(vec![rat(1, 1)]),
            Poly::new(vec![rat(0, 1), rat(2, 1)])
        )
        .limit(LimitDir::ToZero),
        None
    );
}

#[test]
fn lambda_bullet_examples() {
    let p = Params::new(rat(2, 1), rat(3, 1), rat(1, 2));
    let t = SignedClass {
        plus: vec![HalfMonomial::new(2, 0, 0), HalfMonomial::new(0, 2, 0)],
        minus: vec![],
    };
    assert_eq!(lambda_bullet(&t, &p).unwrap(), rat(24, 1));
    let y = HalfMonomial::new(2, 2, 0);
    let neg = SignedClass {
        plus: vec![],
        minus: vec![y.clone()],
    };
    assert_eq!(
        lambda_bullet(&neg, &p).unwrap(),
        (Rat::one() - y.eval(&p)).inv()
    );
    assert_eq!(
        lambda_bullet(&SignedClass::default(), &p).unwrap(),
        Rat::one()
    );
}

#[test]
fn integer_walls_for_one_point() {
    let ws = walls_in(1, &rat(-3, 1), &rat(3, 1));
    assert!(ws.iter().all(|w| w.value().is_integer()));
    assert_eq!(ws.len(), 6);
    let a = Alcove::containing(1, &rat(-1, 2)).unwrap();
    assert_eq!(a.window().len(), 1);
}

#[test]
fn stab_diagonal_and_support() {
    let p = params();
    for pol in [Polarization::Std, Polarization::Opp] {
        let m = stab_matrix(&p, 1, &rat(-1, 2), pol).unwrap();
        assert_eq!(
            m[(0, 0)],
            diagonal_oracle(&p, &Partition::new(vec![1]), pol).unwrap()
        );
        for s in [rat(-1, 4), rat(1, 4), rat(7, 4)] {
            let m = stab_matrix(&p, 2, &s, pol).unwrap();
            assert!(!m[(0, 0)].is_zero() && !m[(1, 1)].is_zero());
            assert_eq!(
                [m[(0, 1)].is_zero(), m[(1, 0)].is_zero()]
                    .iter()
                    .filter(|&&z| z)
                    .count(),
                1
            );
            for (i, lam) in partitions(2).iter().enumerate() {
                assert_eq!(m[(i, i)], diagonal_oracle(&p, lam, pol).unwrap());
            }
        }
    }
}

#[test]
fn qde_holds_for_small_n() {
    let p = params();
    for n in 1..=2usize {
        for s in [
            rat(-1, 2 * n as i64),
            rat(1, 2 * n as i64),
            rat(-5, 2 * n as i64) - rat(2, 1),
        ] {
            let a = Alcove::containing(n, &s).unwrap();
            let o = verify_qde(&p, &a, 3).unwrap();
            assert!(o.residual.is_zero(), "n={n} alcove {a}");
            assert!(o.cx_is_one());
        }
    }
}

#[test]
fn one_point_wall_crossing_is_trivial_at_zero() {
    let r = adjacent_residual(&params(), 1, &Wall::from_rat(&Rat::zero()), 2).unwrap();
    assert!(r.is_zero());
    let r = adjacent_residual(&params(), 2, &Wall::from_rat(&rat(-1, 2)), 0).unwrap();
    assert!(r.is_zero());
}

#[test]
fn one_point_limits() {
    let ps = ParamSpec::draw(1, Mode::Numeric);
    let a = Alcove::containing(1, &rat(-1, 2)).unwrap();
    let psi = psi_matrix(&ps.symbolic_q(), &a, 2).unwrap();
    let rep = limit_report(&psi.series, &a.lo);
    assert!(rep.infinite_at_zero.is_empty());
    assert!(rep.identity_at_infinity);
}
