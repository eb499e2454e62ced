//! Parameter specialisations and torus-weight monomials.
//!
//! Everything downstream works over a field `F` holding `t1^{1/2}`, `t2^{1/2}`
//! and `Q = q^{1/2}`. Numeric draws put all three in `Rat`; the symbolic
//! specialisations keep one of them as the variable of a rational function field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{fmt_rat, parse_rat, rat, Field, Rat};
use crate::ratfunc::RatFunc;

pub type QFunc = RatFunc<Rat>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Numeric,
    SymbolicA,
}

pub(crate) mod rat_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// A reproducible parameter draw.
///
/// In `SymbolicA` mode `t1^{1/2} = a·h` and `t2^{1/2} = h/a` with `a` symbolic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub mode: Mode,
    #[serde(with = "rat_str")]
    pub t1h: Rat,
    #[serde(with = "rat_str")]
    pub t2h: Rat,
    #[serde(with = "rat_str")]
    pub h: Rat,
    #[serde(with = "rat_str")]
    pub u: Rat,
    /// Value of `q^{1/2}` used when a computation runs with numeric `q`.
    #[serde(with = "rat_str")]
    pub qh: Rat,
    pub seed: u64,
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-29..=29);
        let d: i64 = rng.gen_range(2..=31);
        let r = rat(n, d);
        if r.numer().abs() > BigInt::one() && !r.denom().is_one() {
            return r;
        }
    }
}

impl ParamSpec {
    pub fn new(t1h: Rat, t2h: Rat, qh: Rat) -> Result<Self> {
        let p = ParamSpec {
            mode: Mode::Numeric,
            h: t1h.clone() * &t2h,
            t1h,
            t2h,
            u: Rat::one(),
            qh,
            seed: 0,
        };
        p.check()?;
        Ok(p)
    }

    /// Deterministic draw from `seed`, screened for genericity.
    pub fn draw(seed: u64, mode: Mode) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let t1h = random_rat(&mut rng);
            let t2h = random_rat(&mut rng);
            let h = random_rat(&mut rng);
            let qh = random_rat(&mut rng);
            let p = ParamSpec {
                mode,
                t1h,
                t2h,
                h,
                u: Rat::one(),
                qh,
                seed,
            };
            if p.check().is_ok() {
                return p;
            }
        }
    }

    /// Genericity screen: no `t1^i t2^j` with `(i,j) ≠ 0`, `|i|,|j| ≤ 8` equals one,
    /// and `q` is not a small power of such a monomial.
    pub fn check(&self) -> Result<()> {
        let one = Rat::one();
        if self.t1h.is_zero() || self.t2h.is_zero() || self.h.is_zero() || self.qh.is_zero() {
            return Err(Error::NonGeneric("zero parameter".into()));
        }
        if self.t1h == self.t2h {
            return Err(Error::NonGeneric("t1h = t2h".into()));
        }
        let (t1, t2) = (self.t1h.clone() * &self.t1h, self.t2h.clone() * &self.t2h);
        let q = self.qh.clone() * &self.qh;
        for i in -8i64..=8 {
            for j in -8i64..=8 {
                let m = t1.powi(i) * t2.powi(j);
                if (i, j) != (0, 0) && m == one {
                    return Err(Error::NonGeneric(format!("t1^{i} t2^{j} = 1")));
                }
                for k in 1..=6 {
                    if q.powi(k) == m {
                        return Err(Error::NonGeneric(format!("q^{k} = t1^{i} t2^{j}")));
                    }
                }
            }
        }
        if self.mode == Mode::SymbolicA {
            let hb = self.h.clone().powi(4);
            for k in 1..=8 {
                if hb.powi(k) == one {
                    return Err(Error::NonGeneric("hbar is a root of unity".into()));
                }
            }
        }
        Ok(())
    }

    /// All of `t1h, t2h, Q` rational.
    pub fn numeric(&self) -> Params<Rat> {
        Params::new(self.t1h.clone(), self.t2h.clone(), self.qh.clone())
    }

    /// Rational `t1h, t2h` with `q = 1`.
    pub fn at_q_one(&self) -> Params<Rat> {
        Params::new(self.t1h.clone(), self.t2h.clone(), Rat::one())
    }

    /// Rational `t1h, t2h`; `Q` the variable of `Q(Q)`.
    pub fn symbolic_q(&self) -> Params<QFunc> {
        Params::new(
            QFunc::constant(self.t1h.clone()),
            QFunc::constant(self.t2h.clone()),
            QFunc::var(),
        )
    }

    /// `t1h = a h`, `t2h = h/a` at a rational `a`; `Q` fixed to `qh`.
    pub fn at_a(&self, a: &Rat) -> Params<Rat> {
        Params::new(a.clone() * &self.h, self.h.clone() / a, self.qh.clone())
    }
}

/// Square roots of the equivariant parameters inside a field.
#[derive(Clone, Debug)]
pub struct Params<F> {
    pub t1h: F,
    pub t2h: F,
    pub qh: F,
}

impl<F: Field> Params<F> {
    pub fn new(t1h: F, t2h: F, qh: F) -> Self {
        Params { t1h, t2h, qh }
    }

    /// `t1^{a/2} t2^{b/2} q^{g/2}`.
    pub fn mono(&self, a: i64, b: i64, g: i64) -> F {
        let mut r = F::one();
        if a != 0 {
            r = r * self.t1h.powi(a);
        }
        if b != 0 {
            r = r * self.t2h.powi(b);
        }
        if g != 0 {
            r = r * self.qh.powi(g);
        }
        r
    }

    pub fn t1(&self) -> F {
        self.t1h.clone() * &self.t1h
    }

    pub fn t2(&self) -> F {
        self.t2h.clone() * &self.t2h
    }

    pub fn q(&self) -> F {
        self.qh.clone() * &self.qh
    }

    /// `ħ^{1/2} = (t1 t2)^{1/2}`.
    pub fn hbh(&self) -> F {
        self.t1h.clone() * &self.t2h
    }

    pub fn hbar(&self) -> F {
        self.hbh().powi(2)
    }
}

/// `t1^{a/2} t2^{b/2} q^{g/2}` with a rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfMonomial {
    pub a: i64,
    pub b: i64,
    pub g: i64,
    pub coef: Rat,
}

impl HalfMonomial {
    pub fn new(a: i64, b: i64, g: i64) -> Self {
        HalfMonomial {
            a,
            b,
            g,
            coef: Rat::one(),
        }
    }

    pub fn one() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        HalfMonomial {
            a: self.a + o.a,
            b: self.b + o.b,
            g: self.g + o.g,
            coef: self.coef.clone() * &o.coef,
        }
    }

    pub fn inv(&self) -> Self {
        HalfMonomial {
            a: -self.a,
            b: -self.b,
            g: -self.g,
            coef: self.coef.inv(),
        }
    }

    pub fn eval<F: Field>(&self, p: &Params<F>) -> F {
        p.mono(self.a, self.b, self.g) * F::from_rat(&self.coef)
    }

    /// Square root, defined when all half-exponents are even and the coefficient is 1.
    pub fn sqrt(&self) -> Result<HalfMonomial> {
        if self.a % 2 != 0 || self.b % 2 != 0 || self.g % 2 != 0 || !self.coef.is_one() {
            return Err(Error::Invalid(format!(
                "no monomial square root of {self:?}"
            )));
        }
        Ok(HalfMonomial::new(self.a / 2, self.b / 2, self.g / 2))
    }
}

/// `â(x) = x^{1/2} − x^{−1/2}` given `x^{1/2}`.
pub fn ahat_of_sqrt<F: Field>(xh: &F) -> F {
    xh.clone() - xh.inv()
}

/// `â(m)` for a monomial with integral exponents.
pub fn ahat<F: Field>(m: &HalfMonomial, p: &Params<F>) -> Result<F> {
    Ok(ahat_of_sqrt(&m.sqrt()?.eval(p)))
}

/// A signed sum of monomials: `plus − minus`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SignedClass {
    pub plus: Vec<HalfMonomial>,
    pub minus: Vec<HalfMonomial>,
}

/// `Λ•(Σ x_i − Σ y_j) = ∏(1 − x_i) / ∏(1 − y_j)`.
pub fn lambda_bullet<F: Field>(cls: &SignedClass, p: &Params<F>) -> Result<F> {
    let mut r = F::one();
    for x in &cls.plus {
        r = r * (F::one() - x.eval(p));
    }
    for y in &cls.minus {
        let f = F::one() - y.eval(p);
        if f.is_zero() {
            return Err(Error::NonGeneric(format!("Λ• pole at {y:?}")));
        }
        r = r / f;
    }
    Ok(r)
}

/// `â` extended multiplicatively to signed classes.
pub fn ahat_class<F: Field>(cls: &SignedClass, p: &Params<F>) -> Result<F> {
    let mut r = F::one();
    for x in &cls.plus {
        r = r * ahat(x, p)?;
    }
    for y in &cls.minus {
        let f = ahat(y, p)?;
        if f.is_zero() {
            return Err(Error::NonGeneric(format!("â pole at {y:?}")));
        }
        r = r / f;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p23() -> Params<Rat> {
        Params::new(rat(2, 1), rat(3, 1), rat(5, 7))
    }

    #[test]
    fn monomial_examples() {
        let p = p23();
        assert_eq!(HalfMonomial::new(2, 0, 0).eval(&p), rat(4, 1));
        assert_eq!(HalfMonomial::new(0, 0, 1).eval(&p), rat(5, 7));
        assert_eq!(
            HalfMonomial::new(1, 1, -2).eval(&p),
            rat(6, 1) / (rat(5, 7) * rat(5, 7))
        );
    }

    #[test]
    fn ahat_examples() {
        let p = p23();
        assert_eq!(ahat(&HalfMonomial::new(2, 0, 0), &p).unwrap(), rat(3, 2));
        let m = HalfMonomial::new(2, -4, 2);
        assert_eq!(ahat(&m.inv(), &p).unwrap(), -ahat(&m, &p).unwrap());
        assert!(ahat(&HalfMonomial::new(1, 0, 0), &p).is_err());
        let ps = ParamSpec::draw(1, Mode::Numeric).symbolic_q();
        let aq = ahat(&HalfMonomial::new(0, 0, 2), &ps).unwrap();
        assert_eq!(aq, QFunc::var() - QFunc::var().inv());
    }

    #[test]
    fn lambda_examples() {
        let p = p23();
        let c = SignedClass {
            plus: vec![HalfMonomial::new(2, 0, 0), HalfMonomial::new(0, 2, 0)],
            minus: vec![],
        };
        assert_eq!(lambda_bullet(&c, &p).unwrap(), rat(24, 1));
        let c = SignedClass {
            plus: vec![],
            minus: vec![HalfMonomial::new(2, 0, 0)],
        };
        assert_eq!(lambda_bullet(&c, &p).unwrap(), rat(-1, 3));
        assert_eq!(
            lambda_bullet(&SignedClass::default(), &p).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn draws_are_deterministic_and_generic() {
        let a = ParamSpec::draw(7, Mode::Numeric);
        assert_eq!(a, ParamSpec::draw(7, Mode::Numeric));
        assert!(a.check().is_ok());
        assert_ne!(a, ParamSpec::draw(8, Mode::Numeric));
    }
}
