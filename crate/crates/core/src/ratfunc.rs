//! Univariate rational functions in canonical form.
//!
//! Numerator and denominator are coprime and the denominator is monic, so
//! structural equality is equality of functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::{Field, Rat};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

/// Where to take a limit of the variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitDir {
    ToZero,
    ToInfinity,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let l = den.lead().unwrap().inv();
            return RatFunc {
                num: num.scale(&l),
                den: Poly::constant(F::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let l = den.lead().unwrap().inv();
        RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(F::one()),
        }
    }

    pub fn constant(a: F) -> Self {
        Self::from_poly(Poly::constant(a))
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Order of vanishing at 0 (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? as i64 - self.den.valuation().unwrap() as i64)
    }

    /// deg(num) − deg(den); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Leading coefficient of the expansion at 0.
    pub fn low_coeff(&self) -> Option<F> {
        let a = &self.num.coeffs()[self.num.valuation()?];
        let b = &self.den.coeffs()[self.den.valuation().unwrap()];
        Some(a.clone() / b)
    }

    /// Leading coefficient of the expansion at infinity.
    pub fn high_coeff(&self) -> Option<F> {
        Some(self.num.lead()?.clone() / self.den.lead().unwrap())
    }

    /// Limit of `var^shift * self`, where `shift` may be rational.
    /// Returns `None` when the limit is infinite.
    pub fn limit_shifted(&self, dir: LimitDir, shift: &Rat) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        let (order, lead) = match dir {
            LimitDir::ToZero => (
                Rat::from_integer(self.valuation().unwrap().into()) + shift,
                self.low_coeff(),
            ),
            LimitDir::ToInfinity => (
                -(Rat::from_integer(self.degree().unwrap().into()) + shift),
                self.high_coeff(),
            ),
        };
        if order < Rat::zero() {
            None
        } else if order.is_zero() {
            lead
        } else {
            Some(F::zero())
        }
    }

    pub fn limit(&self, dir: LimitDir) -> Option<F> {
        self.limit_shifted(dir, &Rat::zero())
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_poly() && o.is_poly() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::constant(F::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<F: Field> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, o: RatFunc<F>) -> RatFunc<F> {
                $body(&self, &o)
            }
        }
        impl<'a, F: Field> $tr<&'a RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, o: &'a RatFunc<F>) -> RatFunc<F> {
                $body(&self, o)
            }
        }
    };
}

binop!(Add, add, |a: &RatFunc<F>, b: &RatFunc<F>| a.add_ref(b));
binop!(Sub, sub, |a: &RatFunc<F>, b: &RatFunc<F>| a
    .add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &RatFunc<F>, b: &RatFunc<F>| a.mul_ref(b));
binop!(Div, div, |a: &RatFunc<F>, b: &RatFunc<F>| a
    .mul_ref(&b.recip()));

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        self.neg_ref()
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
    fn as_rat(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.num.degree() == Some(0) && self.den.degree() == Some(0) {
            self.num.lead()?.as_rat()
        } else {
            None
        }
    }
}

fn fmt_poly<F: Field>(p: &Poly<F>, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let cs = match c.as_rat() {
            Some(r) => crate::field::fmt_rat(&r),
            None => format!("{c:?}"),
        };
        match k {
            0 => write!(f, "{cs}")?,
            1 => write!(f, "({cs})*{var}")?,
            _ => write!(f, "({cs})*{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_poly(&self.num, "Q", f);
        }
        write!(f, "(")?;
        fmt_poly(&self.num, "Q", f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, "Q", f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    type K = RatFunc<Rat>;

    fn q() -> K {
        K::var()
    }
    fn c(n: i64) -> K {
        K::from_int(n)
    }

    #[test]
    fn reduces_by_gcd() {
        let e = (q() * q() - c(1)) / (q() - c(1));
        assert_eq!(e, q() + c(1));
        assert!(e.is_poly());
    }

    #[test]
    fn limits() {
        let e = c(1) / (c(1) - q() * q() * c(3));
        assert_eq!(e.limit(LimitDir::ToZero), Some(rat(1, 1)));
        assert_eq!(q().limit(LimitDir::ToInfinity), None);
        let e = (q() * q() + c(1)) / (q() * q());
        assert_eq!(e.limit(LimitDir::ToInfinity), Some(rat(1, 1)));
        assert_eq!(e.limit(LimitDir::ToZero), None);
        assert_eq!(q().limit_shifted(LimitDir::ToZero, &rat(-3, 2)), None);
        assert_eq!(
            q().limit_shifted(LimitDir::ToZero, &rat(-1, 2)),
            Some(rat(0, 1))
        );
        assert_eq!(
            q().limit_shifted(LimitDir::ToZero, &rat(-1, 1)),
            Some(rat(1, 1))
        );
    }

    #[test]
    fn denominator_is_monic() {
        let e = c(2) / (q() * c(4) + c(2));
        assert!(e.den().lead().unwrap().is_one());
        assert_eq!(e.eval(&rat(1, 1)), Some(rat(1, 3)));
    }
}
