//! Dense univariate polynomials over a field.

use crate::field::Field;

/// Coefficients in ascending order, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: F) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Poly {
            c: vec![F::zero(), F::one()],
        }
    }

    pub fn monomial(a: F, k: usize) -> Self {
        let mut c = vec![F::zero(); k];
        c.push(a);
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lowest power with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(c)
    }

    pub fn neg(&self) -> Self {
        Poly {
            c: self.c.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * a).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lead = d.c[dd].inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].clone() * &inv_lead;
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - coef.clone() * b;
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// The polynomial of degree `< xs.len()` through the points `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[F], ys: &[F]) -> Self {
        // Newton divided differences, then expansion in the monomial basis.
        let m = xs.len();
        let mut dd = ys.to_vec();
        for k in 1..m {
            for i in (k..m).rev() {
                dd[i] = (dd[i].clone() - &dd[i - 1]) / (xs[i].clone() - &xs[i - k]);
            }
        }
        let mut acc = Self::zero();
        for i in (0..m).rev() {
            acc = acc
                .mul(&Self::new(vec![-xs[i].clone(), F::one()]))
                .add(&Self::constant(dd[i].clone()));
        }
        acc
    }

    /// Divide by `x^k`, assuming the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        Poly {
            c: self.c.iter().skip(k).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};

    fn p(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn divrem_exact() {
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_monic() {
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 3]));
        let b = p(&[-2, 2]).mul(&p(&[5, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, 0, -2, 5]);
        let xs: Vec<Rat> = (1..=4).map(|k| rat(k, 3)).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), f);
    }
}
