//! Truncated power series in `z` and Laurent series with tracked precision.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Power series truncated after `z^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeries<F> {
    c: Vec<F>,
}

impl<F: Field> ZSeries<F> {
    pub fn zero(order: usize) -> Self {
        ZSeries {
            c: vec![F::zero(); order + 1],
        }
    }

    pub fn constant(a: F, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[0] = a;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(F::one(), order)
    }

    /// Pads or truncates `c` to `order + 1` coefficients.
    pub fn from_coeffs(mut c: Vec<F>, order: usize) -> Self {
        c.resize(order + 1, F::zero());
        ZSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.c[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut F {
        &mut self.c[k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// First order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, a: &F) -> Self {
        ZSeries {
            c: self.c.iter().map(|x| x.clone() * a).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.c.clone(), order)
    }

    /// `z ↦ z q^m` with `q = qh^2`: the `z^k` coefficient gains `qh^{2mk}`.
    pub fn zshift(&self, m: i64, qh: &F) -> Self {
        let step = qh.powi(2 * m);
        let mut f = F::one();
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.clone() * &f);
            f = f * &step;
        }
        ZSeries { c }
    }

    pub fn try_inv(&self) -> Result<Self> {
        let c0 = self.c[0].try_inv()?;
        let n = self.c.len();
        let mut d: Vec<F> = Vec::with_capacity(n);
        d.push(c0.clone());
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k {
                s = s + self.c[j].clone() * &d[k - j];
            }
            d.push(-(s * &c0));
        }
        Ok(ZSeries { c: d })
    }

    /// Square root with prescribed constant term `r0` (`r0^2 = c_0`).
    pub fn sqrt_with(&self, r0: F) -> Self {
        debug_assert!(r0.clone() * &r0 == self.c[0]);
        let n = self.c.len();
        let two_r0_inv = (r0.clone() + &r0).inv();
        let mut r: Vec<F> = vec![r0];
        for k in 1..n {
            let mut s = self.c[k].clone();
            for j in 1..k {
                s = s - r[j].clone() * &r[k - j];
            }
            r.push(s * &two_r0_inv);
        }
        ZSeries { c: r }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![F::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + a.clone() * b;
                }
            }
        }
        ZSeries { c }
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let n = self.c.len().min(o.c.len());
        ZSeries {
            c: (0..n).map(|k| f(&self.c[k], &o.c[k])).collect(),
        }
    }
}

impl<F: Field> Add for &ZSeries<F> {
    type Output = ZSeries<F>;
    fn add(self, o: &ZSeries<F>) -> ZSeries<F> {
        self.zip(o, |a, b| a.clone() + b)
    }
}

impl<F: Field> Sub for &ZSeries<F> {
    type Output = ZSeries<F>;
    fn sub(self, o: &ZSeries<F>) -> ZSeries<F> {
        self.zip(o, |a, b| a.clone() - b)
    }
}

impl<F: Field> Mul for &ZSeries<F> {
    type Output = ZSeries<F>;
    fn mul(self, o: &ZSeries<F>) -> ZSeries<F> {
        self.mul_ref(o)
    }
}

/// Laurent series known exactly below the absolute order `prec`.
#[derive(Clone, Debug)]
pub struct Laurent<F> {
    val: i64,
    c: Vec<F>,
    prec: i64,
}

impl<F: Field> Laurent<F> {
    /// Series with coefficients `c` starting at `val`, known below `prec`.
    pub fn new(val: i64, mut c: Vec<F>, prec: i64) -> Self {
        c.truncate((prec - val).max(0) as usize);
        let mut s = Laurent { val, c, prec };
        s.normalize();
        s
    }

    /// The constant `a`, known to relative order `rel`.
    pub fn constant(a: F, rel: i64) -> Self {
        Self::new(0, vec![a], rel)
    }

    /// `(1 + t)^k` to relative order `rel`.
    pub fn binomial(k: i64, rel: i64) -> Self {
        let mut c = Vec::with_capacity(rel as usize);
        let mut cur = F::one();
        c.push(cur.clone());
        for r in 1..rel {
            cur = cur * F::from_int(k - r + 1) / F::from_int(r);
            c.push(cur.clone());
        }
        Laurent {
            val: 0,
            c,
            prec: rel,
        }
    }

    pub fn from_zseries(s: &ZSeries<F>) -> Self {
        Self::new(0, s.coeffs().to_vec(), s.order() as i64 + 1)
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    fn normalize(&mut self) {
        let k = self
            .c
            .iter()
            .position(|x| !x.is_zero())
            .unwrap_or(self.c.len());
        if k == self.c.len() {
            self.c.clear();
            self.val = self.prec;
        } else if k > 0 {
            self.c.drain(..k);
            self.val += k as i64;
        }
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> Result<F> {
        if e >= self.prec {
            return Err(Error::Precision {
                known: self.prec,
                needed: e + 1,
            });
        }
        if e < self.val {
            return Ok(F::zero());
        }
        Ok(self
            .c
            .get((e - self.val) as usize)
            .cloned()
            .unwrap_or_else(F::zero))
    }

    /// Coefficients of `t^0 .. t^order`, failing if any is unknown.
    pub fn to_zseries(&self, order: usize) -> Result<ZSeries<F>> {
        if self.val < 0 {
            return Err(Error::Invalid(format!("pole of order {} at 0", -self.val)));
        }
        let c = (0..=order as i64)
            .map(|e| self.coeff(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZSeries::from_coeffs(c, order))
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Laurent {
                val: self.prec,
                c: Vec::new(),
                prec: self.prec,
            };
        }
        Laurent {
            val: self.val,
            c: self.c.iter().map(|x| x.clone() * a).collect(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Laurent {
            val: self.val,
            c: self.c.iter().map(|x| -x.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let val = self.val.min(o.val);
        let prec = self.prec.min(o.prec);
        let n = (prec - val).max(0) as usize;
        let mut c = vec![F::zero(); n];
        for s in [self, o] {
            for (i, x) in s.c.iter().enumerate() {
                let k = s.val - val + i as i64;
                if k < n as i64 {
                    c[k as usize] = c[k as usize].clone() + x;
                }
            }
        }
        Self::new(val, c, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let val = self.val + o.val;
        let prec = (self.val + o.prec).min(o.val + self.prec);
        let n = (prec - val).max(0) as usize;
        let mut c = vec![F::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b;
            }
        }
        Self::new(val, c, prec)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.c.is_empty() {
            return Err(Error::Precision {
                known: self.prec,
                needed: self.prec + 1,
            });
        }
        let rel = self.prec - self.val;
        let c0 = self.c[0].inv();
        let mut d: Vec<F> = Vec::with_capacity(rel as usize);
        d.push(c0.clone());
        for k in 1..rel as usize {
            let mut s = F::zero();
            for j in 1..=k.min(self.c.len() - 1) {
                s = s + self.c[j].clone() * &d[k - j];
            }
            d.push(-(s * &c0));
        }
        Ok(Laurent {
            val: -self.val,
            c: d,
            prec: -self.val + rel,
        })
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap_or_else(|| Laurent::constant(F::one(), self.prec - self.val)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};

    fn zs(v: &[i64]) -> ZSeries<Rat> {
        ZSeries::from_coeffs(v.iter().map(|&x| rat(x, 1)).collect(), v.len() - 1)
    }

    #[test]
    fn inverse_of_one_minus_z() {
        let s = zs(&[1, -1, 0, 0]);
        assert_eq!(s.try_inv().unwrap(), zs(&[1, 1, 1, 1]));
    }

    #[test]
    fn sqrt_squares_back() {
        let s = zs(&[4, 3, -2, 7]);
        let r = s.sqrt_with(rat(2, 1));
        assert_eq!(&r * &r, s);
    }

    #[test]
    fn zshift_examples() {
        let s = zs(&[1, 5]);
        let q = rat(3, 1);
        assert_eq!(s.zshift(1, &q), zs(&[1, 45]));
        assert_eq!(s.zshift(1, &q).zshift(-1, &q), s);
    }

    #[test]
    fn laurent_pole_cancellation() {
        // ((1+t)^2 - 1) / t = 2 + t
        let x = Laurent::<Rat>::binomial(2, 6).sub(&Laurent::constant(rat(1, 1), 6));
        assert_eq!(x.valuation(), 1);
        let t = Laurent::new(1, vec![rat(1, 1)], 7);
        let y = x.mul(&t.inv().unwrap());
        assert_eq!(y.coeff(0).unwrap(), rat(2, 1));
        assert_eq!(y.coeff(1).unwrap(), rat(1, 1));
        assert_eq!(y.coeff(2).unwrap(), rat(0, 1));
    }

    #[test]
    fn precision_is_tracked() {
        let x = Laurent::<Rat>::binomial(1, 3).sub(&Laurent::constant(rat(1, 1), 3));
        // 1 + t - 1 known below t^3, so after dividing by t^2 only t^{-1}, t^0 are known.
        let t2 = Laurent::new(2, vec![rat(1, 1)], 5);
        let y = x.mul(&t2.inv().unwrap());
        assert!(y.coeff(0).is_ok());
        assert!(y.coeff(1).is_err());
    }
}
