//! Fock space `Q[p_1, p_2, …]` truncated at a maximal degree: power-sum bases,
//! Macdonald polynomials, and the horizontal and vertical generators.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::Field;
use crate::linalg::Mat;
use crate::young::{partitions, Partition};

/// `x^{k/2} − x^{−k/2}` given `x^{1/2}`.
pub fn ahat_pow<F: Field>(xh: &F, k: i64) -> F {
    xh.powi(k) - xh.powi(-k)
}

/// An operator of fixed degree shift: source grade `g` maps to `g − shift`.
/// A block is stored for every source grade where it is defined; targets
/// below zero are represented by matrices with no rows.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOp<F> {
    pub shift: i64,
    pub blocks: BTreeMap<usize, Mat<F>>,
}

impl<F: Field> GradedOp<F> {
    pub fn block(&self, g: usize) -> Option<&Mat<F>> {
        self.blocks.get(&g)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self, fock: &Fock<F>) -> Self {
        let n = fock.max_grade() as i64;
        let mut blocks = BTreeMap::new();
        for g in 0..=n {
            let t = g - o.shift;
            let u = t - self.shift;
            if u > n || t > n {
                continue;
            }
            if t < 0 || u < 0 {
                blocks.insert(
                    g as usize,
                    Mat::zeros(fock.dim_signed(u), fock.dim(g as usize)),
                );
                continue;
            }
            if let (Some(b), Some(a)) =
                (o.blocks.get(&(g as usize)), self.blocks.get(&(t as usize)))
            {
                blocks.insert(g as usize, a.mul(b));
            }
        }
        GradedOp {
            shift: self.shift + o.shift,
            blocks,
        }
    }

    /// Sum on the grades where both are defined.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.shift, o.shift, "adding operators of different degree");
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(g, a)| o.blocks.get(g).map(|b| (*g, a.add(b))))
            .collect();
        GradedOp {
            shift: self.shift,
            blocks,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        GradedOp {
            shift: self.shift,
            blocks: self.blocks.iter().map(|(g, a)| (*g, a.scale(c))).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    /// `[self, o]`.
    pub fn commutator(&self, o: &Self, fock: &Fock<F>) -> Self {
        self.compose(o, fock).sub(&o.compose(self, fock))
    }
}

/// Per-grade bases, Macdonald data and inner products up to a maximal degree.
#[derive(Clone, Debug)]
pub struct Fock<F> {
    pub t1h: F,
    pub t2h: F,
    max: usize,
    pub bases: Vec<Vec<Partition>>,
    index: Vec<BTreeMap<Partition, usize>>,
    /// Columns are `P_λ` in the power-sum basis.
    pub p_mac: Vec<Mat<F>>,
    /// Columns are `H_λ` in the power-sum basis.
    pub h: Vec<Mat<F>>,
    pub h_inv: Vec<Mat<F>>,
    /// `m_λ = Σ_μ m_to_p[λ][μ] p_μ`.
    pub m_to_p: Vec<Mat<F>>,
}

/// `R[μ][λ]`: coefficient of `m_λ` in `p_μ`.
pub fn p_to_m<F: Field>(n: usize) -> Mat<F> {
    let ps = partitions(n);
    let idx: BTreeMap<&Partition, usize> = ps.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut r = Mat::zeros(ps.len(), ps.len());
    for (i, mu) in ps.iter().enumerate() {
        let l = mu.len();
        let mut counts: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        let total = l.pow(l as u32);
        for code in 0..total {
            let mut sums = vec![0usize; l];
            let mut c = code;
            for &part in mu.parts() {
                sums[c % l] += part;
                c /= l;
            }
            *counts.entry(sums).or_default() += 1;
        }
        for lam in &ps {
            if lam.len() > l {
                continue;
            }
            let mut target = lam.parts().to_vec();
            target.resize(l, 0);
            if let Some(&c) = counts.get(&target) {
                r[(i, idx[lam])] = F::from_int(c);
            }
        }
    }
    r
}

impl<F: Field> Fock<F> {
    pub fn new(t1h: F, t2h: F, max: usize) -> Result<Self> {
        let mut f = Fock {
            t1h,
            t2h,
            max,
            bases: Vec::new(),
            index: Vec::new(),
            p_mac: Vec::new(),
            h: Vec::new(),
            h_inv: Vec::new(),
            m_to_p: Vec::new(),
        };
        for m in 0..=max {
            let ps = partitions(m);
            f.index
                .push(ps.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect());
            f.bases.push(ps);
            f.build_grade(m)?;
        }
        Ok(f)
    }

    pub fn max_grade(&self) -> usize {
        self.max
    }

    pub fn dim(&self, g: usize) -> usize {
        self.bases[g].len()
    }

    fn dim_signed(&self, g: i64) -> usize {
        if g < 0 {
            0
        } else {
            self.dim(g as usize)
        }
    }

    pub fn t1(&self) -> F {
        self.t1h.clone() * &self.t1h
    }

    pub fn t2(&self) -> F {
        self.t2h.clone() * &self.t2h
    }

    pub fn hbh(&self) -> F {
        self.t1h.clone() * &self.t2h
    }

    /// `⟨p_μ, p_μ⟩ = z_μ ∏ (1 − t1^{−μ_i})/(1 − t2^{μ_i})`.
    pub fn norm_p(&self, mu: &Partition) -> F {
        let (t1, t2) = (self.t1(), self.t2());
        let mut r = F::from_int(mu.z_factor() as i64);
        for &x in mu.parts() {
            r = r * (F::one() - t1.powi(-(x as i64))) / (F::one() - t2.powi(x as i64));
        }
        r
    }

    /// Inner product of two vectors in the power-sum basis of grade `g`.
    pub fn inner(&self, g: usize, a: &[F], b: &[F]) -> F {
        let mut s = F::zero();
        for (i, mu) in self.bases[g].iter().enumerate() {
            if !a[i].is_zero() && !b[i].is_zero() {
                s = s + a[i].clone() * &b[i] * self.norm_p(mu);
            }
        }
        s
    }

    fn build_grade(&mut self, m: usize) -> Result<()> {
        let ps = self.bases[m].clone();
        let k = ps.len();
        let minv = p_to_m::<F>(m).inverse()?;
        let mvec: Vec<Vec<F>> = (0..k).map(|l| minv.row(l).to_vec()).collect();
        // Gram–Schmidt in increasing lexicographic order.
        let mut pv: Vec<Option<Vec<F>>> = vec![None; k];
        let mut done: Vec<usize> = Vec::new();
        for i in (0..k).rev() {
            let mut v = mvec[i].clone();
            for &j in &done {
                let pj = pv[j].as_ref().unwrap();
                let c = self.inner(m, &v, pj) / self.inner(m, pj, pj);
                v = v
                    .iter()
                    .zip(pj)
                    .map(|(a, b)| a.clone() - c.clone() * b)
                    .collect();
            }
            pv[i] = Some(v);
            done.push(i);
        }
        let pv: Vec<Vec<F>> = pv.into_iter().map(|v| v.unwrap()).collect();
        let (t1, t2) = (self.t1(), self.t2());
        let mut hcols: Vec<Vec<F>> = Vec::with_capacity(k);
        for (i, lam) in ps.iter().enumerate() {
            let conj = lam.transpose();
            let mut coef = t2.powi(m as i64);
            for (r, &row) in lam.parts().iter().enumerate() {
                for c in 0..row {
                    let arm = (row - c - 1) as i64;
                    let leg = (conj.parts()[c] - r - 1) as i64;
                    coef = coef * (t2.powi(-leg - 1) - t1.powi(-arm));
                }
            }
            let col: Vec<F> = pv[i]
                .iter()
                .zip(&ps)
                .map(|(x, mu)| {
                    let d = mu
                        .parts()
                        .iter()
                        .fold(F::one(), |a, &y| a * (F::one() - t2.powi(y as i64)));
                    x.clone() * &coef / d
                })
                .collect();
            hcols.push(col);
        }
        let h = Mat::from_fn(k, k, |i, j| hcols[j][i].clone());
        self.h_inv.push(h.inverse()?);
        self.h.push(h);
        self.p_mac.push(Mat::from_fn(k, k, |i, j| pv[j][i].clone()));
        self.m_to_p.push(minv);
        Ok(())
    }

    /// `P_λ` in the monomial basis (row `μ` of the result is the coefficient of `m_μ`).
    pub fn p_in_monomials(&self, g: usize) -> Mat<F> {
        // p_μ = Σ_λ R[μ][λ] m_λ.
        p_to_m::<F>(g).transpose().mul(&self.p_mac[g])
    }

    /// Eigenvalue of `e_{0,m}` on `H_λ` (framing parameter 1).
    pub fn vertical_eigenvalue(&self, m: i64, lam: &Partition) -> F {
        let t1m = self.t1().powi(m);
        let t2m = self.t2().powi(m);
        let l = lam.len() as i64;
        let mut tot = t2m.powi(l) / (F::one() - t2m.clone());
        for (i, &x) in lam.parts().iter().enumerate() {
            tot = tot + t1m.powi(x as i64) * t2m.powi(i as i64);
        }
        let r = tot / (F::one() - t1m);
        if m > 0 {
            r
        } else {
            -r
        }
    }

    /// `e_{m,0}`: multiplication by `p_{|m|}/(â(t1^{|m|}) â(t2^{|m|}))` for `m < 0`, `−m ∂/∂p_m` for `m > 0`.
    pub fn horizontal(&self, m: i64) -> GradedOp<F> {
        assert!(m != 0);
        let mut blocks = BTreeMap::new();
        let a = m.unsigned_abs() as usize;
        for g in 0..=self.max {
            let tg = g as i64 - m;
            if tg > self.max as i64 {
                continue;
            }
            if tg < 0 {
                blocks.insert(g, Mat::zeros(0, self.dim(g)));
                continue;
            }
            let tg = tg as usize;
            let mut blk = Mat::<F>::zeros(self.dim(tg), self.dim(g));
            for (j, lam) in self.bases[g].iter().enumerate() {
                if m < 0 {
                    let c = (ahat_pow(&self.t1h, a as i64) * ahat_pow(&self.t2h, a as i64)).inv();
                    let i = self.index[tg][&lam.add_part(a)];
                    blk[(i, j)] = blk[(i, j)].clone() + c;
                } else {
                    let c = lam.parts().iter().filter(|&&x| x == a).count() as i64;
                    if c > 0 {
                        let i = self.index[tg][&lam.remove_part(a).unwrap()];
                        blk[(i, j)] = blk[(i, j)].clone() + F::from_int(-m * c);
                    }
                }
            }
            blocks.insert(g, blk);
        }
        GradedOp { shift: m, blocks }
    }

    /// `e_{0,m} = H · diag(eigenvalues) · H^{−1}` on each grade.
    pub fn vertical(&self, m: i64) -> GradedOp<F> {
        assert!(m != 0);
        let blocks = (0..=self.max)
            .map(|g| {
                let d: Vec<F> = self.bases[g]
                    .iter()
                    .map(|l| self.vertical_eigenvalue(m, l))
                    .collect();
                (g, self.h[g].mul(&Mat::diag(&d)).mul(&self.h_inv[g]))
            })
            .collect();
        GradedOp { shift: 0, blocks }
    }

    /// Block of grade `g` rewritten in the `H` basis (source and target grades may differ).
    pub fn to_h_basis(&self, m: &Mat<F>, src: usize, tgt: usize) -> Mat<F> {
        self.h_inv[tgt].mul(m).mul(&self.h[src])
    }

    pub fn from_h_basis(&self, m: &Mat<F>, src: usize, tgt: usize) -> Mat<F> {
        self.h[tgt].mul(m).mul(&self.h_inv[src])
    }

    pub fn index_of(&self, lam: &Partition) -> usize {
        self.index[lam.size()][lam]
    }
}

/// Does `m` (columns indexed by `λ`, rows by `μ`) vanish unless `λ` dominates `μ`?
pub fn dominance_triangular<F: Field>(m: &Mat<F>, g: usize) -> bool {
    let ps = partitions(g);
    (0..ps.len()).all(|i| (0..ps.len()).all(|j| m[(i, j)].is_zero() || ps[j].dominates(&ps[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};
    use num_traits::Zero;

    fn fock(n: usize) -> Fock<Rat> {
        Fock::new(rat(3, 7), rat(5, 11), n).unwrap()
    }

    #[test]
    fn low_degree_values() {
        let f = fock(2);
        assert_eq!(f.h[1], Mat::identity(1));
        assert_eq!(f.p_mac[1], Mat::identity(1));
        let p1 = Partition::new(vec![1]);
        assert_eq!(
            f.norm_p(&p1),
            (rat(1, 1) - f.t1().inv()) / (rat(1, 1) - f.t2())
        );
        let e = f.horizontal(1);
        assert_eq!(e.blocks[&1][(0, 0)], rat(-1, 1));
        let c = f.horizontal(-1);
        let want = (ahat_pow(&f.t1h, 1) * ahat_pow(&f.t2h, 1)).inv();
        assert_eq!(c.blocks[&0][(0, 0)], want);
        let t1 = f.t1();
        let t2 = f.t2();
        assert_eq!(
            f.vertical_eigenvalue(1, &p1),
            (t1.clone() + t2.clone() / (rat(1, 1) - t2)) / (rat(1, 1) - t1)
        );
    }

    #[test]
    fn macdonald_triangular_and_orthogonal() {
        let f = fock(5);
        for g in 0..=5 {
            assert!(dominance_triangular(&f.p_in_monomials(g), g));
            let p = &f.p_mac[g];
            for i in 0..f.dim(g) {
                for j in 0..i {
                    let a: Vec<Rat> = (0..f.dim(g)).map(|r| p[(r, i)].clone()).collect();
                    let b: Vec<Rat> = (0..f.dim(g)).map(|r| p[(r, j)].clone()).collect();
                    assert!(f.inner(g, &a, &b).is_zero());
                }
            }
        }
    }
}
