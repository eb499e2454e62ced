//! q-Pochhammer sums: vertex functions with descendants and the fundamental
//! solution matrix `Ψ^∇` of the exotic difference equation in the fixed-point basis.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::Mat;
use crate::params::Params;
use crate::ratfunc::{LimitDir, RatFunc};
use crate::series::ZSeries;
use crate::stab::{fixed_roots, Descendants};
use crate::young::{partitions, rpp_enumerate, Alcove, Partition};

/// `(x)_d = ∏_{i<d}(1 − x q^i)` for `d ≥ 0`, `∏_{d≤i<0} (1 − x q^i)^{−1}` otherwise.
pub fn qpoch<F: Field>(x: &F, q: &F, d: i64) -> Result<F> {
    let mut r = F::one();
    if d >= 0 {
        let mut xq = x.clone();
        for _ in 0..d {
            r = r * (F::one() - &xq);
            xq = xq * q;
        }
    } else {
        let qi = q.try_inv()?;
        let mut xq = x.clone() * &qi;
        for _ in 0..(-d) {
            let f = F::one() - &xq;
            if f.is_zero() {
                return Err(Error::NonGeneric(format!(
                    "vanishing q-Pochhammer factor, length {d}"
                )));
            }
            r = r / f;
            xq = xq * &qi;
        }
    }
    Ok(r)
}

fn ratio<F: Field>(a: &F, b: &F) -> Result<F> {
    Ok(a.clone() * b.try_inv()?)
}

fn weights<F: Field>(p: &Params<F>, mu: &Partition) -> Vec<F> {
    mu.boxes().iter().map(|b| b.weight().eval(p)).collect()
}

/// The vertex function with descendant `desc` at the fixed point `λ`: the sum over
/// reverse plane partitions `d` of `(z/√ħ)^{|d|} desc(x = φ q^{d})` times the
/// q-Pochhammer weights. `desc` receives the square roots of the Chern roots.
pub fn vertex<F: Field>(
    p: &Params<F>,
    lam: &Partition,
    order: usize,
    desc: impl Fn(&[F]) -> Result<F>,
) -> Result<ZSeries<F>> {
    let q = p.q();
    let (t1, t2, hb) = (p.t1(), p.t2(), p.hbar());
    let hbi = p.hbh().try_inv()?;
    let ph = weights(p, lam);
    let mut out = ZSeries::<F>::zero(order);
    for d in rpp_enumerate(lam, order) {
        let k: usize = d.iter().sum();
        let mut pr = hbi.powi(k as i64);
        for i in 0..ph.len() {
            for j in 0..ph.len() {
                let e = d[i] as i64 - d[j] as i64;
                let r = ratio(&ph[i], &ph[j])?;
                pr =
                    pr * qpoch(&(t1.clone() * &r), &q, e)? / qpoch(&(q.clone() / &t2 * &r), &q, e)?;
                pr = pr * qpoch(&(q.clone() * &r), &q, e)? / qpoch(&(hb.clone() * &r), &q, e)?;
            }
            pr = pr * qpoch(&(ph[i].clone() * &hb), &q, d[i] as i64)?
                / qpoch(&(q.clone() * &ph[i]), &q, d[i] as i64)?;
        }
        let g: Vec<i64> = d.iter().map(|&x| x as i64).collect();
        let v = desc(&fixed_roots(p, lam, Some(&g)))?;
        *out.coeff_mut(k) = out.coeff(k).clone() + pr * v;
    }
    Ok(out)
}

/// A matrix-valued truncated power series `Σ_k M_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMat<F> {
    pub coeffs: Vec<Mat<F>>,
}

impl<F: Field> ZMat<F> {
    pub fn identity(dim: usize, order: usize) -> Self {
        let mut coeffs = vec![Mat::zeros(dim, dim); order + 1];
        coeffs[0] = Mat::identity(dim);
        ZMat { coeffs }
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        ZMat {
            coeffs: vec![Mat::zeros(dim, dim); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let mut out = ZMat::zero(self.dim(), order);
        for i in 0..=order {
            for j in 0..=order - i {
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        ZMat {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].sub(&o.coeffs[k]))
                .collect(),
        }
    }

    /// Constant matrix on the left.
    pub fn lmul(&self, m: &Mat<F>) -> Self {
        ZMat {
            coeffs: self.coeffs.iter().map(|c| m.mul(c)).collect(),
        }
    }

    /// Constant matrix on the right.
    pub fn rmul(&self, m: &Mat<F>) -> Self {
        ZMat {
            coeffs: self.coeffs.iter().map(|c| c.mul(m)).collect(),
        }
    }

    /// `z ↦ z q^m`, with `qh = q^{1/2}`.
    pub fn zshift(&self, m: i64, qh: &F) -> Self {
        let f = qh.powi(2 * m);
        let mut c = F::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.scale(&c));
            c = c * &f;
        }
        ZMat { coeffs }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ZMat<G> {
        ZMat {
            coeffs: self.coeffs.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|m| !m.is_zero())
    }

    /// Entry `(i, j)` as a scalar series.
    pub fn entry(&self, i: usize, j: usize) -> ZSeries<F> {
        ZSeries::from_coeffs(
            self.coeffs.iter().map(|m| m[(i, j)].clone()).collect(),
            self.order(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }
}

/// `L = diag(∏_□ φ_□^{−1})` over the partitions of `n`.
pub fn line_bundle<F: Field>(p: &Params<F>, n: usize) -> Mat<F> {
    let d: Vec<F> = partitions(n)
        .iter()
        .map(|mu| {
            weights(p, mu)
                .into_iter()
                .fold(F::one(), |a, b| a * b)
                .inv()
        })
        .collect();
    Mat::diag(&d)
}

/// `Ψ^∇` in the fixed-point basis, `Ψ_{λμ} = Σ_{d} (√ħ z)^{|d|} g_λ(φ^μ q^{−d}) · weights`.
#[derive(Clone, Debug)]
pub struct PsiMatrix<F> {
    pub alcove: Alcove,
    pub parts: Vec<Partition>,
    pub series: ZMat<F>,
}

pub fn psi_matrix<F: Field>(p: &Params<F>, alcove: &Alcove, order: usize) -> Result<PsiMatrix<F>> {
    let n = alcove.n;
    let desc = Descendants::new(p, n, &alcove.slope())?;
    psi_with(p, alcove, &desc, order)
}

/// The q-Pochhammer weight of degree `d` at the fixed point with weights `ph`.
fn psi_weight<F: Field>(p: &Params<F>, ph: &[F], d: &[usize]) -> Result<F> {
    let q = p.q();
    let (t1, t2, hb) = (p.t1(), p.t2(), p.hbar());
    let k: usize = d.iter().sum();
    let mut pr = p.hbh().powi(k as i64);
    for i in 0..ph.len() {
        for j in 0..ph.len() {
            let e = d[i] as i64 - d[j] as i64;
            let r = ratio(&ph[j], &ph[i])?;
            pr = pr * qpoch(&(r.clone() / &t1), &q, e)? / qpoch(&(q.clone() * &t2 * &r), &q, e)?;
            pr = pr * qpoch(&(q.clone() * &r), &q, e)? / qpoch(&(r / &hb), &q, e)?;
        }
        let pi = ph[i].try_inv()?;
        pr = pr * qpoch(&(pi.clone() / &hb), &q, d[i] as i64)?
            / qpoch(&(q.clone() * pi), &q, d[i] as i64)?;
    }
    Ok(pr)
}

pub fn psi_with<F: Field>(
    p: &Params<F>,
    alcove: &Alcove,
    desc: &Descendants<F>,
    order: usize,
) -> Result<PsiMatrix<F>> {
    let parts = desc.parts.clone();
    let dim = parts.len();
    let mut series = ZMat::<F>::zero(dim, order);
    for (mi, mu) in parts.iter().enumerate() {
        let ph = weights(p, mu);
        for d in rpp_enumerate(mu, order) {
            let k: usize = d.iter().sum();
            let w = psi_weight(p, &ph, &d)?;
            let g: Vec<i64> = d.iter().map(|&x| -(x as i64)).collect();
            let vals = desc.eval_at_point(&fixed_roots(p, mu, Some(&g)))?;
            for (li, v) in vals.into_iter().enumerate() {
                let m = &mut series.coeffs[k];
                m[(li, mi)] = m[(li, mi)].clone() + w.clone() * v;
            }
        }
    }
    Ok(PsiMatrix {
        alcove: alcove.clone(),
        parts,
        series,
    })
}

/// `Ψ(zq) L − L B(z) Ψ(z)` for a fixed-point-basis operator `B`.
pub fn qde_residual<F: Field>(p: &Params<F>, n: usize, psi: &ZMat<F>, b: &ZMat<F>) -> ZMat<F> {
    let l = line_bundle(p, n);
    psi.zshift(1, &p.qh).rmul(&l).sub(&b.lmul(&l).mul(psi))
}

/// Order-by-order scalar `c(z)` with `Ψ(zq) L = c(z) · L B(z) Ψ(z)`; `None` if no
/// scalar series fits.
pub fn extract_cx<F: Field>(
    p: &Params<F>,
    n: usize,
    psi: &ZMat<F>,
    b: &ZMat<F>,
) -> Option<ZSeries<F>> {
    let l = line_bundle(p, n);
    let lhs = psi.zshift(1, &p.qh).rmul(&l);
    let rhs = b.lmul(&l).mul(psi);
    let order = lhs.order().min(rhs.order());
    // rhs(0) = L is invertible diagonal; solve c_k from entry (0,0) and check the rest.
    let mut c: Vec<F> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = lhs.coeffs[k].clone();
        for (j, cj) in c.iter().enumerate() {
            acc = acc.sub(&rhs.coeffs[k - j].scale(cj));
        }
        let r0 = &rhs.coeffs[0];
        let ck = acc[(0, 0)].clone() / &r0[(0, 0)];
        if acc.sub(&r0.scale(&ck)).count_nonzero() != 0 {
            return None;
        }
        c.push(ck);
    }
    Some(ZSeries::from_coeffs(c, order))
}

/// `Ψ^{∇+1}(z) − L Ψ^∇(z q^{−1}) L^{−1}`.
pub fn shift_covariance_residual<F: Field>(
    p: &Params<F>,
    n: usize,
    psi: &ZMat<F>,
    psi_shifted: &ZMat<F>,
) -> Result<ZMat<F>> {
    let l = line_bundle(p, n);
    let li = l.inverse()?;
    Ok(psi_shifted.sub(&psi.zshift(-1, &p.qh).lmul(&l).rmul(&li)))
}

/// Per-coefficient limits of `Ψ^∇(z q^{w})` with `Q = q^{1/2}` the variable.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LimitReport {
    pub wall: String,
    /// Entries `(k, λ, μ)` of the shifted series without a finite `q → 0` limit.
    pub infinite_at_zero: Vec<(usize, usize, usize)>,
    /// Whether the `q → ∞` limit of the shifted series is the identity.
    pub identity_at_infinity: bool,
}

pub fn limit_report(psi: &ZMat<RatFunc<Rat>>, wall: &Rat) -> LimitReport {
    let mut infinite_at_zero = Vec::new();
    let mut identity_at_infinity = true;
    for (k, m) in psi.coeffs.iter().enumerate() {
        let shift = wall.clone() * Rat::from_integer((2 * k as i64).into());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)].limit_shifted(LimitDir::ToZero, &shift).is_none() {
                    infinite_at_zero.push((k, i, j));
                }
                let want = if k == 0 && i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                };
                if m[(i, j)].limit_shifted(LimitDir::ToInfinity, &shift) != Some(want) {
                    identity_at_infinity = false;
                }
            }
        }
    }
    LimitReport {
        wall: crate::field::fmt_rat(wall),
        infinite_at_zero,
        identity_at_infinity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn params() -> Params<Rat> {
        Params::new(rat(3, 7), rat(5, 11), rat(2, 13))
    }

    #[test]
    fn qpoch_branches() {
        let (x, q) = (rat(2, 3), rat(1, 5));
        assert_eq!(qpoch(&x, &q, 0).unwrap(), rat(1, 1));
        assert_eq!(
            qpoch(&x, &q, 2).unwrap(),
            (rat(1, 1) - &x) * (rat(1, 1) - x.clone() * &q)
        );
        assert_eq!(qpoch(&x, &q, -1).unwrap(), (rat(1, 1) - x / q).inv());
    }

    #[test]
    fn single_box_vertex() {
        let p = params();
        let v = vertex(&p, &Partition::new(vec![1]), 1, |_| Ok(rat(1, 1))).unwrap();
        let want = (rat(1, 1) - p.hbar()) / (p.hbh() * (rat(1, 1) - p.q()));
        assert_eq!(*v.coeff(0), rat(1, 1));
        assert_eq!(*v.coeff(1), want);
    }

    #[test]
    fn psi_starts_at_identity() {
        let p = params();
        for n in 1..=3 {
            let a = Alcove::containing(n, &rat(-1, 2 * n as i64)).unwrap();
            let psi = psi_matrix(&p, &a, 1).unwrap();
            assert_eq!(psi.series.coeffs[0], Mat::identity(partitions(n).len()));
        }
    }
}
