//! K-theoretic stable envelopes from the tree formula, their fixed-point
//! restrictions, axiom oracles and descendant insertions.
//!
//! The symmetrised tree sum is evaluated with Chern-root square roots given as
//! Laurent series in an auxiliary variable. For fixed-point restrictions the
//! roots are `φ^{1/2}(1+ε)^{k}` with distinct `k`; the value is the `ε^0`
//! coefficient, which equals the value at `ε = 0` of the (regular) symmetric sum.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{rat, Field, Rat};
use crate::linalg::Mat;
use crate::params::{ParamSpec, Params};
use crate::poly::Poly;
use crate::series::Laurent;
use crate::young::{
    a_exponent, admissible_trees, partitions, polarization_data, polarization_terms, OrientedTree,
    Partition, Polarization, RhoValue,
};

/// A Chern-root square root `x^{1/2}` in some Laurent-series model.
pub trait Root<F: Field>: Clone + Send + Sync {
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn scale(&self, c: &F) -> Self;
    fn powi(&self, k: i64) -> Result<Self>;
    fn series(&self, rel: i64) -> Laurent<F>;

    /// `â(x) = x^{1/2} − x^{−1/2}`.
    fn ahat(&self, rel: i64) -> Result<Laurent<F>> {
        Ok(self.series(rel).sub(&self.inv()?.series(rel)))
    }
}

/// `c · (1 + ε)^k`.
#[derive(Clone, Debug)]
pub struct EpsRoot<F> {
    pub c: F,
    pub k: i64,
}

impl<F: Field> Root<F> for EpsRoot<F> {
    fn mul(&self, o: &Self) -> Self {
        EpsRoot {
            c: self.c.clone() * &o.c,
            k: self.k + o.k,
        }
    }
    fn inv(&self) -> Result<Self> {
        Ok(EpsRoot {
            c: self.c.try_inv()?,
            k: -self.k,
        })
    }
    fn scale(&self, c: &F) -> Self {
        EpsRoot {
            c: self.c.clone() * c,
            k: self.k,
        }
    }
    fn powi(&self, k: i64) -> Result<Self> {
        if k < 0 && self.c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(EpsRoot {
            c: self.c.powi(k),
            k: self.k * k,
        })
    }
    fn series(&self, rel: i64) -> Laurent<F> {
        Laurent::binomial(self.k, rel).scale(&self.c)
    }
}

/// An arbitrary Laurent series.
#[derive(Clone, Debug)]
pub struct SeriesRoot<F>(pub Laurent<F>);

impl<F: Field> Root<F> for SeriesRoot<F> {
    fn mul(&self, o: &Self) -> Self {
        SeriesRoot(self.0.mul(&o.0))
    }
    fn inv(&self) -> Result<Self> {
        Ok(SeriesRoot(self.0.inv()?))
    }
    fn scale(&self, c: &F) -> Self {
        SeriesRoot(self.0.scale(c))
    }
    fn powi(&self, k: i64) -> Result<Self> {
        Ok(SeriesRoot(self.0.powi(k)?))
    }
    fn series(&self, _rel: i64) -> Laurent<F> {
        self.0.clone()
    }
}

fn floor_mul(l: usize, s: &Rat) -> i64 {
    let v = (s.clone() * Rat::from_integer((l as i64).into()))
        .floor()
        .to_integer();
    i64::try_from(v).expect("floor fits i64")
}

/// The symmetrised tree sum for one fixed point, slope and polarization,
/// including the factor `(det T^{1/2})^{-1/2}` evaluated on the roots.
#[derive(Clone, Debug)]
pub struct StabSum<F> {
    pub lam: Partition,
    pub slope: Rat,
    pub pol: Polarization,
    /// Slope entering the tree weights: `s` for the standard polarization, `−s` for the opposite one.
    eff: Rat,
    rho: Vec<RhoValue>,
    sph: Vec<F>,
    trees: Vec<OrientedTree>,
    root_floor: i64,
    t1h: F,
    t2h: F,
    /// `t1^{α/2} t2^{β/2}` part of `(det T^{1/2})^{1/2}` and the exponent of each `x_a^{1/2}`.
    det_param: F,
    det_x: i64,
}

impl<F: Field> StabSum<F> {
    pub fn new(p: &Params<F>, lam: &Partition, slope: &Rat, pol: Polarization) -> Self {
        let bs = lam.boxes();
        let n = bs.len();
        let mut alpha = 0;
        let mut beta = 0;
        let mut xe = 0;
        for t in polarization_terms(n, pol) {
            alpha += t.sign * t.alpha;
            beta += t.sign * t.beta;
            if let Some(&(_, e)) = t.x.iter().find(|&&(a, _)| a == 0) {
                xe += t.sign * e;
            }
        }
        // The class determinant is t1^{α/2} t2^{β/2} ∏ x^{xe}; its square root has half of that.
        debug_assert!(alpha % 2 == 0 && beta % 2 == 0);
        let eff = match pol {
            Polarization::Std => slope.clone(),
            Polarization::Opp => -slope.clone(),
        };
        StabSum {
            lam: lam.clone(),
            slope: slope.clone(),
            pol,
            rho: bs.iter().map(|b| b.rho()).collect(),
            sph: bs.iter().map(|b| b.sqrt_weight().eval(p)).collect(),
            trees: admissible_trees(lam),
            root_floor: floor_mul(n, &eff),
            eff,
            t1h: p.t1h.clone(),
            t2h: p.t2h.clone(),
            det_param: p.mono(alpha / 2, beta / 2, 0),
            det_x: xe,
        }
    }

    pub fn n(&self) -> usize {
        self.sph.len()
    }

    /// Number of (tree, assignment) terms.
    pub fn term_count(&self) -> usize {
        self.trees.len() * (1..=self.n()).product::<usize>()
    }

    /// `S^K_λ · Σ_t W_t` for one assignment of roots to boxes.
    fn term<R: Root<F>>(&self, x: &[&R], rel: i64) -> Result<Laurent<F>> {
        let n = self.n();
        let one = Laurent::constant(F::one(), rel);
        let t1i = self.t1h.inv();
        let t2i = self.t2h.inv();
        let hbi = t1i.clone() * &t2i;
        let mut num = one.clone();
        let mut den = one.clone();
        let xinv: Vec<R> = x.iter().map(|r| r.inv()).collect::<Result<_>>()?;
        for a in 0..n {
            let ra = self.rho[a].shift(1);
            for b in 0..n {
                let f = if ra < self.rho[b] {
                    x[a].mul(&xinv[b]).scale(&t1i)
                } else if self.rho[b] < ra {
                    x[b].mul(&xinv[a]).scale(&t2i)
                } else {
                    return Err(Error::Invalid("tie in rho order".into()));
                };
                num = num.mul(&f.ahat(rel)?);
            }
        }
        for a in 0..n {
            let f = if self.rho[a] <= self.rho[0] {
                x[a].clone()
            } else {
                xinv[a].scale(&hbi)
            };
            num = num.mul(&f.ahat(rel)?);
        }
        for (xa, ra) in x.iter().zip(&self.rho) {
            for (xb, rb) in xinv.iter().zip(&self.rho) {
                if ra < rb {
                    let r = xa.mul(xb);
                    den = den.mul(&r.ahat(rel)?);
                    den = den.mul(&r.scale(&hbi).ahat(rel)?);
                }
            }
        }
        let sk = num.mul(&den.inv()?);
        let mut wsum: Option<Laurent<F>> = None;
        for t in &self.trees {
            let y = x[0].scale(&self.sph[0].inv());
            let mut wn = y.powi(2 * self.root_floor + 1)?.series(rel);
            let mut wd = y.ahat(rel)?;
            for &(tl, hd) in &t.edges {
                let yy = x[hd]
                    .mul(&xinv[tl])
                    .scale(&(self.sph[tl].clone() / &self.sph[hd]));
                let m = floor_mul(t.l(hd), &self.eff);
                wn = wn.mul(&yy.powi(2 * m + 1)?.series(rel));
                wd = wd.mul(&yy.ahat(rel)?);
            }
            let mut w = wn.mul(&wd.inv()?);
            if t.sign() < 0 {
                w = w.neg();
            }
            wsum = Some(match wsum {
                None => w,
                Some(s) => s.add(&w),
            });
        }
        Ok(sk.mul(&wsum.expect("at least one tree")))
    }

    /// `(det T^{1/2})^{-1/2} Sym(S^K Σ_t W_t)` at the given roots.
    pub fn eval<R: Root<F>>(&self, roots: &[R], rel: i64) -> Result<Laurent<F>> {
        let n = self.n();
        assert_eq!(roots.len(), n, "one root per box");
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let terms = perms
            .par_iter()
            .map(|perm| {
                let x: Vec<&R> = perm.iter().map(|&i| &roots[i]).collect();
                self.term(&x, rel)
            })
            .collect::<Result<Vec<_>>>()?;
        let total = terms.into_iter().reduce(|a, b| a.add(&b));
        let mut prod = roots[0].clone();
        for r in &roots[1..] {
            prod = prod.mul(r);
        }
        let pre = prod
            .powi(self.det_x)?
            .scale(&self.det_param)
            .inv()?
            .series(rel);
        Ok(pre.mul(&total.unwrap()))
    }

    /// Value at the roots `r_a (1+ε)^{a+1}` as `ε → 0`.
    pub fn eval_at_point(&self, roots: &[F]) -> Result<F> {
        let er: Vec<EpsRoot<F>> = roots
            .iter()
            .enumerate()
            .map(|(i, c)| EpsRoot {
                c: c.clone(),
                k: i as i64 + 1,
            })
            .collect();
        let mut rel = self.n() as i64 + 2;
        loop {
            match self.eval(&er, rel).and_then(|s| s.coeff(0)) {
                Err(Error::Precision { .. }) if rel < 256 => rel *= 2,
                r => return r,
            }
        }
    }
}

/// `φ^{1/2}` of the boxes of `μ`, optionally times `q^{g_a/2}`.
pub fn fixed_roots<F: Field>(p: &Params<F>, mu: &Partition, qshift: Option<&[i64]>) -> Vec<F> {
    mu.boxes()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let w = b.sqrt_weight();
            let g = qshift.map_or(0, |d| d[i]);
            p.mono(w.a, w.b, g)
        })
        .collect()
}

/// `(det T^{1/2}_{=0}|_λ)^{1/2}`: the part of the polarization with vanishing `a`-weight.
pub fn zero_weight_factor<F: Field>(p: &Params<F>, lam: &Partition, pol: Polarization) -> F {
    let d = polarization_data(lam, pol);
    let mut r = F::one();
    for (&(a, b), &v) in &d.half {
        if a_exponent(a, b).is_zero() {
            r = r * p.mono(a / 2, b / 2, 0).powi(v);
        }
    }
    r
}

/// `Stab_{pol, s}(λ)|_μ`, normalized so that the diagonal axiom holds.
pub fn stab_restrict<F: Field>(
    p: &Params<F>,
    lam: &Partition,
    mu: &Partition,
    slope: &Rat,
    pol: Polarization,
) -> Result<F> {
    if lam.size() != mu.size() {
        return Err(Error::Invalid(
            "restriction to a fixed point of different size".into(),
        ));
    }
    let s = StabSum::new(p, lam, slope, pol);
    Ok(s.eval_at_point(&fixed_roots(p, mu, None))? * zero_weight_factor(p, lam, pol))
}

/// `∏_{w ∈ N^−} â(w) / ∏_{w ∈ T^{1/2}_{≠0}} w^{1/2}`, from the tangent weights alone.
pub fn diagonal_oracle<F: Field>(p: &Params<F>, lam: &Partition, pol: Polarization) -> Result<F> {
    let d = polarization_data(lam, pol);
    let sq = |k: &(i64, i64)| p.mono(k.0 / 2, k.1 / 2, 0);
    let mut r = F::one();
    for (k, &v) in &d.tangent {
        if v < 0 {
            return Err(Error::Invalid("tangent class is not effective".into()));
        }
        if a_exponent(k.0, k.1) > Rat::zero() {
            let s = sq(k);
            r = r * (s.clone() - s.inv()).powi(v);
        }
    }
    for (k, &v) in &d.half {
        if !a_exponent(k.0, k.1).is_zero() {
            r = r / sq(k).powi(v);
        }
    }
    Ok(r)
}

/// `A_{νμ} = Stab(μ)|_ν` over the partitions of `n`.
pub fn stab_matrix<F: Field>(
    p: &Params<F>,
    n: usize,
    slope: &Rat,
    pol: Polarization,
) -> Result<Mat<F>> {
    let ps = partitions(n);
    let mut m = Mat::zeros(ps.len(), ps.len());
    for (j, mu) in ps.iter().enumerate() {
        let s = StabSum::new(p, mu, slope, pol);
        let z = zero_weight_factor(p, mu, pol);
        for (i, nu) in ps.iter().enumerate() {
            m[(i, j)] = s.eval_at_point(&fixed_roots(p, nu, None))? * &z;
        }
    }
    Ok(m)
}

/// The descendants `g_λ` for all `λ ⊢ n` at one alcove:
/// `g_λ = Σ_μ c_{λμ} F_μ` with `F_μ` the standard-polarization tree sum at slope `s`
/// and `c` fixed by `g_λ(φ^ν) = δ_{λν}`.
#[derive(Clone, Debug)]
pub struct Descendants<F> {
    pub parts: Vec<Partition>,
    sums: Vec<StabSum<F>>,
    /// `c[λ][μ]`.
    pub coeffs: Mat<F>,
}

impl<F: Field> Descendants<F> {
    pub fn new(p: &Params<F>, n: usize, slope: &Rat) -> Result<Self> {
        let parts = partitions(n);
        let sums: Vec<StabSum<F>> = parts
            .iter()
            .map(|mu| StabSum::new(p, mu, slope, Polarization::Std))
            .collect();
        let k = parts.len();
        let mut a = Mat::zeros(k, k);
        for (i, nu) in parts.iter().enumerate() {
            let r = fixed_roots(p, nu, None);
            for (j, s) in sums.iter().enumerate() {
                a[(i, j)] = s.eval_at_point(&r)?;
            }
        }
        let coeffs = a.transpose().inverse()?;
        Ok(Descendants {
            parts,
            sums,
            coeffs,
        })
    }

    fn combine(&self, f: &[F]) -> Vec<F> {
        self.coeffs.apply(f)
    }

    /// `(g_λ(x))_λ` at roots given by their square roots (generic or fixed-point-like).
    pub fn eval_at_point(&self, roots: &[F]) -> Result<Vec<F>> {
        let f = self
            .sums
            .iter()
            .map(|s| s.eval_at_point(roots))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.combine(&f))
    }

    /// `(g_λ(x))_λ` with roots given as Laurent series in some variable; the
    /// result is known to the precision the inputs allow.
    pub fn eval_series(&self, roots: &[SeriesRoot<F>], rel: i64) -> Result<Vec<Laurent<F>>> {
        let f = self
            .sums
            .iter()
            .map(|s| s.eval(roots, rel))
            .collect::<Result<Vec<_>>>()?;
        let k = self.parts.len();
        let mut out = Vec::with_capacity(k);
        for l in 0..k {
            let mut acc: Option<Laurent<F>> = None;
            for (m, fm) in f.iter().enumerate() {
                let c = &self.coeffs[(l, m)];
                if c.is_zero() {
                    continue;
                }
                let t = fm.scale(c);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
            out.push(acc.unwrap_or_else(|| Laurent::constant(F::zero(), rel)));
        }
        Ok(out)
    }
}

/// `Stab(λ)|_μ` is nonzero only if `μ` dominates `λ`.
pub fn support_respects_dominance<F: Field>(m: &Mat<F>, n: usize) -> bool {
    let ps = partitions(n);
    for (j, lam) in ps.iter().enumerate() {
        for (i, mu) in ps.iter().enumerate() {
            if !m[(i, j)].is_zero() && !mu.dominates(lam) {
                return false;
            }
        }
    }
    true
}

/// Newton segments, in units of `a = (t1/t2)^{1/2}`, of the entries of
/// Newton segments `[lo, hi]` of each restriction in `a`, `None` where it vanishes.
pub type Segments = Vec<Vec<Option<(Rat, Rat)>>>;

/// [`stab_matrix`] as Laurent polynomials in `a` with `ħ`, `q` fixed by `ps`.
///
/// Entries are reconstructed by interpolation through evaluations at rational `a`
/// and confirmed at extra points.
pub fn stab_newton_segments(
    ps: &ParamSpec,
    n: usize,
    slope: &Rat,
    pol: Polarization,
) -> Result<Segments> {
    let dim = partitions(n).len();
    let at = |k: i64| rat(k + 2, 2 * k + 5);
    let mut cache: Vec<Mat<Rat>> = Vec::new();
    let mut value = |k: usize| -> Result<Mat<Rat>> {
        while cache.len() <= k {
            cache.push(stab_matrix(
                &ps.at_a(&at(cache.len() as i64)),
                n,
                slope,
                pol,
            )?);
        }
        Ok(cache[k].clone())
    };
    // Each entry is `a_v^{-half} P(a_v)` with `a_v = a^{1/2}` and `deg P ≤ 2 half`.
    let mut half = 6 * n + 2;
    loop {
        let pts = 2 * half + 1;
        let xs: Vec<Rat> = (0..pts + 2).map(|k| at(k as i64)).collect();
        let mats = (0..pts + 2).map(&mut value).collect::<Result<Vec<_>>>()?;
        let mut out = vec![vec![None; dim]; dim];
        let mut fits = true;
        'entries: for i in 0..dim {
            for j in 0..dim {
                let ys: Vec<Rat> = (0..pts)
                    .map(|k| mats[k][(i, j)].clone() * xs[k].powi(half as i64))
                    .collect();
                let poly = Poly::interpolate(&xs[..pts], &ys);
                for k in pts..pts + 2 {
                    if poly.eval(&xs[k]) != mats[k][(i, j)].clone() * xs[k].powi(half as i64) {
                        fits = false;
                        break 'entries;
                    }
                }
                if let (Some(lo), Some(hi)) = (poly.valuation(), poly.degree()) {
                    let e = |d: usize| rat(d as i64 - half as i64, 2);
                    out[i][j] = Some((e(lo), e(hi)));
                }
            }
        }
        if fits {
            return Ok(out);
        }
        if half > 64 {
            return Err(Error::Invalid(
                "entries are not Laurent polynomials of bounded degree in a".into(),
            ));
        }
        half *= 2;
    }
}

/// Does the slope axiom hold for the segments of [`stab_newton_segments`]?
/// For every off-diagonal `A_{νμ}`, the segment shifted by `s·deg_a(∏φ^μ)`
/// lies inside that of `A_{νν}` shifted by `s·deg_a(∏φ^ν)`.
pub fn slope_axiom_failures(
    segs: &[Vec<Option<(Rat, Rat)>>],
    n: usize,
    slope: &Rat,
) -> Vec<(Partition, Partition)> {
    let ps = partitions(n);
    let mut bad = Vec::new();
    for (i, nu) in ps.iter().enumerate() {
        let Some((dlo, dhi)) = segs[i][i].clone() else {
            bad.push((nu.clone(), nu.clone()));
            continue;
        };
        let sn = slope.clone() * det_weight_a_exponent(nu);
        for (j, mu) in ps.iter().enumerate() {
            if let (true, Some((lo, hi))) = (i != j, segs[i][j].clone()) {
                let sm = slope.clone() * det_weight_a_exponent(mu);
                if lo + &sm < dlo.clone() + &sn || hi + &sm > dhi.clone() + &sn {
                    bad.push((nu.clone(), mu.clone()));
                }
            }
        }
    }
    bad
}

/// `a`-exponent of `∏_{□∈λ} φ_□`.
pub fn det_weight_a_exponent(lam: &Partition) -> Rat {
    Rat::from_integer((-lam.boxes().iter().map(|b| b.content()).sum::<i64>()).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params<Rat> {
        Params::new(rat(3, 7), rat(5, 11), rat(2, 13))
    }

    #[test]
    fn diagonal_and_support_small_n() {
        let p = params();
        for n in 1..=3usize {
            for s in [rat(-1, 2 * n as i64), rat(1, 2 * n as i64)] {
                for pol in [Polarization::Std, Polarization::Opp] {
                    let m = stab_matrix(&p, n, &s, pol).unwrap();
                    assert!(support_respects_dominance(&m, n), "n={n} s={s} {pol:?}");
                    for (i, lam) in partitions(n).iter().enumerate() {
                        assert_eq!(
                            m[(i, i)],
                            diagonal_oracle(&p, lam, pol).unwrap(),
                            "{lam} {pol:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn descendants_are_delta_at_fixed_points() {
        let p = params();
        let d = Descendants::new(&p, 3, &rat(-1, 6)).unwrap();
        for (i, nu) in d.parts.iter().enumerate() {
            let g = d.eval_at_point(&fixed_roots(&p, nu, None)).unwrap();
            for (j, x) in g.iter().enumerate() {
                assert_eq!(*x, Rat::from_integer(((i == j) as i64).into()));
            }
        }
    }

    #[test]
    fn slope_axiom_small_n() {
        let ps = crate::params::ParamSpec::draw(5, crate::params::Mode::SymbolicA);
        for n in 1..=2usize {
            for s in [rat(-1, 2 * n as i64), rat(2 * n as i64 + 1, 2 * n as i64)] {
                let std = stab_newton_segments(&ps, n, &s, Polarization::Std).unwrap();
                assert!(slope_axiom_failures(&std, n, &s).is_empty());
                let opp = stab_newton_segments(&ps, n, &s, Polarization::Opp).unwrap();
                assert!(slope_axiom_failures(&opp, n, &-s.clone()).is_empty());
            }
        }
    }
}
