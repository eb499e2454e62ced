//! Formal power-series solutions of the Bethe equations and the eigenvector check
//! for `(L B^∇(z))|_{q=1}`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::params::Params;
use crate::series::{Laurent, ZSeries};
use crate::stab::{Descendants, SeriesRoot};
use crate::toroidal::{alcove_operator, Lattice};
use crate::vertex::{line_bundle, ZMat};
use crate::young::{Alcove, Partition};

/// Bethe roots `x_i(z)` with `x_i(0) = φ^μ_i`.
#[derive(Clone, Debug)]
pub struct BetheRoots<F> {
    pub mu: Partition,
    pub x: Vec<ZSeries<F>>,
}

/// `α − β ∏ x^e`.
struct Factor<F> {
    alpha: F,
    beta: F,
    mono: Vec<(usize, i64)>,
}

fn factors<F: Field>(p: &Params<F>, n: usize, i: usize) -> (Vec<Factor<F>>, Vec<Factor<F>>) {
    let (t1, t2, hb) = (p.t1(), p.t2(), p.hbar());
    let f = |alpha: &F, beta: F, mono: Vec<(usize, i64)>| Factor {
        alpha: alpha.clone(),
        beta,
        mono,
    };
    let one = F::one();
    let mut a = vec![f(&one, hb.inv(), vec![(i, -1)])];
    let mut b = vec![f(&one, one.clone(), vec![(i, -1)])];
    for j in (0..n).filter(|&j| j != i) {
        let ij = vec![(i, 1), (j, -1)];
        let ji = vec![(j, 1), (i, -1)];
        a.push(f(&one, one.clone(), ij.clone()));
        a.push(f(&hb, one.clone(), ij.clone()));
        a.push(f(&t2, one.clone(), ji.clone()));
        a.push(f(&t1, one.clone(), ji.clone()));
        b.push(f(&one, one.clone(), ji.clone()));
        b.push(f(&hb, one.clone(), ji));
        b.push(f(&t2, one.clone(), ij.clone()));
        b.push(f(&t1, one.clone(), ij));
    }
    (a, b)
}

fn factor_series<F: Field>(fac: &Factor<F>, x: &[ZSeries<F>], xi: &[ZSeries<F>]) -> ZSeries<F> {
    let order = x[0].order();
    let mut m = ZSeries::one(order);
    for &(idx, e) in &fac.mono {
        m = &m * if e > 0 { &x[idx] } else { &xi[idx] };
    }
    &ZSeries::constant(fac.alpha.clone(), order) - &m.scale(&fac.beta)
}

fn factor_value<F: Field>(fac: &Factor<F>, x: &[F]) -> F {
    let m = fac
        .mono
        .iter()
        .fold(F::one(), |acc, &(i, e)| acc * x[i].powi(e));
    fac.alpha.clone() - fac.beta.clone() * m
}

/// `√ħ z A_i(x) − B_i(x)`: the Bethe equations with the `w`-denominators cleared,
/// `A_i = (1 − 1/(x_i ħ)) ∏_{j≠i} (1 − x_i/x_j)(ħ − x_i/x_j)(t2 − x_j/x_i)(t1 − x_j/x_i)`,
/// `B_i = (1 − 1/x_i) ∏_{j≠i} (1 − x_j/x_i)(ħ − x_j/x_i)(t2 − x_i/x_j)(t1 − x_i/x_j)`.
pub fn bethe_residual<F: Field>(p: &Params<F>, x: &[ZSeries<F>]) -> Result<Vec<ZSeries<F>>> {
    let n = x.len();
    let order = x[0].order();
    let xi = x.iter().map(|s| s.try_inv()).collect::<Result<Vec<_>>>()?;
    let mut zh = ZSeries::zero(order);
    if order >= 1 {
        *zh.coeff_mut(1) = p.hbh();
    }
    Ok((0..n)
        .map(|i| {
            let (af, bf) = factors(p, n, i);
            let a = af
                .iter()
                .fold(zh.clone(), |acc, f| &acc * &factor_series(f, x, &xi));
            let b = bf.iter().fold(ZSeries::one(order), |acc, f| {
                &acc * &factor_series(f, x, &xi)
            });
            &a - &b
        })
        .collect())
}

/// Order-by-order solution with `x(0) = φ^μ`, using the Jacobian of `−B` at `z = 0`.
pub fn bethe_solve<F: Field>(p: &Params<F>, mu: &Partition, order: usize) -> Result<BetheRoots<F>> {
    let bs = mu.boxes();
    let n = bs.len();
    let phi: Vec<F> = bs.iter().map(|b| b.weight().eval(p)).collect();
    let mut jac = Mat::<F>::zeros(n, n);
    for i in 0..n {
        let (_, bf) = factors(p, n, i);
        let vals: Vec<F> = bf.iter().map(|f| factor_value(f, &phi)).collect();
        for (k, f) in bf.iter().enumerate() {
            let m = f
                .mono
                .iter()
                .fold(F::one(), |acc, &(j, e)| acc * phi[j].powi(e));
            let other = vals
                .iter()
                .enumerate()
                .filter(|&(kk, _)| kk != k)
                .fold(F::one(), |acc, (_, v)| acc * v);
            for &(idx, e) in &f.mono {
                let d = f.beta.clone() * &m * F::from_int(e) / &phi[idx];
                jac[(i, idx)] = jac[(i, idx)].clone() + d * &other;
            }
        }
    }
    let ji = jac
        .inverse()
        .map_err(|_| Error::SingularJacobian(format!("{mu}")))?;
    let mut x: Vec<ZSeries<F>> = phi
        .iter()
        .map(|v| ZSeries::constant(v.clone(), order))
        .collect();
    for _ in 0..=order {
        let r = bethe_residual(p, &x)?;
        x = (0..n)
            .map(|i| {
                let mut s = x[i].clone();
                for (j, rj) in r.iter().enumerate() {
                    if !ji[(i, j)].is_zero() {
                        s = &s - &rj.scale(&ji[(i, j)]);
                    }
                }
                s
            })
            .collect();
    }
    Ok(BetheRoots { mu: mu.clone(), x })
}

/// Result of applying `(L B^∇)|_{q=1}` to the descendant vector at the Bethe roots.
#[derive(Clone, Debug)]
pub struct EigenCheck<F> {
    pub mu: Partition,
    /// `g_λ(x(z))` for all `λ`.
    pub vector: Vec<ZSeries<F>>,
    /// `(x_1 ⋯ x_n)^{−1}`.
    pub eigenvalue: ZSeries<F>,
    /// `L B g − eigenvalue · g`.
    pub residual: Vec<ZSeries<F>>,
}

impl<F: Field> EigenCheck<F> {
    pub fn holds(&self) -> bool {
        self.residual.iter().all(|r| r.is_zero())
    }

    /// Is `g(0)` the unit vector at `μ`?
    pub fn starts_at_unit(&self, mu_index: usize) -> bool {
        self.vector.iter().enumerate().all(|(i, g)| {
            if i == mu_index {
                g.coeff(0).is_one()
            } else {
                g.coeff(0).is_zero()
            }
        })
    }
}

/// `g^∇(x(z))` at the Bethe roots, to order `order`.
fn descendant_at_roots<F: Field>(
    p: &Params<F>,
    desc: &Descendants<F>,
    mu: &Partition,
    order: usize,
) -> Result<Vec<ZSeries<F>>> {
    let sph: Vec<F> = mu.boxes().iter().map(|b| b.sqrt_weight().eval(p)).collect();
    let mut extra = 2 * mu.size() + 2;
    loop {
        let roots = bethe_solve(p, mu, order + extra)?;
        let sr: Vec<SeriesRoot<F>> = roots
            .x
            .iter()
            .zip(&sph)
            .map(|(x, r0)| SeriesRoot(Laurent::from_zseries(&x.sqrt_with(r0.clone()))))
            .collect();
        let res = desc
            .eval_series(&sr, (order + extra) as i64 + 1)
            .and_then(|v| {
                v.iter()
                    .map(|l| l.to_zseries(order))
                    .collect::<Result<Vec<_>>>()
            });
        match res {
            Err(Error::Precision { .. }) if extra < 64 => extra *= 2,
            r => return r,
        }
    }
}

pub fn eigencheck<F: Field>(
    p: &Params<F>,
    alcove: &Alcove,
    mu: &Partition,
    order: usize,
) -> Result<EigenCheck<F>> {
    let n = alcove.n;
    let desc = Descendants::new(p, n, &alcove.slope())?;
    let at_one = Params::new(p.t1h.clone(), p.t2h.clone(), F::one());
    let fock = crate::qde::fock_for(&at_one, n)?;
    let mut lat = Lattice::new(&fock);
    let b = alcove_operator(&mut lat, &at_one.qh, alcove, order)?;
    eigencheck_with(p, &desc, &b, mu, order)
}

/// As [`eigencheck`] with the descendants and `B^∇|_{q=1}` supplied.
pub fn eigencheck_with<F: Field>(
    p: &Params<F>,
    desc: &Descendants<F>,
    b: &ZMat<F>,
    mu: &Partition,
    order: usize,
) -> Result<EigenCheck<F>> {
    let n = mu.size();
    let lb = b.lmul(&line_bundle(p, n));
    let g = descendant_at_roots(p, desc, mu, order)?;
    let roots = bethe_solve(p, mu, order)?;
    let prod = roots
        .x
        .iter()
        .skip(1)
        .fold(roots.x[0].clone(), |a, x| &a * x);
    let eigenvalue = prod.try_inv()?;
    let dim = g.len();
    let mut residual = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut lhs = ZSeries::zero(order);
        for (j, gj) in g.iter().enumerate() {
            lhs = &lhs + &(&lb.entry(i, j) * gj);
        }
        residual.push(&lhs - &(&eigenvalue * &g[i]));
    }
    Ok(EigenCheck {
        mu: mu.clone(),
        vector: g,
        eigenvalue,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};
    use crate::young::partitions;

    fn params() -> Params<Rat> {
        Params::new(rat(3, 7), rat(5, 11), rat(2, 13))
    }

    #[test]
    fn single_box_closed_form() {
        let p = params();
        let r = bethe_solve(&p, &Partition::new(vec![1]), 3).unwrap();
        // x = (1 − z/√ħ)/(1 − √ħ z)
        let h = p.hbh();
        let num = ZSeries::from_coeffs(vec![rat(1, 1), -h.inv()], 3);
        let den = ZSeries::from_coeffs(vec![rat(1, 1), -h], 3);
        assert_eq!(r.x[0], &num * &den.try_inv().unwrap());
    }

    #[test]
    fn residual_vanishes() {
        let p = params();
        for n in 1..=3 {
            for mu in partitions(n) {
                let r = bethe_solve(&p, &mu, 2).unwrap();
                assert!(
                    bethe_residual(&p, &r.x)
                        .unwrap()
                        .iter()
                        .all(|s| s.is_zero()),
                    "{mu}"
                );
            }
        }
    }

    #[test]
    fn eigenvectors_small_n() {
        let p = params();
        for n in 1..=2usize {
            let a = Alcove::containing(n, &rat(-1, 2 * n as i64)).unwrap();
            for (i, mu) in partitions(n).iter().enumerate() {
                let e = eigencheck(&p, &a, mu, 2).unwrap();
                assert!(e.holds(), "{mu}");
                assert!(e.starts_at_unit(i));
            }
        }
    }
}
