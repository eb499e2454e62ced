//! The exotic difference equation `Ψ(zq) L = L B^∇(z) Ψ(z)` and its companions:
//! adjacent-alcove relations, integer shifts, and the fixed-point basis calibration.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::fock::Fock;
use crate::linalg::Mat;
use crate::params::Params;
use crate::series::ZSeries;
use crate::toroidal::{alcove_operator, wall_operator_fixed, Lattice};
use crate::vertex::{extract_cx, line_bundle, psi_matrix, qde_residual, ZMat};
use crate::young::{Alcove, Wall};

/// Everything needed to compare both sides of the equation for one alcove.
#[derive(Clone, Debug)]
pub struct QdeOutcome<F> {
    pub alcove: Alcove,
    pub walls: Vec<Wall>,
    pub psi: ZMat<F>,
    pub b: ZMat<F>,
    pub residual: ZMat<F>,
    pub cx: Option<ZSeries<F>>,
}

impl<F: Field> QdeOutcome<F> {
    /// Largest `D` such that the residual vanishes through order `D`.
    pub fn zero_through(&self) -> Option<usize> {
        match self.residual.valuation() {
            None => Some(self.residual.order()),
            Some(0) => None,
            Some(k) => Some(k - 1),
        }
    }

    pub fn cx_is_one(&self) -> bool {
        self.cx.as_ref().is_some_and(|c| {
            c.coeffs()
                .iter()
                .enumerate()
                .all(|(k, x)| if k == 0 { x.is_one() } else { x.is_zero() })
        })
    }
}

/// A Fock space truncated at degree `n` with the parameters of `p`.
pub fn fock_for<F: Field>(p: &Params<F>, n: usize) -> Result<Fock<F>> {
    Fock::new(p.t1h.clone(), p.t2h.clone(), n)
}

pub fn alcove_b<F: Field>(p: &Params<F>, alcove: &Alcove, order: usize) -> Result<ZMat<F>> {
    let fock = fock_for(p, alcove.n)?;
    let mut lat = Lattice::new(&fock);
    alcove_operator(&mut lat, &p.qh, alcove, order)
}

pub fn verify_qde<F: Field>(p: &Params<F>, alcove: &Alcove, order: usize) -> Result<QdeOutcome<F>> {
    let n = alcove.n;
    let psi = psi_matrix(p, alcove, order)?.series;
    let b = alcove_b(p, alcove, order)?;
    let residual = qde_residual(p, n, &psi, &b);
    let cx = extract_cx(p, n, &psi, &b);
    Ok(QdeOutcome {
        alcove: alcove.clone(),
        walls: alcove.window(),
        psi,
        b,
        residual,
        cx,
    })
}

/// `Ψ^{∇}(z) − B_w(z) Ψ^{∇′}(z)` where `∇` lies just below the wall `w` and `∇′` just above.
pub fn adjacent_residual<F: Field>(
    p: &Params<F>,
    n: usize,
    wall: &Wall,
    order: usize,
) -> Result<ZMat<F>> {
    let w = wall.value();
    let eps = Rat::new(1.into(), (4 * n * n + 4).into());
    let below = Alcove::containing(n, &(w.clone() - &eps))?;
    let above = Alcove::containing(n, &(w + eps))?;
    let lo = psi_matrix(p, &below, order)?.series;
    let hi = psi_matrix(p, &above, order)?.series;
    let fock = fock_for(p, n)?;
    let mut lat = Lattice::new(&fock);
    let b = wall_operator_fixed(&mut lat, &p.qh, wall, n, order)?;
    Ok(lo.sub(&b.mul(&hi)))
}

/// `L B_w(z q^{−1}) L^{−1} − B_{w+1}(z)` in the fixed-point basis.
pub fn conjugation_residual<F: Field>(
    p: &Params<F>,
    n: usize,
    wall: &Wall,
    order: usize,
) -> Result<ZMat<F>> {
    let fock = fock_for(p, n)?;
    let mut lat = Lattice::new(&fock);
    let l = line_bundle(p, n);
    let li = l.inverse()?;
    let b = wall_operator_fixed(&mut lat, &p.qh, wall, n, order)?;
    let next = Wall {
        num: wall.num + wall.den,
        den: wall.den,
    };
    let b1 = wall_operator_fixed(&mut lat, &p.qh, &next, n, order)?;
    Ok(b.zshift(-1, &p.qh).lmul(&l).rmul(&li).sub(&b1))
}

/// Diagonal scalars `s_λ` relating fixed-point classes to `H_λ`, fixed by the order-one
/// part of the equation on the alcove `(−1/n, 0)` and verified at all orders there and on
/// `(0, 1/n)`.
pub fn calibrate_basis<F: Field>(p: &Params<F>, n: usize, order: usize) -> Result<Vec<F>> {
    let ordinary = Alcove::containing(n, &Rat::new((-1).into(), (2 * n).into()))?;
    let psi = psi_matrix(p, &ordinary, order.max(1))?.series;
    let b = alcove_b(p, &ordinary, order.max(1))?;
    let l = line_bundle(p, n);
    let dim = l.rows();
    // Order one: q Ψ_1 L − L Ψ_1 = L S^{−1} B_1 S.
    let lhs = psi.coeffs[1]
        .scale(&p.q())
        .mul(&l)
        .sub(&l.mul(&psi.coeffs[1]));
    let lhs = l.inverse()?.mul(&lhs);
    let b1 = &b.coeffs[1];
    let mut s: Vec<Option<F>> = vec![None; dim];
    s[0] = Some(F::one());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..dim {
            for j in 0..dim {
                if b1[(i, j)].is_zero() || lhs[(i, j)].is_zero() {
                    continue;
                }
                // lhs_ij = b_ij s_j / s_i
                let r = lhs[(i, j)].clone() / &b1[(i, j)];
                match (&s[i], &s[j]) {
                    (Some(si), None) => {
                        s[j] = Some(r * si);
                        changed = true;
                    }
                    (None, Some(sj)) => {
                        s[i] = Some(sj.clone() / r);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
    }
    let s: Vec<F> = s
        .into_iter()
        .map(|x| {
            x.ok_or_else(|| {
                Error::CalibrationInconsistent(
                    "order-one block does not connect all fixed points".into(),
                )
            })
        })
        .collect::<Result<_>>()?;
    let sm = Mat::diag(&s);
    let si = sm.inverse()?;
    let conj = |b: &ZMat<F>| b.lmul(&si).rmul(&sm);
    for alc in [ordinary.clone(), ordinary.above()] {
        let (psi, b) = if alc == ordinary {
            (psi.clone(), b.clone())
        } else {
            (
                psi_matrix(p, &alc, order)?.series,
                alcove_b(p, &alc, order)?,
            )
        };
        if !qde_residual(p, n, &psi, &conj(&b)).is_zero() {
            return Err(Error::CalibrationInconsistent(format!(
                "residual nonzero on {alc}"
            )));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use num_traits::One;

    fn params() -> Params<Rat> {
        Params::new(rat(3, 7), rat(5, 11), rat(2, 13))
    }

    #[test]
    fn small_qde() {
        let p = params();
        for n in 1..=2usize {
            for s in [rat(-1, 2 * n as i64), rat(1, 2 * n as i64)] {
                let a = Alcove::containing(n, &s).unwrap();
                let o = verify_qde(&p, &a, 2).unwrap();
                assert!(o.residual.is_zero(), "n={n} alcove {a}");
                assert!(o.cx_is_one());
            }
        }
    }

    #[test]
    fn calibration_is_trivial() {
        let p = params();
        for n in 1..=2 {
            let s = calibrate_basis(&p, n, 2).unwrap();
            assert!(s.iter().all(|x| x.is_one()));
        }
    }
}
