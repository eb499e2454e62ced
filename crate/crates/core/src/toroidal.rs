//! Quantum toroidal gl(1) on Fock space: lattice generators `e_{(a,b)}`, the
//! wall Heisenberg subalgebras, wall-crossing operators `B_w(z)` and their
//! ordered products over an alcove window.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::fock::{ahat_pow, Fock, GradedOp};
use crate::linalg::Mat;
use crate::ratfunc::RatFunc;
use crate::vertex::ZMat;
use crate::young::{Alcove, Wall};

pub type V2 = (i64, i64);

fn det(x: V2, y: V2) -> i64 {
    x.0 * y.1 - x.1 * y.0
}

fn eps(x: V2) -> i64 {
    if x.0 > 0 || (x.0 == 0 && x.1 > 0) {
        1
    } else {
        -1
    }
}

fn gcd(x: V2) -> i64 {
    x.0.gcd(&x.1)
}

/// `α(x, y)`: the central correction in `[e_x, e_y]` for an empty triangle.
pub fn alpha(x: V2, y: V2) -> V2 {
    let s = (x.0 + y.0, x.1 + y.1);
    let (ex, ey, es) = (eps(x), eps(y), eps(s));
    let v = (
        ex * x.0 + ey * y.0 - es * s.0,
        ex * x.1 + ey * y.1 - es * s.1,
    );
    let f = if det(x, y) > 0 { ex } else { ey };
    debug_assert!(v.0 % 2 == 0 && v.1 % 2 == 0);
    (f * v.0 / 2, f * v.1 / 2)
}

/// Does the triangle `0, x, x + y` contain no lattice points besides its vertices
/// and edge points?
pub fn interior_empty(x: V2, y: V2) -> bool {
    let a2 = det(x, y).abs();
    let b = gcd(x).abs() + gcd(y).abs() + gcd((y.0 - x.0, y.1 - x.1)).abs();
    a2 - b + 2 == 0
}

/// `n_k = â(t1^k) â(t2^k) â(ħ^k) / k` in the sign convention of the Fock action.
pub fn n_coef<F: Field>(fock: &Fock<F>, k: i64) -> F {
    ahat_pow(&fock.t1h, k) * ahat_pow(&fock.t2h, k) * ahat_pow(&fock.hbh(), k) / F::from_int(k)
}

/// The generators `e_v` on a Fock space, built lazily and cached.
pub struct Lattice<'a, F> {
    pub fock: &'a Fock<F>,
    /// `K_{(1,0)}`, `K_{(0,1)}`.
    pub k10: F,
    pub k01: F,
    cache: HashMap<V2, GradedOp<F>>,
}

impl<'a, F: Field> Lattice<'a, F> {
    /// Central scalars `K_{(1,0)} = ħ^{1/2}`, `K_{(0,1)} = 1`.
    pub fn new(fock: &'a Fock<F>) -> Self {
        Lattice {
            fock,
            k10: fock.hbh(),
            k01: F::one(),
            cache: HashMap::new(),
        }
    }

    pub fn central(&self, v: V2) -> F {
        self.k10.powi(v.0) * self.k01.powi(v.1)
    }

    fn comm(&mut self, x: V2, y: V2) -> Result<GradedOp<F>> {
        let a = self.e(x)?;
        let b = self.e(y)?;
        Ok(a.commutator(&b, self.fock))
    }

    /// `e_{(a,b)}`.
    pub fn e(&mut self, v: V2) -> Result<GradedOp<F>> {
        if v == (0, 0) {
            return Err(Error::Invalid("e_(0,0) is not a generator".into()));
        }
        if let Some(r) = self.cache.get(&v) {
            return Ok(r.clone());
        }
        let f = self.fock;
        let (a, b) = v;
        let r = if b == 0 {
            f.horizontal(a)
        } else if a == 0 {
            f.vertical(b)
        } else {
            let k = gcd(v).abs();
            let w = (a / k, b / k);
            if k == 1 {
                let (x, y) = split(v);
                let c = self.comm(x, y)?;
                let s = F::from_int(det(y, x).signum()) * self.central(alpha(x, y));
                c.scale(&s.inv())
            } else if k == 2 {
                let x = neighbour(w);
                let y = (a - x.0, b - x.1);
                debug_assert!(interior_empty(x, y));
                let c = self.comm(x, y)?;
                let n1 = n_coef(f, 1);
                let s = F::from_int(det(y, x).signum()) * self.central(alpha(x, y));
                let phi = c.scale(&(n1.clone() / s));
                let ew = self.e(w)?;
                let sq = ew.compose(&ew, f);
                phi.sub(&sq.scale(&(n1.clone() * &n1 / F::from_int(2))))
                    .scale(&n_coef(f, 2).inv())
            } else {
                self.inverse_ad(v, w)?
            }
        };
        self.cache.insert(v, r.clone());
        Ok(r)
    }

    /// Solve `[e_{(0,±1)}, X] = e_{v ± (0,1)}` for `X` in the `H` basis.
    fn inverse_ad(&mut self, v: V2, w: V2) -> Result<GradedOp<F>> {
        if w.0.abs() != 1 {
            return Err(Error::Invalid(format!(
                "no construction path for e_({},{})",
                v.0, v.1
            )));
        }
        let f = self.fock;
        let sg = v.0.signum();
        let r = self.e((v.0, v.1 + sg))?;
        let mut out = GradedOp {
            shift: v.0,
            blocks: Default::default(),
        };
        for (&g, blk) in &r.blocks {
            let tg = g as i64 - v.0;
            if tg < 0 {
                out.blocks.insert(g, Mat::zeros(0, f.dim(g)));
                continue;
            }
            let tg = tg as usize;
            let rh = f.to_h_basis(blk, g, tg);
            let et: Vec<F> = f.bases[tg]
                .iter()
                .map(|l| f.vertical_eigenvalue(sg, l))
                .collect();
            let es: Vec<F> = f.bases[g]
                .iter()
                .map(|l| f.vertical_eigenvalue(sg, l))
                .collect();
            let xh = Mat::from_fn(et.len(), es.len(), |i, j| {
                rh[(i, j)].clone() / (et[i].clone() - &es[j])
            });
            out.blocks.insert(g, f.from_h_basis(&xh, g, tg));
        }
        Ok(out)
    }

    /// `[e_{k v}, e_{−l v}]` against `δ_{kl}(K^{−1} − K)/n_k` on every available grade,
    /// for a primitive direction `v = (den, num)`; returns the failing `(k, l, grade)` triples.
    pub fn heisenberg_failures(&mut self, v: V2, kmax: i64) -> Result<Vec<(i64, i64, usize)>> {
        let (den, num) = v;
        let mut bad = Vec::new();
        for k in 1..=kmax {
            for l in 1..=kmax {
                let a = self.e((k * den, k * num))?;
                let b = self.e((-l * den, -l * num))?;
                let c = a.commutator(&b, self.fock);
                for (&g, m) in &c.blocks {
                    let ok = if k == l {
                        let kk = self.central((k * den, k * num));
                        let target = (kk.inv() - kk) / n_coef(self.fock, k);
                        m.rows() == m.cols() && *m == Mat::identity(m.rows()).scale(&target)
                    } else {
                        m.is_zero()
                    };
                    if !ok {
                        bad.push((k, l, g));
                    }
                }
            }
        }
        Ok(bad)
    }
}

fn block<F: Field>(op: &GradedOp<F>, g: usize) -> Result<&Mat<F>> {
    op.block(g)
        .ok_or_else(|| Error::Invalid(format!("operator undefined on grade {g}")))
}

/// A split `v = x + y` into primitive vectors spanning an empty triangle.
pub fn split(v: V2) -> (V2, V2) {
    let (a, b) = v;
    let xs: Vec<i64> = if a > 0 {
        (0..=a).collect()
    } else {
        (a..=0).collect()
    };
    let mut cands = Vec::new();
    for &x1 in &xs {
        for x2 in b.min(0)..=b.max(0) {
            let x = (x1, x2);
            let y = (a - x1, b - x2);
            if x == (0, 0) || y == (0, 0) || gcd(x).abs() != 1 || gcd(y).abs() != 1 {
                continue;
            }
            if det(x, y).abs() != 1 {
                continue;
            }
            cands.push((x, y));
        }
    }
    cands.sort_by_key(|(x, _)| x.0.abs() + x.1.abs());
    cands[0]
}

/// A primitive `x` with `|det(x, w)| = 1` and `2w − x` on the same side.
pub fn neighbour(w: V2) -> V2 {
    let (a, b) = w;
    let xs: Vec<i64> = if a > 0 {
        (0..=a).collect()
    } else {
        (a..=0).collect()
    };
    let mut best: Option<(i64, V2)> = None;
    for &x1 in &xs {
        for x2 in (-b.abs() - 2)..=(b.abs() + 2) {
            let x = (x1, x2);
            if x == (0, 0) || gcd(x).abs() != 1 || det(x, w).abs() != 1 {
                continue;
            }
            let y0 = 2 * a - x1;
            if (a > 0 && (0..=2 * a).contains(&y0)) || (a < 0 && (2 * a..=0).contains(&y0)) {
                let c = x1.abs() + x2.abs();
                if best.is_none_or(|(bc, _)| c < bc) {
                    best = Some((c, x));
                }
            }
        }
    }
    best.expect("neighbour exists").1
}

/// Coefficient series `c_k(z) = Σ_{j≥1} n_k q^{−n k j} ħ^{d k (1−j)/2} z^{d k j}` truncated at `order`.
fn wall_coef<F: Field>(fock: &Fock<F>, qh: &F, wall: &Wall, k: i64, order: usize) -> Vec<F> {
    let mut c = vec![F::zero(); order + 1];
    let nk = n_coef(fock, k);
    let hbh = fock.hbh();
    let mut j = 1;
    while (wall.den * k * j) as usize <= order {
        let t = nk.clone() * qh.powi(-2 * wall.num * k * j) * hbh.powi(wall.den * k * (1 - j));
        let e = (wall.den * k * j) as usize;
        c[e] = c[e].clone() + t;
        j += 1;
    }
    c
}

fn ser_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len();
    let mut c = vec![F::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for j in 0..n - i {
            c[i + j] = c[i + j].clone() + x.clone() * &b[j];
        }
    }
    c
}

/// `B_w(z)` on `F_n` in the power-sum basis, to order `order` in `z`.
pub fn wall_operator<F: Field>(
    lat: &mut Lattice<'_, F>,
    qh: &F,
    wall: &Wall,
    n: usize,
    order: usize,
) -> Result<ZMat<F>> {
    let fock = lat.fock;
    let dim = fock.dim(n);
    let mut res = ZMat::identity(dim, order);
    let d = wall.den as usize;
    let kmax = n / d;
    let cks: Vec<Vec<F>> = (1..=kmax as i64)
        .map(|k| wall_coef(fock, qh, wall, k, order))
        .collect();
    let cap = n.min(order);
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((ms, deg)) = stack.pop() {
        if ms.len() == kmax {
            if deg == 0 {
                continue;
            }
            let mut g = n;
            let mut m = Mat::identity(dim);
            for (i, &c) in ms.iter().enumerate() {
                let kk = (i + 1) as i64;
                for _ in 0..c {
                    let a = lat.e((kk * wall.den, kk * wall.num))?;
                    m = block(&a, g)?.mul(&m);
                    g -= (kk * wall.den) as usize;
                }
            }
            for (i, &c) in ms.iter().enumerate() {
                let kk = (i + 1) as i64;
                for _ in 0..c {
                    let a = lat.e((-kk * wall.den, -kk * wall.num))?;
                    m = block(&a, g)?.mul(&m);
                    g += (kk * wall.den) as usize;
                }
            }
            let mut coef = vec![F::zero(); order + 1];
            coef[0] = F::one();
            for (i, &c) in ms.iter().enumerate() {
                for _ in 0..c {
                    coef = ser_mul(&coef, &cks[i]);
                }
                let fact = F::from_int((1..=c as i64).product());
                coef = coef.into_iter().map(|x| x / fact.clone()).collect();
            }
            for (z, cz) in coef.iter().enumerate() {
                if !cz.is_zero() {
                    res.coeffs[z] = res.coeffs[z].add(&m.scale(cz));
                }
            }
            continue;
        }
        let k = ms.len() + 1;
        let mut c = 0;
        while deg + k * d * c <= cap {
            let mut next = ms.clone();
            next.push(c);
            stack.push((next, deg + k * d * c));
            c += 1;
        }
    }
    Ok(res)
}

/// Rewrite a power-sum-basis series on `F_n` in the `H` (fixed-point) basis.
pub fn to_fixed_point_basis<F: Field>(fock: &Fock<F>, b: &ZMat<F>, n: usize) -> ZMat<F> {
    ZMat {
        coeffs: b.coeffs.iter().map(|m| fock.to_h_basis(m, n, n)).collect(),
    }
}

/// `B^∇(z) = ∏_{w ∈ [s−1, s)} B_w(z)` with walls increasing left to right, in the fixed-point basis.
pub fn alcove_operator<F: Field>(
    lat: &mut Lattice<'_, F>,
    qh: &F,
    alcove: &Alcove,
    order: usize,
) -> Result<ZMat<F>> {
    let n = alcove.n;
    let mut acc = ZMat::identity(lat.fock.dim(n), order);
    for w in alcove.window() {
        acc = acc.mul(&wall_operator(lat, qh, &w, n, order)?);
    }
    Ok(to_fixed_point_basis(lat.fock, &acc, n))
}

/// `B_w` in the fixed-point basis.
pub fn wall_operator_fixed<F: Field>(
    lat: &mut Lattice<'_, F>,
    qh: &F,
    wall: &Wall,
    n: usize,
    order: usize,
) -> Result<ZMat<F>> {
    let b = wall_operator(lat, qh, wall, n, order)?;
    Ok(to_fixed_point_basis(lat.fock, &b, n))
}

/// Is `B_w(z q^w)` free of `q`? `b` is `B_w(z)` computed with `Q` symbolic.
pub fn shifted_wall_is_q_constant(b: &ZMat<RatFunc<Rat>>, wall: &Wall) -> bool {
    b.coeffs.iter().enumerate().all(|(m, c)| {
        let twice = 2 * m as i64 * wall.num;
        if c.is_zero() {
            return true;
        }
        if twice % wall.den != 0 {
            return false;
        }
        let shift = RatFunc::var().powi(twice / wall.den);
        (0..c.rows()).all(|i| (0..c.cols()).all(|j| (c[(i, j)].clone() * &shift).is_constant()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::young::walls_in;

    #[test]
    fn walls_with_large_denominator_are_trivial() {
        let f = Fock::new(rat(3, 7), rat(5, 11), 3).unwrap();
        let mut lat = Lattice::new(&f);
        for w in walls_in(5, &rat(-1, 1), &rat(1, 1))
            .into_iter()
            .filter(|w| w.den > 3)
        {
            let b = wall_operator(&mut lat, &rat(2, 13), &w, 3, 3).unwrap();
            assert_eq!(b, ZMat::identity(f.dim(3), 3), "{w}");
        }
    }

    #[test]
    fn b_starts_at_order_den() {
        let f = Fock::new(rat(3, 7), rat(5, 11), 3).unwrap();
        let mut lat = Lattice::new(&f);
        for w in walls_in(3, &rat(-1, 1), &rat(1, 1)) {
            let b = wall_operator(&mut lat, &rat(2, 13), &w, 3, 3).unwrap();
            let d = b.sub(&ZMat::identity(f.dim(3), 3)).valuation().unwrap();
            assert!(d >= w.den as usize, "{w}");
        }
    }

    #[test]
    fn shifted_wall_operator_is_q_free() {
        let c = |r| RatFunc::constant(r);
        let f = Fock::new(c(rat(3, 7)), c(rat(5, 11)), 2).unwrap();
        let mut lat = Lattice::new(&f);
        for w in walls_in(2, &rat(-1, 1), &rat(1, 1)) {
            let b = wall_operator(&mut lat, &RatFunc::var(), &w, 2, 4).unwrap();
            assert!(shifted_wall_is_q_constant(&b, &w), "{w}");
        }
    }

    #[test]
    fn heisenberg_blocks_are_scalar() {
        let f = Fock::new(rat(3, 7), rat(5, 11), 4).unwrap();
        let mut lat = Lattice::new(&f);
        for v in [(1, 0), (0, 1), (1, -1), (2, -1)] {
            assert!(lat.heisenberg_failures(v, 2).unwrap().is_empty(), "{v:?}");
        }
    }
}
