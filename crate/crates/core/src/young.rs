//! Partitions, boxes, the ρ-order, admissible trees, reverse plane partitions,
//! walls and polarization data for Hilb^n(C^2).

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{fmt_rat, rat, Field, Rat};
use crate::params::{ahat_class, lambda_bullet, HalfMonomial, Params, SignedClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Boxes in row-major order; the index of a box in this list is its label.
    pub fn boxes(&self) -> Vec<Cell> {
        let mut v = Vec::with_capacity(self.size());
        for (i, &l) in self.0.iter().enumerate() {
            for j in 0..l {
                v.push(Cell {
                    x: i as i64 + 1,
                    y: j as i64 + 1,
                });
            }
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let m = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..m)
                .map(|j| self.0.iter().filter(|&&r| r > j).count())
                .collect(),
        )
    }

    /// Dominance order: `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `z_λ = ∏ k^{m_k} m_k!`.
    pub fn z_factor(&self) -> u128 {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts
            .iter()
            .map(|(&k, &m)| (k as u128).pow(m) * (1..=m as u128).product::<u128>())
            .product()
    }

    /// Remove one part equal to `k`, if present.
    pub fn remove_part(&self, k: usize) -> Option<Self> {
        let i = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(Partition(v))
    }

    pub fn add_part(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.push(k);
        Partition::new(v)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Partition::new(parts.clone());
        if p.0 != parts {
            return Err(Error::Parse(format!(
                "partition {s:?} is not weakly decreasing and positive"
            )));
        }
        Ok(p)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `n`, lexicographically decreasing: `(n), (n-1,1), …, (1^n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A box `(x, y)`: row `x`, column `y`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub fn content(&self) -> i64 {
        self.x - self.y
    }

    pub fn height(&self) -> i64 {
        self.x + self.y - 2
    }

    /// `φ = t1^{y−1} t2^{x−1}` as half-exponents.
    pub fn weight(&self) -> HalfMonomial {
        HalfMonomial::new(2 * (self.y - 1), 2 * (self.x - 1), 0)
    }

    /// `φ^{1/2}` as half-exponents.
    pub fn sqrt_weight(&self) -> HalfMonomial {
        HalfMonomial::new(self.y - 1, self.x - 1, 0)
    }

    pub fn rho(&self) -> RhoValue {
        rho_of_weight(2 * (self.y - 1), 2 * (self.x - 1))
    }
}

/// `ρ = (main, ε)` compared lexicographically; `ε` is an exact infinitesimal slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RhoValue {
    pub main: Rat,
    pub eps: Rat,
}

impl RhoValue {
    pub fn shift(&self, k: i64) -> Self {
        RhoValue {
            main: self.main.clone() + Rat::from_integer(k.into()),
            eps: self.eps.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.main.is_positive() || (self.main.is_zero() && self.eps.is_positive())
    }
}

impl fmt::Display for RhoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.main), fmt_rat(&self.eps))
    }
}

/// Exponent of `a` in `t1^{α/2} t2^{β/2}` with `t1 = a ħ^{1/2}`, `t2 = ħ^{1/2}/a`.
pub fn a_exponent(alpha: i64, beta: i64) -> Rat {
    rat(alpha - beta, 2)
}

/// ρ of the weight `t1^{α/2} t2^{β/2} = a^e ħ^{k/2}`: `(−e, −k/2)`.
pub fn rho_of_weight(alpha: i64, beta: i64) -> RhoValue {
    RhoValue {
        main: rat(beta - alpha, 2),
        eps: rat(-(alpha + beta), 4),
    }
}

/// A rooted spanning tree of the box graph, oriented away from the corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedTree {
    /// `(tail, head)` box indices.
    pub edges: Vec<(usize, usize)>,
    pub kappa: i64,
    /// Size of the subtree hanging from each box (including it).
    pub subtree_size: Vec<usize>,
    /// Box indices in the subtree of each box.
    pub subtree: Vec<Vec<usize>>,
}

impl OrientedTree {
    pub fn sign(&self) -> i64 {
        if self.kappa % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `l_e` for the edge with the given head.
    pub fn l(&self, head: usize) -> usize {
        self.subtree_size[head]
    }

    /// `m_e = −Σ_{a ∈ [h(e), t]} d_a`.
    pub fn m(&self, head: usize, d: &[i64]) -> i64 {
        -self.subtree[head].iter().map(|&a| d[a]).sum::<i64>()
    }
}

/// The admissible trees of `λ`: the box skeleton with one edge removed from each L-shape.
pub fn admissible_trees(lam: &Partition) -> Vec<OrientedTree> {
    let bs = lam.boxes();
    let n = bs.len();
    let idx: BTreeMap<Cell, usize> = bs.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let at = |x: i64, y: i64| idx.get(&Cell { x, y }).copied();
    let mut edges = Vec::new();
    for b in &bs {
        if let Some(j) = at(b.x + 1, b.y) {
            edges.push((idx[b], j));
        }
        if let Some(j) = at(b.x, b.y + 1) {
            edges.push((idx[b], j));
        }
    }
    let mut shapes = Vec::new();
    for b in &bs {
        if let (Some(d), Some(dr)) = (at(b.x + 1, b.y), at(b.x + 1, b.y + 1)) {
            shapes.push([(idx[b], d), (d, dr)]);
        }
    }
    let mut out = Vec::with_capacity(1 << shapes.len());
    for mask in 0..(1usize << shapes.len()) {
        // Bit k of `mask`, read from the first shape, selects which edge is dropped.
        let removed: Vec<(usize, usize)> = shapes
            .iter()
            .enumerate()
            .map(|(k, s)| s[(mask >> (shapes.len() - 1 - k)) & 1])
            .collect();
        let mut adj = vec![Vec::new(); n];
        for e in edges.iter().filter(|e| !removed.contains(e)) {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        let mut parent = vec![usize::MAX; n];
        let mut order = vec![0usize];
        parent[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in &adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    order.push(v);
                }
            }
        }
        assert_eq!(order.len(), n, "admissible tree must span");
        let mut subtree: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        for &u in order.iter().rev().take(n - 1) {
            let s = std::mem::take(&mut subtree[u]);
            subtree[parent[u]].extend(s.iter().copied());
            subtree[u] = s;
        }
        for s in subtree.iter_mut() {
            s.sort_unstable();
        }
        let tree_edges: Vec<(usize, usize)> = (1..n).map(|v| (parent[v], v)).collect();
        let kappa = tree_edges
            .iter()
            .filter(|&&(t, h)| {
                let (t, h) = (bs[t], bs[h]);
                (t.x == h.x && h.y < t.y) || (t.y == h.y && h.x < t.x)
            })
            .count() as i64;
        out.push(OrientedTree {
            edges: tree_edges,
            kappa,
            subtree_size: subtree.iter().map(|s| s.len()).collect(),
            subtree,
        });
    }
    out
}

/// Reverse plane partitions of shape `λ` with total at most `max_total`,
/// as degree vectors in box order, lexicographic.
pub fn rpp_enumerate(lam: &Partition, max_total: usize) -> Vec<Vec<usize>> {
    let bs = lam.boxes();
    let idx: BTreeMap<Cell, usize> = bs.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let preds: Vec<Vec<usize>> = bs
        .iter()
        .map(|b| {
            [Cell { x: b.x - 1, y: b.y }, Cell { x: b.x, y: b.y - 1 }]
                .iter()
                .filter_map(|c| idx.get(c).copied())
                .collect()
        })
        .collect();
    fn rec(
        i: usize,
        cur: &mut Vec<usize>,
        tot: usize,
        max: usize,
        preds: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == preds.len() {
            out.push(cur.clone());
            return;
        }
        let lo = preds[i].iter().map(|&j| cur[j]).max().unwrap_or(0);
        for v in lo..=max.saturating_sub(tot) {
            if tot + v > max {
                break;
            }
            cur.push(v);
            rec(i + 1, cur, tot + v, max, preds, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, &mut Vec::new(), 0, max_total, &preds, &mut out);
    out
}

/// Is `d` a reverse plane partition of shape `λ`?
pub fn is_rpp(lam: &Partition, d: &[usize]) -> bool {
    let bs = lam.boxes();
    let idx: BTreeMap<Cell, usize> = bs.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    bs.iter().enumerate().all(|(i, b)| {
        [Cell { x: b.x + 1, y: b.y }, Cell { x: b.x, y: b.y + 1 }]
            .iter()
            .all(|c| idx.get(c).is_none_or(|&j| d[i] <= d[j]))
    })
}

/// A wall `num/den` with `den ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    pub num: i64,
    pub den: i64,
}

impl Wall {
    pub fn from_rat(r: &Rat) -> Self {
        let n: i64 = r.numer().try_into().expect("wall numerator fits i64");
        let d: i64 = r.denom().try_into().expect("wall denominator fits i64");
        Wall { num: n, den: d }
    }

    pub fn value(&self) -> Rat {
        rat(self.num, self.den)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.value()))
    }
}

/// Elements of `Wall_n` in the half-open interval `[lo, hi)`, ascending.
pub fn walls_in(n: usize, lo: &Rat, hi: &Rat) -> Vec<Wall> {
    let mut out = std::collections::BTreeSet::new();
    for d in 1..=n as i64 {
        let dr = Rat::from_integer(d.into());
        let start = (lo.clone() * &dr).floor().to_integer();
        let end = (hi.clone() * &dr).ceil().to_integer();
        let mut p = start;
        while p <= end {
            let w = Rat::new(p.clone(), d.into());
            if &w >= lo && &w < hi {
                out.insert(w);
            }
            p += 1;
        }
    }
    let mut v: Vec<Rat> = out.into_iter().collect();
    v.sort();
    v.iter().map(Wall::from_rat).collect()
}

pub fn is_wall(n: usize, s: &Rat) -> bool {
    s.denom() <= &n.into()
}

/// An open interval between consecutive walls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alcove {
    pub n: usize,
    pub lo: Rat,
    pub hi: Rat,
}

impl Alcove {
    pub fn containing(n: usize, s: &Rat) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if is_wall(n, s) {
            return Err(Error::SlopeOnWall(fmt_rat(s)));
        }
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for d in 1..=n as i64 {
            let dr = Rat::from_integer(d.into());
            let f = Rat::new((s.clone() * &dr).floor().to_integer(), d.into());
            let c = f.clone() + Rat::new(1.into(), d.into());
            if lo.as_ref().is_none_or(|l| &f > l) {
                lo = Some(f);
            }
            if hi.as_ref().is_none_or(|h| &c < h) {
                hi = Some(c);
            }
        }
        Ok(Alcove {
            n,
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    /// The mediant of the endpoints; never a wall.
    pub fn slope(&self) -> Rat {
        Rat::new(
            self.lo.numer() + self.hi.numer(),
            self.lo.denom() + self.hi.denom(),
        )
    }

    /// Walls in `[s − 1, s)`, ascending.
    pub fn window(&self) -> Vec<Wall> {
        let s = self.slope();
        walls_in(self.n, &(s.clone() - Rat::one()), &s)
    }

    pub fn lower_wall(&self) -> Wall {
        Wall::from_rat(&self.lo)
    }

    pub fn upper_wall(&self) -> Wall {
        Wall::from_rat(&self.hi)
    }

    /// The alcove across the upper wall.
    pub fn above(&self) -> Self {
        let s = self.hi.clone() + rat(1, 4 * (self.n * self.n) as i64 + 4);
        Alcove::containing(self.n, &s).unwrap()
    }

    pub fn shift(&self, k: i64) -> Self {
        let kr = Rat::from_integer(k.into());
        Alcove {
            n: self.n,
            lo: self.lo.clone() + &kr,
            hi: self.hi.clone() + kr,
        }
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.lo), fmt_rat(&self.hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    Std,
    Opp,
}

/// One signed term of a polarization class written in Chern roots:
/// `sign · t1^{α/2} t2^{β/2} ∏ x_a^{e_a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTerm {
    pub sign: i64,
    pub alpha: i64,
    pub beta: i64,
    pub x: Vec<(usize, i64)>,
}

/// `T^{1/2} = t2^{−1} V*⊗V + V − V*⊗V`, or its opposite `ħ^{−1}(T^{1/2})^*`.
pub fn polarization_terms(n: usize, pol: Polarization) -> Vec<ClassTerm> {
    let mut v = Vec::new();
    let xs = |a: usize, b: usize, ea: i64, eb: i64| -> Vec<(usize, i64)> {
        if a == b {
            if ea + eb == 0 {
                vec![]
            } else {
                vec![(a, ea + eb)]
            }
        } else {
            vec![(a, ea), (b, eb)]
        }
    };
    for a in 0..n {
        for b in 0..n {
            match pol {
                Polarization::Std => {
                    v.push(ClassTerm {
                        sign: 1,
                        alpha: 0,
                        beta: -2,
                        x: xs(a, b, -1, 1),
                    });
                    v.push(ClassTerm {
                        sign: -1,
                        alpha: 0,
                        beta: 0,
                        x: xs(a, b, -1, 1),
                    });
                }
                Polarization::Opp => {
                    v.push(ClassTerm {
                        sign: 1,
                        alpha: -2,
                        beta: 0,
                        x: xs(a, b, 1, -1),
                    });
                    v.push(ClassTerm {
                        sign: -1,
                        alpha: -2,
                        beta: -2,
                        x: xs(a, b, 1, -1),
                    });
                }
            }
        }
        match pol {
            Polarization::Std => v.push(ClassTerm {
                sign: 1,
                alpha: 0,
                beta: 0,
                x: vec![(a, 1)],
            }),
            Polarization::Opp => v.push(ClassTerm {
                sign: 1,
                alpha: -2,
                beta: -2,
                x: vec![(a, -1)],
            }),
        }
    }
    v
}

/// Restrictions of polarization data to a fixed point.
#[derive(Clone, Debug)]
pub struct PolarizationData {
    pub pol: Polarization,
    /// `det T^{1/2}_{ρ>0, λ} = ∏ x_a^{d_a}`.
    pub d: Vec<i64>,
    /// `det T^{1/2}` restricted to `λ`, as half-exponents of `t1, t2`.
    pub det_t12: HalfMonomial,
    /// Weights of `T^{1/2}|_λ` with multiplicity (after cancellation).
    pub half: BTreeMap<(i64, i64), i64>,
    /// Weights of `T_λ X = T^{1/2} + ħ^{−1}(T^{1/2})^*`.
    pub tangent: BTreeMap<(i64, i64), i64>,
}

fn add_weight(m: &mut BTreeMap<(i64, i64), i64>, k: (i64, i64), v: i64) {
    let e = m.entry(k).or_insert(0);
    *e += v;
    if *e == 0 {
        m.remove(&k);
    }
}

/// `w ↦ ħ^{−1} w^{−1}` on half-exponents.
pub fn dual_hbar(k: (i64, i64)) -> (i64, i64) {
    (-k.0 - 2, -k.1 - 2)
}

pub fn polarization_data(lam: &Partition, pol: Polarization) -> PolarizationData {
    let bs = lam.boxes();
    let n = bs.len();
    let ws: Vec<(i64, i64)> = bs.iter().map(|b| (2 * (b.y - 1), 2 * (b.x - 1))).collect();
    let mut d = vec![0i64; n];
    let mut det = (0i64, 0i64);
    let mut half = BTreeMap::new();
    for t in polarization_terms(n, pol) {
        let mut w = (t.alpha, t.beta);
        for &(a, e) in &t.x {
            w.0 += e * ws[a].0;
            w.1 += e * ws[a].1;
        }
        add_weight(&mut half, w, t.sign);
        det.0 += t.sign * w.0;
        det.1 += t.sign * w.1;
        if rho_of_weight(w.0, w.1).is_positive() {
            for &(a, e) in &t.x {
                d[a] += t.sign * e;
            }
        }
    }
    let mut tangent = half.clone();
    for (&k, &v) in &half {
        add_weight(&mut tangent, dual_hbar(k), v);
    }
    PolarizationData {
        pol,
        d,
        det_t12: HalfMonomial::new(det.0, det.1, 0),
        half,
        tangent,
    }
}

impl PolarizationData {
    pub fn tangent_class(&self) -> SignedClass {
        let mut c = SignedClass::default();
        for (&(a, b), &v) in &self.tangent {
            let m = HalfMonomial::new(a, b, 0);
            for _ in 0..v.abs() {
                if v > 0 {
                    c.plus.push(m.clone());
                } else {
                    c.minus.push(m.clone());
                }
            }
        }
        c
    }

    pub fn lambda_t<F: Field>(&self, p: &Params<F>) -> Result<F> {
        lambda_bullet(&self.tangent_class(), p)
    }

    pub fn ahat_t<F: Field>(&self, p: &Params<F>) -> Result<F> {
        ahat_class(&self.tangent_class(), p)
    }
}

/// `gcd` helper for lattice vectors.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let c: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(
            partitions(3),
            vec![
                Partition::new(vec![3]),
                Partition::new(vec![2, 1]),
                Partition::new(vec![1, 1, 1])
            ]
        );
    }

    #[test]
    fn weights_of_431() {
        let lam = Partition::new(vec![4, 3, 1]);
        let ws: Vec<HalfMonomial> = lam.boxes().iter().map(|b| b.weight()).collect();
        for w in [
            HalfMonomial::new(6, 0, 0),
            HalfMonomial::new(0, 4, 0),
            HalfMonomial::new(4, 2, 0),
        ] {
            assert!(ws.contains(&w));
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(
            Cell { x: 1, y: 1 }.rho(),
            RhoValue {
                main: rat(0, 1),
                eps: rat(0, 1)
            }
        );
        let b = Cell { x: 1, y: 2 };
        assert_eq!((b.content(), b.height()), (-1, 1));
        assert_eq!(
            b.rho(),
            RhoValue {
                main: rat(-1, 1),
                eps: rat(-1, 2)
            }
        );
    }

    #[test]
    fn trees_of_431() {
        let ts = admissible_trees(&Partition::new(vec![4, 3, 1]));
        assert_eq!(ts.len(), 4);
        let mut k: Vec<i64> = ts.iter().map(|t| t.kappa).collect();
        k.sort();
        assert_eq!(k, vec![0, 1, 1, 2]);
        let mut s: Vec<i64> = ts.iter().map(|t| t.sign()).collect();
        s.sort();
        assert_eq!(s, vec![-1, -1, 1, 1]);
    }

    #[test]
    fn small_trees() {
        let t = admissible_trees(&Partition::new(vec![1]));
        assert_eq!(t.len(), 1);
        assert!(t[0].edges.is_empty());
        assert_eq!(t[0].kappa, 0);
        assert_eq!(admissible_trees(&Partition::new(vec![2])).len(), 1);
    }

    #[test]
    fn rpp_examples() {
        let l = Partition::new(vec![1]);
        assert_eq!(
            rpp_enumerate(&l, 3),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        let l = Partition::new(vec![4, 3, 1]);
        assert_eq!(rpp_enumerate(&l, 0), vec![vec![0; 8]]);
        let fig = vec![0, 1, 2, 4, 1, 1, 2, 3];
        assert!(is_rpp(&l, &fig));
        assert_eq!(fig.iter().sum::<usize>(), 14);
        assert!(rpp_enumerate(&l, 14).contains(&fig));
    }

    #[test]
    fn window_walls() {
        let a = Alcove::containing(3, &rat(-1, 6)).unwrap();
        let w: Vec<String> = a.window().iter().map(|w| w.to_string()).collect();
        assert_eq!(w, vec!["-1", "-2/3", "-1/2", "-1/3"]);
        let a = Alcove::containing(3, &rat(2, 5)).unwrap();
        let w: Vec<String> = a.window().iter().map(|w| w.to_string()).collect();
        assert_eq!(w, vec!["-1/2", "-1/3", "0", "1/3"]);
        let a = Alcove::containing(2, &rat(2, 5)).unwrap();
        assert_eq!((a.lo.clone(), a.hi.clone()), (rat(0, 1), rat(1, 2)));
        assert!(Alcove::containing(2, &rat(1, 2)).is_err());
        assert_eq!(walls_in(1, &rat(-2, 1), &rat(2, 1)).len(), 4);
    }

    #[test]
    fn single_box_polarization() {
        let d = polarization_data(&Partition::new(vec![1]), Polarization::Std);
        assert_eq!(d.d, vec![0]);
        let tc = d.tangent_class();
        assert!(tc.minus.is_empty());
        let mut p = tc.plus.clone();
        p.sort_by_key(|m| (m.a, m.b));
        assert_eq!(
            p,
            vec![HalfMonomial::new(-2, 0, 0), HalfMonomial::new(0, -2, 0)]
        );
    }
}
