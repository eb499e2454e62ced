//! The acceptance suite A1–A10.
//!
//! Every criterion is an exact identity, so the tolerance is zero throughout; what is
//! pinned is the range of `n`, the alcoves and the truncation order `D`.

use std::time::Instant;

use num_traits::{One, Zero};
use qde_core::bethe::{bethe_residual, bethe_solve, eigencheck_with};
use qde_core::field::rat;
use qde_core::fock::Fock;
use qde_core::linalg::Mat;
use qde_core::params::{Mode, ParamSpec};
use qde_core::qde::{
    adjacent_residual, alcove_b, conjugation_residual, fock_for, verify_qde, QdeOutcome,
};
use qde_core::ratfunc::RatFunc;
use qde_core::stab::{
    diagonal_oracle, fixed_roots, slope_axiom_failures, stab_matrix, stab_newton_segments,
    support_respects_dominance, Descendants,
};
use qde_core::toroidal::{shifted_wall_is_q_constant, wall_operator, Lattice};
use qde_core::vertex::{
    limit_report, line_bundle, psi_matrix, psi_with, shift_covariance_residual, ZMat,
};
use qde_core::young::{partitions, walls_in, Alcove, Polarization, Wall};
use qde_core::Field;
use qde_core::{Rat, Result};
use serde::Serialize;

pub const A1_MAX_N: usize = 4;
pub const A2_ASSERTED_N: usize = 3;
pub const A2_REPORTED_N: usize = 4;
pub const A3_MAX_N: usize = 3;
pub const A4_ORDER: usize = 3;
pub const A4_MAX_N: usize = 3;
pub const A5_ORDER: usize = 3;
pub const A5_MAX_N: usize = 3;
pub const A6_MAX_N: usize = 4;
pub const A7_ORTHOGONALITY_GRADE: usize = 6;
pub const A7_EIGENVALUE_GRADE: usize = 5;
pub const A7_HEISENBERG_GRADE: usize = 4;
pub const A7_WALL_N: usize = 3;
pub const A7_ORDER: usize = 3;
pub const A8_ORDER: usize = 2;
pub const A8_MAX_N: usize = 2;
pub const A9_ORDER: usize = 2;
pub const A9_MAX_N: usize = 3;
pub const A10_ORDER: usize = A4_ORDER;

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    /// Pinned sizes, orders and tolerance.
    pub scope: String,
    /// Conjecture-level checks are reported but only enforced in strict mode.
    pub conjecture: bool,
    pub pass: bool,
    #[serde(skip)]
    pub seconds: f64,
    pub detail: Vec<String>,
}

impl Check {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        let kind = if self.conjecture { " [conjecture]" } else { "" };
        format!(
            "{} {tag} {} [{}]{kind} ({:.1}s)",
            self.id, self.title, self.scope, self.seconds
        )
    }
}

struct Acc {
    pass: bool,
    detail: Vec<String>,
}

impl Acc {
    fn new() -> Self {
        Acc {
            pass: true,
            detail: Vec::new(),
        }
    }

    fn expect(&mut self, what: impl FnOnce() -> String, r: Result<bool>) {
        match r {
            Ok(true) => {}
            Ok(false) => {
                self.pass = false;
                self.detail.push(format!("failed: {}", what()));
            }
            Err(e) => {
                self.pass = false;
                self.detail.push(format!("error: {}: {e}", what()));
            }
        }
    }

    fn note(&mut self, s: String) {
        self.detail.push(s);
    }

    fn finish(
        self,
        id: &'static str,
        title: &'static str,
        scope: String,
        conjecture: bool,
        start: Instant,
    ) -> Check {
        Check {
            id,
            title,
            scope,
            conjecture,
            pass: self.pass,
            seconds: start.elapsed().as_secs_f64(),
            detail: self.detail,
        }
    }
}

/// Numeric draws for the given seeds.
pub fn numeric_draws(seeds: &[u64]) -> Vec<ParamSpec> {
    seeds
        .iter()
        .map(|&s| ParamSpec::draw(s, Mode::Numeric))
        .collect()
}

fn ordinary(n: usize) -> Alcove {
    Alcove::containing(n, &rat(-1, 2 * n as i64)).expect("interior slope")
}

fn positive(n: usize) -> Alcove {
    Alcove::containing(n, &rat(1, 2 * n as i64)).expect("interior slope")
}

struct StabEntry {
    seed: u64,
    n: usize,
    slope: Rat,
    pol: Polarization,
    m: Result<Mat<Rat>>,
}

fn stab_table(draws: &[ParamSpec]) -> Vec<StabEntry> {
    let mut out = Vec::new();
    for ps in draws {
        let p = ps.numeric();
        for n in 1..=A1_MAX_N.max(A2_REPORTED_N) {
            for slope in [ordinary(n).slope(), positive(n).slope()] {
                for pol in [Polarization::Std, Polarization::Opp] {
                    let m = stab_matrix(&p, n, &slope, pol);
                    out.push(StabEntry {
                        seed: ps.seed,
                        n,
                        slope: slope.clone(),
                        pol,
                        m,
                    });
                }
            }
        }
    }
    out
}

fn a1_from(draws: &[ParamSpec], table: &[StabEntry], start: Instant) -> Check {
    let mut acc = Acc::new();
    for e in table.iter().filter(|e| e.n <= A1_MAX_N) {
        let ps = draws.iter().find(|d| d.seed == e.seed).unwrap();
        let p = ps.numeric();
        let what = || format!("seed {} n={} s={} {:?}", e.seed, e.n, e.slope, e.pol);
        let r = e.m.clone().and_then(|m| {
            for (i, lam) in partitions(e.n).iter().enumerate() {
                if m[(i, i)] != diagonal_oracle(&p, lam, e.pol)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        acc.expect(what, r);
    }
    acc.finish(
        "A1",
        "diagonal axiom: Stab(λ)|_λ equals the tangent-weight oracle",
        format!("n ≤ {A1_MAX_N}, both polarizations, exact"),
        false,
        start,
    )
}

fn a2_from(table: &[StabEntry], start: Instant) -> Check {
    let mut acc = Acc::new();
    let mut reported = 0;
    let mut reported_ok = 0;
    for e in table {
        let what = || format!("seed {} n={} s={} {:?}", e.seed, e.n, e.slope, e.pol);
        let r = e.m.clone().map(|m| support_respects_dominance(&m, e.n));
        if e.n <= A2_ASSERTED_N {
            acc.expect(what, r);
        } else if e.n <= A2_REPORTED_N {
            reported += 1;
            if matches!(r, Ok(true)) {
                reported_ok += 1;
            }
        }
    }
    acc.note(format!(
        "n={A2_REPORTED_N} (reported): {reported_ok}/{reported} matrices dominance-triangular"
    ));
    acc.finish(
        "A2",
        "support of Stab(λ)|_μ is dominance-triangular",
        format!("asserted n ≤ {A2_ASSERTED_N}, reported n = {A2_REPORTED_N}, exact zeros"),
        false,
        start,
    )
}

pub fn a1(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    a1_from(draws, &stab_table(draws), start)
}

pub fn a2(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    a2_from(&stab_table(draws), start)
}

/// Slope axiom on the `a`-Newton segments. The opposite polarization is the tree
/// formula at slope `−s`, so its segments are tested with `−s`.
pub fn a3(seeds: &[u64]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    for &seed in seeds {
        let ps = ParamSpec::draw(seed, Mode::SymbolicA);
        for n in 1..=A3_MAX_N {
            for s in [rat(-1, 2 * n as i64), rat(2 * n as i64 + 1, 2 * n as i64)] {
                for pol in [Polarization::Std, Polarization::Opp] {
                    let eff = if pol == Polarization::Std {
                        s.clone()
                    } else {
                        -s.clone()
                    };
                    let r = stab_newton_segments(&ps, n, &s, pol)
                        .map(|segs| slope_axiom_failures(&segs, n, &eff));
                    let what = || format!("seed {seed} n={n} s={s} {pol:?}");
                    match r {
                        Ok(bad) if bad.is_empty() => {}
                        Ok(bad) => {
                            acc.pass = false;
                            acc.note(format!("failed: {} at {:?}", what(), bad));
                        }
                        Err(e) => acc.expect(what, Err(e)),
                    }
                }
            }
        }
    }
    acc.finish(
        "A3",
        "slope axiom: Newton segments in a are contained in the diagonal ones",
        format!("n ≤ {A3_MAX_N}, exact degrees in a"),
        false,
        start,
    )
}

/// The three alcoves of the QDE criterion for a given `n`.
pub fn qde_alcoves(n: usize) -> [Alcove; 3] {
    [ordinary(n), positive(n), ordinary(n).shift(-1)]
}

pub struct QdeRun {
    pub seed: u64,
    pub outcome: Result<QdeOutcome<Rat>>,
}

fn qde_runs(draws: &[ParamSpec]) -> Vec<QdeRun> {
    let mut out = Vec::new();
    for ps in draws {
        let p = ps.numeric();
        for n in 1..=A4_MAX_N {
            for a in qde_alcoves(n) {
                out.push(QdeRun {
                    seed: ps.seed,
                    outcome: verify_qde(&p, &a, A4_ORDER),
                });
            }
        }
    }
    out
}

fn example_windows_match() -> bool {
    let w = |v: &[(i64, i64)]| {
        v.iter()
            .map(|&(num, den)| Wall { num, den })
            .collect::<Vec<_>>()
    };
    let a = Alcove::containing(3, &rat(-1, 6)).unwrap();
    let b = Alcove::containing(3, &rat(2, 5)).unwrap();
    a.window() == w(&[(-1, 1), (-2, 3), (-1, 2), (-1, 3)])
        && b.window() == w(&[(-1, 2), (-1, 3), (0, 1), (1, 3)])
}

fn a4_from(draws: &[ParamSpec], runs: &[QdeRun], start: Instant) -> Check {
    let mut acc = Acc::new();
    acc.expect(
        || "n=3 window products match the worked example".into(),
        Ok(example_windows_match()),
    );
    for r in runs {
        let what = || match &r.outcome {
            Ok(o) => format!("seed {} n={} alcove {}", r.seed, o.alcove.n, o.alcove),
            Err(_) => format!("seed {}", r.seed),
        };
        let res = r
            .outcome
            .as_ref()
            .map(|o| o.residual.is_zero() && o.residual.order() == A4_ORDER)
            .map_err(Clone::clone);
        acc.expect(what, res);
    }
    for ps in draws {
        let p = ps.numeric();
        for n in 1..=A4_MAX_N {
            let a = ordinary(n);
            let r = (|| {
                let lo = psi_matrix(&p, &a.shift(-1), A4_ORDER)?.series;
                let hi = psi_matrix(&p, &a, A4_ORDER)?.series;
                Ok(shift_covariance_residual(&p, n, &lo, &hi)?.is_zero())
            })();
            acc.expect(
                || format!("seed {} n={n}: Ψ^(∇+1)(z) = L Ψ^∇(z/q) L^(-1)", ps.seed),
                r,
            );
        }
    }
    acc.note(format!(
        "order D={A4_ORDER}, C_X = 1, alcoves (-1/n,0), (0,1/n), (-1-1/n,-1)"
    ));
    acc.finish(
        "A4",
        "exotic QDE Ψ(zq)L = L B^∇(z) Ψ(z) holds exactly",
        format!("n ≤ {A4_MAX_N}, D = {A4_ORDER}, residual ≡ 0"),
        false,
        start,
    )
}

pub fn a4(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    a4_from(draws, &qde_runs(draws), start)
}

pub fn a5(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut count = 0;
    for ps in draws {
        let p = ps.numeric();
        for n in 1..=A5_MAX_N {
            for w in walls_in(n, &rat(-1, 1), &rat(1, 1))
                .into_iter()
                .filter(|w| w.value() > rat(-1, 1))
            {
                count += 1;
                let r = adjacent_residual(&p, n, &w, A5_ORDER).map(|m| m.is_zero());
                acc.expect(|| format!("seed {} n={n} wall {w}", ps.seed), r);
            }
        }
    }
    acc.note(format!("{count} adjacent pairs at order D={A5_ORDER}"));
    acc.finish(
        "A5",
        "adjacent alcoves: Ψ^∇ = B_w Ψ^∇'",
        format!("n ≤ {A5_MAX_N}, D = {A5_ORDER}, residual ≡ 0"),
        false,
        start,
    )
}

pub fn a6(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    for ps in draws {
        let p = ps.numeric();
        for n in 1..=A6_MAX_N {
            for a in [ordinary(n), positive(n)] {
                let r = (|| {
                    let d = Descendants::new(&p, n, &a.slope())?;
                    for (i, nu) in d.parts.iter().enumerate() {
                        let g = d.eval_at_point(&fixed_roots(&p, nu, None))?;
                        for (j, x) in g.iter().enumerate() {
                            if (i == j && !x.is_one()) || (i != j && !x.is_zero()) {
                                return Ok(false);
                            }
                        }
                    }
                    let psi = psi_with(&p, &a, &d, 0)?;
                    Ok(psi.series.coeffs[0] == Mat::identity(d.parts.len()))
                })();
                acc.expect(|| format!("seed {} n={n} alcove {a}", ps.seed), r);
            }
        }
    }
    acc.finish(
        "A6",
        "descendants are δ at fixed points and Ψ^∇(0) = 1",
        format!("n ≤ {A6_MAX_N}, exact"),
        false,
        start,
    )
}

fn column(m: &Mat<Rat>, j: usize) -> Vec<Rat> {
    (0..m.rows()).map(|i| m[(i, j)].clone()).collect()
}

pub fn a7(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    for ps in draws {
        let seed = ps.seed;
        let p = ps.numeric();
        let f = match Fock::new(p.t1h.clone(), p.t2h.clone(), A7_ORTHOGONALITY_GRADE) {
            Ok(f) => f,
            Err(e) => {
                acc.expect(|| format!("seed {seed}: Fock space"), Err(e));
                continue;
            }
        };
        let orth = (0..=A7_ORTHOGONALITY_GRADE).all(|g| {
            let m = &f.p_mac[g];
            (0..f.dim(g))
                .all(|i| (0..i).all(|j| f.inner(g, &column(m, i), &column(m, j)).is_zero()))
        });
        acc.expect(
            || format!("seed {seed}: ⟨P_λ, P_μ⟩ = 0 for |λ| ≤ {A7_ORTHOGONALITY_GRADE}"),
            Ok(orth),
        );

        // e_{0,1} on H_λ, and its eigenvalue against 1/((1−t1)(1−t2)) − Σ_□ φ_□.
        let vert = f.vertical(1);
        let (t1, t2) = (f.t1(), f.t2());
        let eig = (0..=A7_EIGENVALUE_GRADE).all(|g| {
            f.bases[g].iter().enumerate().all(|(j, lam)| {
                let ev = f.vertical_eigenvalue(1, lam);
                let boxes = lam
                    .boxes()
                    .iter()
                    .fold(Rat::zero(), |s, b| s + b.weight().eval(&p));
                let character = (Rat::one() - &t1).inv() * (Rat::one() - &t2).inv() - boxes;
                let h = column(&f.h[g], j);
                let img = vert.blocks[&g].apply(&h);
                ev == character && img.iter().zip(&h).all(|(a, b)| *a == ev.clone() * b)
            })
        });
        acc.expect(
            || format!("seed {seed}: vertical eigenvalues for |λ| ≤ {A7_EIGENVALUE_GRADE}"),
            Ok(eig),
        );

        let r = (|| {
            let f4 = Fock::new(p.t1h.clone(), p.t2h.clone(), A7_HEISENBERG_GRADE)?;
            let mut lat = Lattice::new(&f4);
            for (den, num) in [(1, 0), (0, 1), (1, -1), (2, -1)] {
                let kmax = A7_HEISENBERG_GRADE as i64 / den.max(1);
                if !lat.heisenberg_failures((den, num), kmax)?.is_empty() {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        acc.expect(
            || format!("seed {seed}: Heisenberg blocks scalar on F_n, n ≤ {A7_HEISENBERG_GRADE}"),
            r,
        );

        let r = (|| {
            let f3 = fock_for(&p, A7_WALL_N)?;
            let mut lat = Lattice::new(&f3);
            for n in 1..=A7_WALL_N {
                for w in walls_in(n + 2, &rat(-1, 1), &rat(1, 1))
                    .into_iter()
                    .filter(|w| w.den as usize > n)
                {
                    if wall_operator(&mut lat, &p.qh, &w, n, A7_ORDER)?
                        != ZMat::identity(f3.dim(n), A7_ORDER)
                    {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        acc.expect(|| format!("seed {seed}: B_w = 1 on F_n when d(w) > n"), r);

        let r = (|| {
            let c = RatFunc::constant;
            let fq = Fock::new(c(p.t1h.clone()), c(p.t2h.clone()), A7_WALL_N)?;
            let mut lat = Lattice::new(&fq);
            for n in 1..=A7_WALL_N {
                for w in walls_in(n, &rat(-1, 1), &rat(1, 1)) {
                    let b = wall_operator(&mut lat, &RatFunc::var(), &w, n, A7_ORDER)?;
                    if !shifted_wall_is_q_constant(&b, &w) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        acc.expect(|| format!("seed {seed}: B_w(z q^w) independent of q"), r);

        let r = (|| {
            for n in 1..=A7_WALL_N {
                for w in walls_in(n, &rat(-1, 1), &rat(1, 1)) {
                    if !conjugation_residual(&p, n, &w, A7_ORDER)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        acc.expect(|| format!("seed {seed}: L B_w(z/q) L^(-1) = B_(w+1)"), r);
    }
    acc.finish("A7", "Fock space: Macdonald, Heisenberg and wall-operator checks", format!("grades {A7_ORTHOGONALITY_GRADE}/{A7_EIGENVALUE_GRADE}/{A7_HEISENBERG_GRADE}, walls n = {A7_WALL_N}, D = {A7_ORDER}, exact"), false, start)
}

pub fn a8(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    for ps in draws {
        let p = ps.symbolic_q();
        for n in 1..=A8_MAX_N {
            for a in [ordinary(n), positive(n)] {
                let r = psi_matrix(&p, &a, A8_ORDER).map(|psi| {
                    let rep = limit_report(&psi.series, &a.lo);
                    rep.infinite_at_zero.is_empty() && rep.identity_at_infinity
                });
                acc.expect(|| format!("seed {} n={n} alcove {a}", ps.seed), r);
            }
        }
    }
    acc.note(format!(
        "z ↦ z q^w with w the lower wall, order D={A8_ORDER}"
    ));
    acc.finish(
        "A8",
        "limits of Ψ^∇(z q^w): finite as q → 0, identity as q → ∞",
        format!("n ≤ {A8_MAX_N}, D = {A8_ORDER}, exact limits"),
        false,
        start,
    )
}

pub fn a9(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut distinct_all = true;
    for ps in draws {
        let p = ps.numeric();
        let at_one = ps.at_q_one();
        for n in 1..=A9_MAX_N {
            for mu in partitions(n) {
                let r = bethe_solve(&p, &mu, A9_ORDER)
                    .and_then(|roots| bethe_residual(&p, &roots.x))
                    .map(|res| res.iter().all(|s| s.is_zero()));
                acc.expect(|| format!("seed {} Bethe residual at {mu}", ps.seed), r);
            }
            let a = ordinary(n);
            let r = (|| {
                let desc = Descendants::new(&p, n, &a.slope())?;
                let b = alcove_b(&at_one, &a, A9_ORDER)?;
                let l = line_bundle(&p, n);
                let mut eigenvalues = Vec::new();
                for (i, mu) in partitions(n).iter().enumerate() {
                    let e = eigencheck_with(&p, &desc, &b, mu, A9_ORDER)?;
                    if !(e.holds() && e.starts_at_unit(i) && *e.eigenvalue.coeff(0) == l[(i, i)]) {
                        return Ok(false);
                    }
                    eigenvalues.push(e.eigenvalue);
                }
                let distinct = (0..eigenvalues.len())
                    .all(|i| (0..i).all(|j| eigenvalues[i] != eigenvalues[j]));
                distinct_all &= distinct;
                Ok(true)
            })();
            acc.expect(
                || {
                    format!(
                        "seed {} n={n}: eigenvector of (L B^∇)|_(q=1) at the Bethe roots",
                        ps.seed
                    )
                },
                r,
            );
        }
    }
    acc.note(format!(
        "distinct eigenvalues for all μ (conjecture, reported): {distinct_all}"
    ));
    acc.finish(
        "A9",
        "Bethe roots and eigenvectors of (L B^∇)|_(q=1)",
        format!("n ≤ {A9_MAX_N}, D = {A9_ORDER}, residual ≡ 0"),
        false,
        start,
    )
}

fn a10_from(runs: &[QdeRun], start: Instant) -> Check {
    let mut acc = Acc::new();
    for r in runs {
        if let Ok(o) = &r.outcome {
            if !o.cx_is_one() {
                acc.pass = false;
                let got =
                    o.cx.as_ref()
                        .map(|c| format!("{:?}", c.coeffs()))
                        .unwrap_or_else(|| "not extractable".into());
                acc.note(format!(
                    "seed {} n={} alcove {}: C_X = {got}",
                    r.seed, o.alcove.n, o.alcove
                ));
            }
        } else {
            acc.pass = false;
            acc.note(format!("seed {}: no QDE outcome", r.seed));
        }
    }
    acc.note(format!("order D={A10_ORDER}"));
    acc.finish(
        "A10",
        "extracted C_X equals 1",
        format!("D = {A10_ORDER}, exact"),
        true,
        start,
    )
}

pub fn a10(draws: &[ParamSpec]) -> Check {
    let start = Instant::now();
    a10_from(&qde_runs(draws), start)
}

/// All criteria, sharing the stable-envelope matrices and QDE runs between the
/// criteria that need them.
pub fn run_all(seeds: &[u64], mut progress: impl FnMut(&Check)) -> Vec<Check> {
    let draws = numeric_draws(seeds);
    let mut out = Vec::new();
    let mut push = |c: Check, out: &mut Vec<Check>| {
        progress(&c);
        out.push(c);
    };
    let t = Instant::now();
    let table = stab_table(&draws);
    push(a1_from(&draws, &table, t), &mut out);
    push(a2_from(&table, Instant::now()), &mut out);
    push(a3(seeds), &mut out);
    let t = Instant::now();
    let runs = qde_runs(&draws);
    push(a4_from(&draws, &runs, t), &mut out);
    push(a5(&draws), &mut out);
    push(a6(&draws), &mut out);
    push(a7(&draws), &mut out);
    push(a8(&draws), &mut out);
    push(a9(&draws), &mut out);
    push(a10_from(&runs, Instant::now()), &mut out);
    out
}

/// Exit status of a suite: asserted criteria must pass; conjectures only in strict mode.
pub fn suite_ok(checks: &[Check], strict: bool) -> bool {
    checks.iter().all(|c| c.pass || (c.conjecture && !strict))
}
