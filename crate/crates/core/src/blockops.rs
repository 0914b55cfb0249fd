//! Block operator matrices `[[A, B], [F, E]]` with antilinear entries on
//! `C^n (+) C^m`.
//!
//! Resolvents such as `(A - mu)^{-1}` are real-linear, not complex-linear, so
//! every complement is a [`RealLinearOperator`] obtained by inverting the
//! realification. In finite dimension closures are identities, so the
//! Frobenius-Schur factorizations are exact operator equations and the
//! spectral correspondences reduce to singularity tests.

use std::fmt;

use crate::antiop::{compose, compose_all, AntilinearOperator, RealLinearOperator};
use crate::error::{Error, Result};
use crate::matkernel::{c, min_singular_real, rank_real, singular_values_real, CMat, Tolerances, C64};
use crate::sampling;
use crate::spectra::{antilinear_spectrum, gap_radii};

#[derive(Debug, Clone, PartialEq)]
pub struct BlockAntilinearMatrix {
    a: AntilinearOperator,
    b: AntilinearOperator,
    f: AntilinearOperator,
    e: AntilinearOperator,
}

impl BlockAntilinearMatrix {
    /// `a: n x n`, `b: n x m`, `f: m x n`, `e: m x m`.
    pub fn new(
        a: AntilinearOperator,
        b: AntilinearOperator,
        f: AntilinearOperator,
        e: AntilinearOperator,
    ) -> Result<Self> {
        let n = a.dim_out();
        let m = e.dim_out();
        let checks = [
            ("block a cols", n, a.dim_in()),
            ("block e cols", m, e.dim_in()),
            ("block b rows", n, b.dim_out()),
            ("block b cols", m, b.dim_in()),
            ("block f rows", m, f.dim_out()),
            ("block f cols", n, f.dim_in()),
        ];
        for (context, expected, found) in checks {
            if expected != found {
                return Err(Error::DimensionMismatch {
                    context,
                    expected,
                    found,
                });
            }
        }
        Ok(Self { a, b, f, e })
    }

    pub fn from_canon(a: CMat, b: CMat, f: CMat, e: CMat) -> Result<Self> {
        Self::new(
            AntilinearOperator::new(a)?,
            AntilinearOperator::new(b)?,
            AntilinearOperator::new(f)?,
            AntilinearOperator::new(e)?,
        )
    }

    pub fn a(&self) -> &AntilinearOperator {
        &self.a
    }

    pub fn b(&self) -> &AntilinearOperator {
        &self.b
    }

    pub fn f(&self) -> &AntilinearOperator {
        &self.f
    }

    pub fn e(&self) -> &AntilinearOperator {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.a.dim_out()
    }

    pub fn m(&self) -> usize {
        self.e.dim_out()
    }

    /// The antilinear operator on the direct sum; its canonical matrix is the
    /// block assembly of the four canonical matrices.
    pub fn flatten(&self) -> AntilinearOperator {
        let (n, m) = (self.n(), self.m());
        let mut out = CMat::zeros(n + m, n + m);
        out.view_mut((0, 0), (n, n)).copy_from(self.a.canon());
        out.view_mut((0, n), (n, m)).copy_from(self.b.canon());
        out.view_mut((n, 0), (m, n)).copy_from(self.f.canon());
        out.view_mut((n, n), (m, m)).copy_from(self.e.canon());
        AntilinearOperator::new(out).expect("finite blocks")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    /// `S1(mu) = A - mu - B (E - mu)^{-1} F`.
    S1,
    /// `S2(mu) = E - mu - F (A - mu)^{-1} B`.
    S2,
    /// `T1(mu) = F - (E - mu) B^{-1} (A - mu)`.
    T1,
    /// `T2(mu) = B - (A - mu) F^{-1} (E - mu)`.
    T2,
}

impl Selector {
    pub const ALL: [Selector; 4] = [Selector::S1, Selector::S2, Selector::T1, Selector::T2];

    pub fn pivot(self) -> &'static str {
        match self {
            Selector::S1 => "E - mu",
            Selector::S2 => "A - mu",
            Selector::T1 => "B",
            Selector::T2 => "F",
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Selector::S1 => "S1",
            Selector::S2 => "S2",
            Selector::T1 => "T1",
            Selector::T2 => "T2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct ComplementResult {
    pub op: RealLinearOperator,
    pub selector: Selector,
    pub mu: C64,
    /// Smallest singular value of the realified pivot that was inverted.
    pub pivot_condition: f64,
}

fn inverse_of(op: &RealLinearOperator, pivot: &'static str, tol: &Tolerances) -> Result<(RealLinearOperator, f64)> {
    if op.dim_in() != op.dim_out() {
        return Err(Error::PivotSingular {
            pivot,
            min_singular: 0.0,
        });
    }
    op.inverse(pivot, tol)
}

pub fn complement(blk: &BlockAntilinearMatrix, selector: Selector, mu: C64, tol: &Tolerances) -> Result<ComplementResult> {
    let a_mu = blk.a.shifted(mu)?;
    let e_mu = blk.e.shifted(mu)?;
    let (a, b, f, e) = (
        blk.a.to_real_linear(),
        blk.b.to_real_linear(),
        blk.f.to_real_linear(),
        blk.e.to_real_linear(),
    );
    let _ = (&a, &e);
    let (op, pivot_condition) = match selector {
        Selector::S2 => {
            let (inv, cond) = inverse_of(&a_mu, selector.pivot(), tol)?;
            (e_mu.sub(&compose_all(&[f, inv, b])?)?, cond)
        }
        Selector::S1 => {
            let (inv, cond) = inverse_of(&e_mu, selector.pivot(), tol)?;
            (a_mu.sub(&compose_all(&[b, inv, f])?)?, cond)
        }
        Selector::T2 => {
            let (inv, cond) = inverse_of(&f, selector.pivot(), tol)?;
            (b.sub(&compose_all(&[a_mu, inv, e_mu])?)?, cond)
        }
        Selector::T1 => {
            let (inv, cond) = inverse_of(&b, selector.pivot(), tol)?;
            (f.sub(&compose_all(&[e_mu, inv, a_mu])?)?, cond)
        }
    };
    Ok(ComplementResult {
        op,
        selector,
        mu,
        pivot_condition,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factorization {
    /// Lower-unitriangular, `diag(A - mu, S2)`, upper-unitriangular.
    SchurA,
    /// Upper-unitriangular, `diag(S1, E - mu)`, lower-unitriangular.
    SchurE,
    /// Upper-unitriangular, `[[0, T2], [F, 0]]`, upper-unitriangular.
    QuadraticF,
    /// Lower-unitriangular, `[[0, B], [T1, 0]]`, lower-unitriangular.
    QuadraticB,
}

impl Factorization {
    pub const ALL: [Factorization; 4] = [
        Factorization::SchurA,
        Factorization::SchurE,
        Factorization::QuadraticF,
        Factorization::QuadraticB,
    ];

    pub fn selector(self) -> Selector {
        match self {
            Factorization::SchurA => Selector::S2,
            Factorization::SchurE => Selector::S1,
            Factorization::QuadraticF => Selector::T2,
            Factorization::QuadraticB => Selector::T1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Factorization::SchurA => "schur_a",
            Factorization::SchurE => "schur_e",
            Factorization::QuadraticF => "quadratic_f",
            Factorization::QuadraticB => "quadratic_b",
        }
    }
}

/// Assembles `mu + L D R` for the chosen factorization and returns
/// `||realify(A) - realify(mu + L D R)|| / (1 + ||realify(A)||)`.
pub fn verify_factorization(
    blk: &BlockAntilinearMatrix,
    mu: C64,
    which: Factorization,
    tol: &Tolerances,
) -> Result<f64> {
    let (n, m) = (blk.n(), blk.m());
    let comp = complement(blk, which.selector(), mu, tol)?.op;
    let a_mu = blk.a.shifted(mu)?;
    let e_mu = blk.e.shifted(mu)?;
    let b = blk.b.to_real_linear();
    let f = blk.f.to_real_linear();
    let id_n = RealLinearOperator::identity(n);
    let id_m = RealLinearOperator::identity(m);
    let zero = RealLinearOperator::zeros;
    let blocks = RealLinearOperator::from_blocks;

    let (left, middle, right) = match which {
        Factorization::SchurA => {
            let (inv, _) = inverse_of(&a_mu, "A - mu", tol)?;
            (
                blocks(&id_n, &zero(n, m), &compose(&f, &inv)?, &id_m)?,
                blocks(&a_mu, &zero(n, m), &zero(m, n), &comp)?,
                blocks(&id_n, &compose(&inv, &b)?, &zero(m, n), &id_m)?,
            )
        }
        Factorization::SchurE => {
            let (inv, _) = inverse_of(&e_mu, "E - mu", tol)?;
            (
                blocks(&id_n, &compose(&b, &inv)?, &zero(m, n), &id_m)?,
                blocks(&comp, &zero(n, m), &zero(m, n), &e_mu)?,
                blocks(&id_n, &zero(n, m), &compose(&inv, &f)?, &id_m)?,
            )
        }
        Factorization::QuadraticF => {
            let (inv, _) = inverse_of(&f, "F", tol)?;
            (
                blocks(&id_n, &compose(&a_mu, &inv)?, &zero(m, n), &id_m)?,
                blocks(&zero(n, n), &comp, &f, &zero(m, m))?,
                blocks(&id_n, &compose(&inv, &e_mu)?, &zero(m, n), &id_m)?,
            )
        }
        Factorization::QuadraticB => {
            let (inv, _) = inverse_of(&b, "B", tol)?;
            (
                blocks(&id_n, &zero(n, m), &compose(&e_mu, &inv)?, &id_m)?,
                blocks(&zero(n, n), &b, &comp, &zero(m, m))?,
                blocks(&id_n, &zero(n, m), &compose(&inv, &a_mu)?, &id_m)?,
            )
        }
    };
    let shift = RealLinearOperator::linear(CMat::identity(n + m, n + m) * mu);
    let rhs = shift.add(&compose_all(&[left, middle, right])?)?;
    let lhs = blk.flatten().realify();
    Ok((lhs.clone() - rhs.realify()).norm() / (1.0 + lhs.norm()))
}

/// Which spectral correspondence a scan tally belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Correspondence {
    /// `sigma(A) \ sigma(A-block) = sigma(S2)`, pivot `A`.
    SchurS2,
    /// Same with `E` and `S1`.
    SchurS1,
    /// `sigma(A) = sigma(T2)` for bijective `F`.
    QuadraticT2,
    /// `sigma(A) = sigma(T1)` for bijective `B`.
    QuadraticT1,
}

impl Correspondence {
    pub const ALL: [Correspondence; 4] = [
        Correspondence::SchurS2,
        Correspondence::SchurS1,
        Correspondence::QuadraticT2,
        Correspondence::QuadraticT1,
    ];

    pub fn selector(self) -> Selector {
        match self {
            Correspondence::SchurS2 => Selector::S2,
            Correspondence::SchurS1 => Selector::S1,
            Correspondence::QuadraticT2 => Selector::T2,
            Correspondence::QuadraticT1 => Selector::T1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Correspondence::SchurS2 => "schur_s2",
            Correspondence::SchurS1 => "schur_s1",
            Correspondence::QuadraticT2 => "quadratic_t2",
            Correspondence::QuadraticT1 => "quadratic_t1",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub agreements: usize,
    pub disagreements: usize,
    pub skipped: usize,
}

impl Tally {
    fn record(&mut self, agree: bool) {
        if agree {
            self.agreements += 1;
        } else {
            self.disagreements += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub index: usize,
    pub mu: C64,
    pub in_spectrum: bool,
    pub kernel_dim: usize,
    /// Per correspondence: `None` if skipped, else `(in sigma(complement), kernel dim)`.
    pub complements: Vec<(Correspondence, Option<(bool, usize)>, Option<String>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Spectrum membership agreement.
    pub spectrum: Vec<(Correspondence, Tally)>,
    /// Nontrivial-kernel agreement.
    pub point_spectrum: Vec<(Correspondence, Tally)>,
}

impl ScanReport {
    pub fn disagreements(&self) -> usize {
        self.spectrum
            .iter()
            .chain(self.point_spectrum.iter())
            .map(|(_, t)| t.disagreements)
            .sum()
    }
}

/// `(singular?, numerical kernel dimension)` of a real matrix under `tol.sing`.
fn singularity(r: &crate::matkernel::RMat, tol: &Tolerances) -> (bool, usize) {
    let thresh = tol.sing_threshold(r.norm());
    let sv = singular_values_real(r);
    let kernel = sv.iter().filter(|&&s| s <= thresh).count() + r.ncols().saturating_sub(sv.len());
    (kernel > 0, kernel)
}

pub fn correspondence_scan(blk: &BlockAntilinearMatrix, samples: &[C64], tol: &Tolerances) -> Result<ScanReport> {
    let full = blk.flatten().to_real_linear();
    let mut spectrum: Vec<(Correspondence, Tally)> =
        Correspondence::ALL.iter().map(|&c| (c, Tally::default())).collect();
    let mut point = spectrum.clone();
    let mut rows = Vec::with_capacity(samples.len());

    for (index, &mu) in samples.iter().enumerate() {
        let (in_spectrum, kernel_dim) = singularity(&full.shifted(mu)?.realify(), tol);
        let mut complements = Vec::new();
        for (k, corr) in Correspondence::ALL.iter().enumerate() {
            match complement(blk, corr.selector(), mu, tol) {
                Ok(res) => {
                    let (sing, kdim) = singularity(&res.op.realify(), tol);
                    spectrum[k].1.record(sing == in_spectrum);
                    point[k].1.record((kdim > 0) == (kernel_dim > 0));
                    complements.push((*corr, Some((sing, kdim)), None));
                }
                Err(Error::PivotSingular { pivot, min_singular }) => {
                    spectrum[k].1.skipped += 1;
                    point[k].1.skipped += 1;
                    complements.push((
                        *corr,
                        None,
                        Some(format!("pivot {pivot} singular (min singular value {min_singular:.3e})")),
                    ));
                }
                Err(other) => return Err(other),
            }
        }
        rows.push(ScanRow {
            index,
            mu,
            in_spectrum,
            kernel_dim,
            complements,
        });
    }
    Ok(ScanReport {
        rows,
        spectrum,
        point_spectrum: point,
    })
}

/// Scan points that exercise both outcomes: the circles of `sigma(A-block)`
/// at 8 phases, gap radii between them, the circles of `sigma(A)` and
/// `sigma(E)` (where the Schur pivots fail) and seeded uniform points in a
/// bounding disk, topped up to at least `min_total`.
pub fn structured_samples(blk: &BlockAntilinearMatrix, min_total: usize, seed: u64, tol: &Tolerances) -> Result<Vec<C64>> {
    let radii = antilinear_spectrum(&blk.flatten(), tol)?.radii;
    let mut out = Vec::new();
    for &r in &radii {
        for k in 0..8 {
            out.push(C64::from_polar(r, std::f64::consts::TAU * (k as f64 + 0.25) / 8.0));
        }
    }
    for (k, r) in gap_radii(&radii, 3).into_iter().enumerate() {
        for j in 0..2 {
            out.push(C64::from_polar(r, 0.7 * k as f64 + std::f64::consts::PI * j as f64));
        }
    }
    for part in [&blk.a, &blk.e] {
        for &r in &antilinear_spectrum(part, tol)?.radii {
            for k in 0..4 {
                out.push(C64::from_polar(r, std::f64::consts::TAU * (k as f64 + 0.1) / 4.0));
            }
        }
    }
    let bound = 1.2 * radii.last().copied().unwrap_or(0.0) + 1.0;
    let mut rng = sampling::rng(seed);
    let random = 50.max(min_total.saturating_sub(out.len()));
    for _ in 0..random {
        let r = bound * sampling::uniform(&mut rng, 0.0, 1.0).sqrt();
        let theta = sampling::uniform(&mut rng, 0.0, std::f64::consts::TAU);
        out.push(C64::from_polar(r, theta));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankLink {
    pub rank_full: usize,
    /// `rank realify(S2(0))`, requires `0 in rho(A)`.
    pub rank_s2: usize,
    /// `rank realify(S1(0))` when `0 in rho(E)`.
    pub rank_s1: Option<usize>,
    /// `rank = 2n + rank S2(0)`.
    pub holds_s2: bool,
    /// `rank = 2m + rank S1(0)`.
    pub holds_s1: Option<bool>,
    /// Operator norm of `F A^{-1}`: the relative bound `||F h|| <= a ||A h||`
    /// holds with this `a`.
    pub relative_bound: f64,
}

/// Rank of a difference `X - Y` formed in floating point: singular values are
/// compared with `scale = ||X|| + ||Y||`, the size of the cancelled terms,
/// since a complement that vanishes exactly is left holding rounding noise
/// that is full rank relative to its own norm.
fn cancellation_rank(m: &RealLinearOperator, scale: f64, tol: &Tolerances) -> usize {
    let r = m.realify();
    let thresh = tol.rank_threshold(r.nrows(), r.ncols(), scale);
    singular_values_real(&r).iter().filter(|&&x| x > thresh && x > 0.0).count()
}

pub fn rank_link(blk: &BlockAntilinearMatrix, tol: &Tolerances) -> Result<RankLink> {
    let zero = c(0.0, 0.0);
    let s2 = complement(blk, Selector::S2, zero, tol)?;
    let rank_full = rank_real(&blk.flatten().realify(), tol);
    let (a_inv, _) = blk.a.to_real_linear().inverse("A", tol)?;
    let fab = compose_all(&[blk.f.to_real_linear(), a_inv.clone(), blk.b.to_real_linear()])?;
    let rank_s2 = cancellation_rank(&s2.op, blk.e.norm() + fab.norm(), tol);
    let (rank_s1, holds_s1) = match complement(blk, Selector::S1, zero, tol) {
        Ok(s1) => {
            let (e_inv, _) = blk.e.to_real_linear().inverse("E", tol)?;
            let bef = compose_all(&[blk.b.to_real_linear(), e_inv, blk.f.to_real_linear()])?;
            let r = cancellation_rank(&s1.op, blk.a.norm() + bef.norm(), tol);
            (Some(r), Some(rank_full == 2 * blk.m() + r))
        }
        Err(Error::PivotSingular { .. }) => (None, None),
        Err(other) => return Err(other),
    };
    let fa = compose(&blk.f.to_real_linear(), &a_inv)?.realify();
    let relative_bound = singular_values_real(&fa).first().copied().unwrap_or(0.0);
    Ok(RankLink {
        rank_full,
        rank_s2,
        rank_s1,
        holds_s2: rank_full == 2 * blk.n() + rank_s2,
        holds_s1,
        relative_bound,
    })
}

/// Whether the pivot of `selector` at `mu` is invertible under `tol`.
pub fn pivot_ok(blk: &BlockAntilinearMatrix, selector: Selector, mu: C64, tol: &Tolerances) -> Result<bool> {
    let pivot = match selector {
        Selector::S2 => blk.a.shifted(mu)?,
        Selector::S1 => blk.e.shifted(mu)?,
        Selector::T2 => blk.f.to_real_linear(),
        Selector::T1 => blk.b.to_real_linear(),
    };
    if pivot.dim_in() != pivot.dim_out() {
        return Ok(false);
    }
    let r = pivot.realify();
    Ok(min_singular_real(&r) > tol.sing_threshold(r.norm()))
}
