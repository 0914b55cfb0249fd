//! Spectra of antilinear and real-linear operators.
//!
//! `lambda` lies in the spectrum of a real-linear `S` when `S - lambda` fails
//! to be bijective; on `C^n` that is exactly singularity of the realification.
//! For antilinear `T` the spectrum is a finite union of origin-centred
//! circles: `T^2` is linear with matrix `A conj(A)`, and `A conj(x) = lambda x`
//! has a nonzero solution iff `|lambda|^2` is a real nonnegative eigenvalue of
//! `A conj(A)`.

use crate::antiop::{AntilinearOperator, RealLinearOperator};
use crate::error::Result;
use crate::matkernel::{conj, eigenvalues, ensure_square, min_singular_real, Tolerances, C64};

/// Radii closer than this are reported once.
pub const RADIUS_DEDUP_ATOL: f64 = 1e-7;
/// Relative tolerance for the realness and sign decisions on eigenvalues.
pub const EIGEN_REAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    AntilinearCircles,
    MembershipOnly,
}

#[derive(Debug, Clone)]
pub struct SpectrumDescription {
    /// Ascending; each radius `r` stands for the circle `|lambda| = r`.
    pub radii: Vec<f64>,
    pub kind: SpectrumKind,
    /// Eigenvalues of `A conj(A)`.
    pub eigenvalues: Vec<C64>,
    /// Eigenvalues accepted as real with slightly negative real part, clamped to zero.
    pub clamped: Vec<C64>,
    /// Largest distance from `conj(mu)` to the nearest eigenvalue.
    pub conjugation_closure: f64,
}

impl SpectrumDescription {
    pub fn contains_radius(&self, r: f64) -> bool {
        self.radii.iter().any(|&x| (x - r).abs() <= RADIUS_DEDUP_ATOL)
    }
}

/// Circle radii of `sigma(T)`.
///
/// Radius zero is decided directly by singularity of `realify(T)`;
/// eigenvalues of `A conj(A)` below `EIGEN_REAL_TOL (1 + ||A conj(A)||)` are
/// absorbed into that decision instead of being read off the eigensolver.
pub fn antilinear_spectrum(t: &AntilinearOperator, tol: &Tolerances) -> Result<SpectrumDescription> {
    ensure_square(t.canon())?;
    let a = t.canon();
    let square = a * conj(a);
    let eigs = eigenvalues(&square)?;
    let zero_cut = EIGEN_REAL_TOL * (1.0 + square.norm());

    let mut radii = Vec::new();
    let mut clamped = Vec::new();
    if t.dim_in() > 0 && tol.is_singular(&t.realify()) {
        radii.push(0.0);
    }
    for &mu in &eigs {
        if mu.norm() <= zero_cut {
            continue;
        }
        let real_tol = EIGEN_REAL_TOL * (1.0 + mu.norm());
        if mu.im.abs() > real_tol {
            continue;
        }
        if mu.re < -real_tol {
            continue;
        }
        if mu.re < 0.0 {
            clamped.push(mu);
        }
        radii.push(mu.re.max(0.0).sqrt());
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup_by(|b, a| (*b - *a).abs() <= RADIUS_DEDUP_ATOL);

    Ok(SpectrumDescription {
        radii,
        kind: SpectrumKind::AntilinearCircles,
        conjugation_closure: conjugation_closure(&eigs),
        eigenvalues: eigs,
        clamped,
    })
}

fn conjugation_closure(eigs: &[C64]) -> f64 {
    eigs.iter()
        .map(|mu| {
            eigs.iter()
                .map(|nu| (nu - mu.conj()).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// `(sigma_min(realify(op - lambda)), threshold)`.
pub fn membership_margin(op: &RealLinearOperator, lambda: C64, tol: &Tolerances) -> Result<(f64, f64)> {
    let r = op.shifted(lambda)?.realify();
    Ok((min_singular_real(&r), tol.sing_threshold(r.norm())))
}

pub fn is_in_spectrum(op: &RealLinearOperator, lambda: C64, tol: &Tolerances) -> Result<bool> {
    let (smin, thresh) = membership_margin(op, lambda, tol)?;
    Ok(smin <= thresh)
}

/// Fine structure of a spectral point. On `C^n` a real-linear map is
/// bijective iff injective, so every spectral point is in the point spectrum
/// and the continuous and residual spectra are empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralClass {
    Resolvent,
    Point,
}

impl SpectralClass {
    pub const NOTE: &'static str =
        "finite dimension: sigma = sigma_p, sigma_c and sigma_r are empty";
}

pub fn classify(op: &RealLinearOperator, lambda: C64, tol: &Tolerances) -> Result<SpectralClass> {
    Ok(if is_in_spectrum(op, lambda, tol)? {
        SpectralClass::Point
    } else {
        SpectralClass::Resolvent
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub lambda: C64,
    pub expected: bool,
    pub observed: bool,
    pub min_singular: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct Crosscheck {
    pub radii: Vec<f64>,
    pub probes: Vec<Probe>,
}

impl Crosscheck {
    pub fn disagreements(&self) -> usize {
        self.probes.iter().filter(|p| p.expected != p.observed).count()
    }

    pub fn on_circle(&self) -> usize {
        self.probes.iter().filter(|p| p.expected).count()
    }

    pub fn off_circle(&self) -> usize {
        self.probes.iter().filter(|p| !p.expected).count()
    }
}

/// Off-circle probe radii: `radial_grid` evenly spaced points strictly inside
/// each gap between consecutive radii, the same below the smallest positive
/// radius (including the origin when it is not a radius) and one point beyond
/// the largest radius.
pub fn gap_radii(radii: &[f64], radial_grid: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let interior = |lo: f64, hi: f64, out: &mut Vec<f64>| {
        for j in 1..=radial_grid {
            out.push(lo + (hi - lo) * j as f64 / (radial_grid + 1) as f64);
        }
    };
    match radii.first() {
        Some(&first) if first > 0.0 => {
            out.push(0.0);
            interior(0.0, first, &mut out);
        }
        None => out.push(0.0),
        _ => {}
    }
    for w in radii.windows(2) {
        interior(w[0], w[1], &mut out);
    }
    let top = radii.last().copied().unwrap_or(0.0);
    out.push(1.5 * top + 0.5);
    out
}

/// Checks every reported circle at `phases` angles (membership expected) and
/// the gap radii (non-membership expected) against the realification oracle.
pub fn spectrum_crosscheck(
    t: &AntilinearOperator,
    phases: usize,
    radial_grid: usize,
    tol: &Tolerances,
) -> Result<Crosscheck> {
    let spec = antilinear_spectrum(t, tol)?;
    let op = t.to_real_linear();
    let mut probes = Vec::new();
    let mut probe = |lambda: C64, expected: bool| -> Result<()> {
        let (smin, thresh) = membership_margin(&op, lambda, tol)?;
        probes.push(Probe {
            lambda,
            expected,
            observed: smin <= thresh,
            min_singular: smin,
            threshold: thresh,
        });
        Ok(())
    };
    for &r in &spec.radii {
        for k in 0..phases.max(1) {
            let theta = std::f64::consts::TAU * k as f64 / phases.max(1) as f64;
            probe(C64::from_polar(r, theta), true)?;
        }
    }
    for (k, r) in gap_radii(&spec.radii, radial_grid).into_iter().enumerate() {
        // Irrational phase step so gap probes do not all sit on the real axis.
        let theta = 0.618_033_988_749_894_9 * std::f64::consts::TAU * k as f64;
        probe(C64::from_polar(r, theta), false)?;
    }
    Ok(Crosscheck {
        radii: spec.radii,
        probes,
    })
}

/// Membership of `lambda` and of its rotations by the given angles, for
/// checking that spectra are unions of circles.
pub fn phase_orbit_membership(
    op: &RealLinearOperator,
    lambda: C64,
    angles: &[f64],
    tol: &Tolerances,
) -> Result<Vec<bool>> {
    angles
        .iter()
        .map(|&theta| is_in_spectrum(op, lambda * C64::from_polar(1.0, theta), tol))
        .collect()
}
