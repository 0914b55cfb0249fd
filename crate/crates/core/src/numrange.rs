//! Numerical range `W(T) = { <T x, x> : ||x|| = 1 }` of antilinear operators.
//!
//! For antilinear `T` the value is `conj(x)^T A conj(x)`, which only sees the
//! symmetric part `S = (A + A^T) / 2` and obeys the phase law
//! `<T e^{i phi} x, e^{i phi} x> = e^{-2 i phi} <T x, x>`. For `n >= 2` the
//! range is the closed disk of radius `sigma_max(S)`; for `n = 1` it is the
//! circle of radius `|A|`.

use crate::antiop::AntilinearOperator;
use crate::error::{Error, Result};
use crate::matkernel::{c, conj_vec, ensure_square, inner, takagi, CMat, CVec, Tolerances, C64};
use crate::sampling;

pub const UNIT_TOL: f64 = 1e-12;
/// Slack on `|target| <= radius` accepted by the disk witness.
pub const RADIUS_SLACK: f64 = 1e-10;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-12;
/// Subintervals of `[0, 1]` scanned for sign changes of `Re S3 - lambda`.
pub const BRACKET_SCAN: usize = 64;
/// Admissibility of a root: `|Im S3(t)| <= ADMISSIBLE_IM (1 + |beta|)`.
pub const ADMISSIBLE_IM: f64 = 1e-8;
/// A witness must reproduce its target value to this accuracy.
pub const WITNESS_TOL: f64 = 1e-8;

pub fn symmetric_part(t: &AntilinearOperator) -> CMat {
    let a = t.canon();
    (a + a.transpose()).scale(0.5)
}

/// `<T x, x>` for a unit vector `x`.
pub fn nr_value(t: &AntilinearOperator, x: &CVec) -> Result<C64> {
    let norm = x.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(inner(&t.apply(x)?, x))
}

fn value_unchecked(t: &AntilinearOperator, x: &CVec) -> C64 {
    let y = conj_vec(x);
    (y.transpose() * t.canon() * &y)[(0, 0)]
}

#[derive(Debug, Clone)]
pub struct NumericalRangeDisk {
    pub radius: f64,
    pub extremal_vector: CVec,
    /// `n = 1`: the range is the circle of this radius, not the disk.
    pub circle_only: bool,
}

/// Radius `sigma_1` of the Takagi factorization `S = U Sigma U^T`; the first
/// Takagi vector `u_1` attains `<T u_1, u_1> = sigma_1`.
pub fn nr_disk(t: &AntilinearOperator, tol: &Tolerances) -> Result<NumericalRangeDisk> {
    let n = ensure_square(t.canon())?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let f = takagi(&symmetric_part(t), tol)?;
    Ok(NumericalRangeDisk {
        radius: f.sigma[0],
        extremal_vector: f.u.column(0).into_owned(),
        circle_only: n == 1,
    })
}

/// Sphere-sampling estimate of `sup |<T x, x>|`, independent of Takagi.
///
/// Draws `samples` seeded unit vectors, then refines the best few by ascent
/// on `Re(y^T S y)` (`y = conj(x)`), whose gradient direction is `conj(S y)`.
/// Uniform samples alone concentrate far below the supremum once `n` grows.
pub fn sampled_sup(t: &AntilinearOperator, samples: usize, seed: u64) -> Result<SampledSup> {
    let n = ensure_square(t.canon())?;
    let s = symmetric_part(t);
    let mut rng = sampling::rng(seed);
    let mut values: Vec<(f64, CVec)> = (0..samples)
        .map(|_| {
            let x = sampling::unit_vector(&mut rng, n);
            (value_unchecked(t, &x).norm(), x)
        })
        .collect();
    let raw_sup = values.iter().map(|v| v.0).fold(0.0, f64::max);
    values.sort_by(|a, b| b.0.total_cmp(&a.0));

    let shift = 0.5 * s.norm() / (n as f64).sqrt();
    let mut sup = raw_sup;
    for (_, x) in values.iter().take(8) {
        let mut y = conj_vec(x);
        for _ in 0..500 {
            let q = (y.transpose() * &s * &y)[(0, 0)];
            y *= C64::from_polar(1.0, -0.5 * q.arg());
            let next = conj_vec(&(&s * &y)) + &y * c(shift, 0.0);
            let norm = next.norm();
            if norm == 0.0 {
                break;
            }
            y = next / c(norm, 0.0);
        }
        sup = sup.max(value_unchecked(t, &conj_vec(&y)).norm());
    }
    Ok(SampledSup { raw_sup, sup })
}

#[derive(Debug, Clone, Copy)]
pub struct SampledSup {
    /// Largest modulus among the uniform samples alone.
    pub raw_sup: f64,
    /// After refinement.
    pub sup: f64,
}

/// A unit vector with `<T x, x> = target`, for any `|target| <= radius`.
///
/// With `S = U Sigma U^T`, the curve `x(s) = cos(s) u_1 - i sin(s) u_2` has
/// value `sigma_1 cos^2 s - sigma_2 sin^2 s`, which sweeps `[0, sigma_1]`;
/// the phase law then rotates the value onto `arg(target)`.
pub fn witness_disk(t: &AntilinearOperator, target: C64, tol: &Tolerances) -> Result<CVec> {
    let n = ensure_square(t.canon())?;
    if n < 2 {
        return Err(Error::DimensionOne);
    }
    let f = takagi(&symmetric_part(t), tol)?;
    let (s1, s2) = (f.sigma[0], f.sigma[1]);
    let modulus = target.norm();
    if modulus > s1 + RADIUS_SLACK {
        return Err(Error::OutsideRange {
            modulus,
            radius: s1,
        });
    }
    if s1 == 0.0 {
        let mut e1 = CVec::zeros(n);
        e1[0] = c(1.0, 0.0);
        return Ok(e1);
    }
    let rho = modulus.min(s1);
    let cos2 = ((rho + s2) / (s1 + s2)).clamp(0.0, 1.0);
    let (cs, sn) = (cos2.sqrt(), (1.0 - cos2).sqrt());
    let x = f.u.column(0) * c(cs, 0.0) - f.u.column(1) * c(0.0, sn);
    let phase = C64::from_polar(1.0, -0.5 * target.arg());
    let x = x * phase;
    let norm = x.norm();
    Ok(x / c(norm, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessRoute {
    /// The two-vector construction `t x_1 + r(t) x_2` succeeded.
    Construction { t: f64, r: f64 },
    /// No admissible root; the disk witness was used.
    Fallback,
    /// `alpha_1 = alpha_2`: `x_1` already attains every convex combination.
    Degenerate,
}

#[derive(Debug, Clone)]
pub struct ConvexWitness {
    pub vector: CVec,
    pub target: C64,
    pub route: WitnessRoute,
    pub beta: C64,
}

/// Unit vector attaining `lambda alpha_1 + (1 - lambda) alpha_2`, where
/// `alpha_k = <T x_k, x_k>`.
///
/// Along `x = t x_1 + r x_2` with real `t, r` on the unit sphere
/// (`r(t) = -t rho + sqrt(t^2 rho^2 - t^2 + 1)`, `rho = Re <x_1, x_2>`),
/// `(<T x, x> - alpha_2) / (alpha_1 - alpha_2) = S3(t) = t^2 + beta r(t) t`
/// with `beta = (<T x_1, x_2> + <T x_2, x_1> - 2 alpha_2 rho) / (alpha_1 - alpha_2)`.
/// Roots of `Re S3(t) = lambda` on `[0, 1]` are bracketed and bisected; a
/// root is admissible only if `Im S3` also vanishes there. Without an
/// admissible root the disk witness takes over.
pub fn witness_convex(
    t: &AntilinearOperator,
    x1: &CVec,
    x2: &CVec,
    lambda: f64,
    tol: &Tolerances,
) -> Result<ConvexWitness> {
    let n = ensure_square(t.canon())?;
    if n < 2 {
        return Err(Error::DimensionOne);
    }
    let a1 = nr_value(t, x1)?;
    let a2 = nr_value(t, x2)?;
    let target = a1 * lambda + a2 * (1.0 - lambda);
    if (a1 - a2).norm() <= 1e-14 * (1.0 + a1.norm()) {
        return Ok(ConvexWitness {
            vector: x1.clone(),
            target,
            route: WitnessRoute::Degenerate,
            beta: c(0.0, 0.0),
        });
    }
    let rho = inner(x1, x2).re;
    let b12 = inner(&t.apply(x1)?, x2);
    let b21 = inner(&t.apply(x2)?, x1);
    let beta = (b12 + b21 - a2 * (2.0 * rho)) / (a1 - a2);
    let r_of = |s: f64| -s * rho + (s * s * rho * rho - s * s + 1.0).max(0.0).sqrt();
    let s3 = |s: f64| c(s * s, 0.0) + beta * (r_of(s) * s);
    let g = |s: f64| s3(s).re - lambda;

    let admissible_im = ADMISSIBLE_IM * (1.0 + beta.norm());
    let mut roots = Vec::new();
    let grid: Vec<f64> = (0..=BRACKET_SCAN).map(|k| k as f64 / BRACKET_SCAN as f64).collect();
    for w in grid.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (glo, ghi) = (g(lo), g(hi));
        if glo == 0.0 {
            roots.push(lo);
            continue;
        }
        if ghi == 0.0 && hi == 1.0 {
            roots.push(hi);
            continue;
        }
        if glo.signum() == ghi.signum() {
            continue;
        }
        let sign_lo = glo.signum();
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            if g(mid).signum() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    for root in roots {
        if s3(root).im.abs() > admissible_im {
            continue;
        }
        let r = r_of(root);
        let x = x1 * c(root, 0.0) + x2 * c(r, 0.0);
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        let x = x / c(norm, 0.0);
        if (value_unchecked(t, &x) - target).norm() <= WITNESS_TOL {
            return Ok(ConvexWitness {
                vector: x,
                target,
                route: WitnessRoute::Construction { t: root, r },
                beta,
            });
        }
    }
    Ok(ConvexWitness {
        vector: witness_disk(t, target, tol)?,
        target,
        route: WitnessRoute::Fallback,
        beta,
    })
}
