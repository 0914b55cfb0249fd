//! Seeded random instances: complex Gaussian matrices, unit vectors, Haar
//! unitaries and the structured operator families used by generators and
//! tests. All draws go through `ChaCha8Rng`, so a seed fixes every value on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matkernel::{c, CMat, CVec, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut SeededRng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> CMat {
    let mut out = CMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = gaussian(rng);
        }
    }
    out
}

pub fn unit_vector(rng: &mut SeededRng, n: usize) -> CVec {
    loop {
        let v = CVec::from_fn(n, |_, _| gaussian(rng));
        let norm = v.norm();
        if norm > 1e-8 {
            return v / c(norm, 0.0);
        }
    }
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn unitary(rng: &mut SeededRng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn index(rng: &mut SeededRng, hi: usize) -> usize {
    rng.random_range(0..hi)
}

/// Complex symmetric `(G + G^T) / 2`: antilinear self-adjoint.
pub fn symmetric(rng: &mut SeededRng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    (&g + g.transpose()).scale(0.5)
}

/// Complex skew-symmetric `(G - G^T) / 2`: antilinear normal.
pub fn skew_symmetric(rng: &mut SeededRng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    (&g - g.transpose()).scale(0.5)
}

/// Symmetric unitary `U U^T`.
pub fn symmetric_unitary(rng: &mut SeededRng, n: usize) -> CMat {
    let u = unitary(rng, n);
    &u * u.transpose()
}

/// `V (S (+) K) V^T` with `S` symmetric, `K` skew-symmetric and `V` unitary.
/// The twist preserves `A A* = conj(A* A)`, so the result is antilinear
/// normal without being symmetric.
pub fn twisted_normal(rng: &mut SeededRng, n: usize) -> CMat {
    let split = n / 2;
    let mut core = CMat::zeros(n, n);
    let s = symmetric(rng, n - split);
    core.view_mut((0, 0), (n - split, n - split)).copy_from(&s);
    if split > 0 {
        let k = skew_symmetric(rng, split);
        core.view_mut((n - split, n - split), (split, split)).copy_from(&k);
    }
    let v = unitary(rng, n);
    &v * core * v.transpose()
}

/// Random matrix of the requested rank (a product of Gaussian factors).
pub fn rank_deficient(rng: &mut SeededRng, rows: usize, cols: usize, rank: usize) -> CMat {
    let left = gaussian_matrix(rng, rows, rank);
    let right = gaussian_matrix(rng, rank, cols);
    left * right
}
