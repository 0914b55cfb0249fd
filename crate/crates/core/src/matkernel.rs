//! Dense complex and real matrix kernel.
//!
//! Real SVD, Hermitian eigendecomposition and Hessenberg reduction come from
//! nalgebra. The complex SVD (one-sided Jacobi) and the general eigenvalue
//! solver (shifted Hessenberg QR) are local: nalgebra's complex SVD can
//! return factors that do not reconstruct rank-deficient Hermitian input, and
//! its complex Schur iteration can fail to converge. On top of these this
//! module builds the factorizations
//! the operator calculus needs: Takagi factorization of complex symmetric
//! matrices, square roots of positive semidefinite matrices, the
//! Moore-Penrose pseudoinverse and singularity tests on real matrices.

use nalgebra::{Complex, DMatrix, DVector, Hessenberg, SymmetricEigen, SVD};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;
pub type RMat = DMatrix<f64>;

/// Numerical cutoffs shared by every module.
///
/// `rtol` drives structural comparisons and the rank threshold
/// `rtol * max(rows, cols) * sigma_max`; `sing` drives the singularity test
/// `sigma_min <= sing * (1 + ||m||)` on realifications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rtol: f64,
    pub sing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            sing: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn rank_threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rtol * rows.max(cols) as f64 * sigma_max
    }

    pub fn sing_threshold(&self, norm: f64) -> f64 {
        self.sing * (1.0 + norm)
    }

    /// Whether a real matrix counts as singular under `sing`.
    pub fn is_singular(&self, m: &RMat) -> bool {
        min_singular_real(m) <= self.sing_threshold(m.norm())
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn to_complex(m: &RMat) -> CMat {
    m.map(|x| c(x, 0.0))
}

/// `<a, b> = sum a_i conj(b_i)`.
pub fn inner(a: &CVec, b: &CVec) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn ensure_finite(m: &CMat) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn ensure_square(m: &CMat) -> Result<usize> {
    if m.is_square() {
        Ok(m.nrows())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Thin SVD `a = u * diag(s) * v_t` with singular values in descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v_t: CMat,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        let (m, n) = (self.u.nrows(), self.v_t.ncols());
        let thresh = tol.rank_threshold(m, n, self.sigma_max());
        self.singular_values
            .iter()
            .filter(|&&s| s > thresh && s > 0.0)
            .count()
    }
}

/// Thin SVD by one-sided (Hestenes) Jacobi rotations on the columns of `a`,
/// or of `a*` when `a` is wide.
pub fn svd(a: &CMat) -> Svd {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Svd {
            u: CMat::zeros(m, 0),
            singular_values: Vec::new(),
            v_t: CMat::zeros(0, n),
        };
    }
    if m < n {
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v_t.adjoint(),
            singular_values: t.singular_values,
            v_t: t.u.adjoint(),
        };
    }
    let (w, v) = jacobi_columns(a);
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma_max = norms[order[0]];
    let negligible = f64::EPSILON * m as f64 * sigma_max;
    let mut basis: Vec<CVec> = Vec::with_capacity(n);
    let mut v_sorted = CMat::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        v_sorted.set_column(k, &v.column(j));
        let col = w.column(j).into_owned();
        let u = if norms[j] > negligible && norms[j] > 0.0 {
            col.unscale(norms[j])
        } else {
            complete_basis(&basis, m)
        };
        basis.push(u);
    }
    Svd {
        u: CMat::from_columns(&basis),
        singular_values: order.iter().map(|&j| norms[j]).collect(),
        v_t: v_sorted.adjoint(),
    }
}

/// Rotates the columns of `a` (tall) until they are mutually orthogonal:
/// returns `(W, V)` with `W = a V`, `V` unitary.
fn jacobi_columns(a: &CMat) -> (CMat, CMat) {
    const MAX_SWEEPS: usize = 80;
    let n = a.ncols();
    let mut w = a.clone();
    let mut v = CMat::identity(n, n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Fold the phase of gamma into column q, then rotate as in
                // the real case.
                let phase = gamma.unscale(g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut w, &mut v] {
                    let cp = mat.column(p).into_owned();
                    let cq = mat.column(q).map(|z| z * phase);
                    mat.set_column(p, &(cp.scale(cs) - cq.scale(sn)));
                    mat.set_column(q, &(cp.scale(sn) + cq.scale(cs)));
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (w, v)
}

/// A unit vector orthogonal to `basis` (orthonormal, fewer than `m`
/// vectors): the standard basis vector with the largest residual,
/// orthonormalized.
fn complete_basis(basis: &[CVec], m: usize) -> CVec {
    let residual = |i: usize| {
        let e = CVec::from_fn(m, |k, _| if k == i { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let mut r = e.clone();
        for q in basis {
            r -= q * inner(&e, q);
        }
        r
    };
    let best = (0..m)
        .max_by(|&i, &j| residual(i).norm().total_cmp(&residual(j).norm()))
        .expect("m > 0");
    let e = CVec::from_fn(m, |k, _| if k == best { c(1.0, 0.0) } else { c(0.0, 0.0) });
    orthonormalize_against(&e, basis, 0.0).expect("basis has fewer than m vectors")
}

pub fn singular_values(a: &CMat) -> Vec<f64> {
    svd(a).singular_values
}

pub fn singular_values_real(m: &RMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn rank(a: &CMat, tol: &Tolerances) -> usize {
    let s = singular_values(a);
    let thresh = tol.rank_threshold(a.nrows(), a.ncols(), s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&x| x > thresh && x > 0.0).count()
}

pub fn rank_real(m: &RMat, tol: &Tolerances) -> usize {
    let s = singular_values_real(m);
    let thresh = tol.rank_threshold(m.nrows(), m.ncols(), s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&x| x > thresh && x > 0.0).count()
}

/// Orthonormal basis of the column space, `rows x rank`.
pub fn range_basis(a: &CMat, tol: &Tolerances) -> CMat {
    let dec = svd(a);
    let r = dec.rank(tol);
    dec.u.columns(0, r).into_owned()
}

/// Orthonormal basis of the null space, `cols x (cols - rank)`.
pub fn null_space(a: &CMat, tol: &Tolerances) -> CMat {
    let (m, n) = a.shape();
    // Zero rows give a square input, so the SVD returns the full right basis.
    let mut padded = CMat::zeros(m.max(n), n);
    padded.rows_mut(0, m).copy_from(a);
    let dec = svd(&padded);
    let thresh = tol.rank_threshold(m, n, dec.sigma_max());
    let r = dec
        .singular_values
        .iter()
        .filter(|&&s| s > thresh && s > 0.0)
        .count();
    dec.v_t.rows(r, n - r).adjoint()
}

pub fn null_space_real(m: &RMat, tol: &Tolerances) -> RMat {
    let (rows, cols) = m.shape();
    let mut padded = RMat::zeros(rows.max(cols), cols);
    padded.rows_mut(0, rows).copy_from(m);
    if cols == 0 {
        return RMat::zeros(0, 0);
    }
    let dec = SVD::new(padded, false, true);
    let v_t = dec.v_t.expect("v_t requested");
    let sigma_max = dec.singular_values.max();
    let thresh = tol.rank_threshold(rows, cols, sigma_max);
    let mut null_rows: Vec<usize> = (0..cols)
        .filter(|&i| !(dec.singular_values[i] > thresh && dec.singular_values[i] > 0.0))
        .collect();
    null_rows.sort_unstable();
    let mut out = RMat::zeros(cols, null_rows.len());
    for (j, &i) in null_rows.iter().enumerate() {
        out.set_column(j, &v_t.row(i).transpose());
    }
    out
}

pub fn range_basis_real(m: &RMat, tol: &Tolerances) -> RMat {
    if m.is_empty() {
        return RMat::zeros(m.nrows(), 0);
    }
    let dec = SVD::new(m.clone(), true, false);
    let u = dec.u.expect("u requested");
    let sigma_max = dec.singular_values.max();
    let thresh = tol.rank_threshold(m.nrows(), m.ncols(), sigma_max);
    let keep: Vec<usize> = (0..dec.singular_values.len())
        .filter(|&i| dec.singular_values[i] > thresh && dec.singular_values[i] > 0.0)
        .collect();
    let mut out = RMat::zeros(m.nrows(), keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

/// Orthogonal projector `Q Q*` onto the column space of `a`.
pub fn range_projector(a: &CMat, tol: &Tolerances) -> CMat {
    let q = range_basis(a, tol);
    &q * q.adjoint()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let dec = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| dec.eigenvalues[i].total_cmp(&dec.eigenvalues[j]));
    let vals = order.iter().map(|&i| dec.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &dec.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Eigenvalues of a general square complex matrix.
///
/// Householder reduction to Hessenberg form (nalgebra), then single-shift
/// complex QR with Wilkinson shifts, deflation on negligible subdiagonals and
/// exceptional shifts every 10 stalled iterations. nalgebra's own complex
/// Schur runs a real-style double-shift iteration that can stall forever on
/// near-scalar or rank-deficient input.
pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    let n = ensure_square(m)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = Hessenberg::new(m.clone()).unpack_h();
    let scale = h.norm();
    let mut eigs = vec![c(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut stalled = 0;
    let mut budget = 100 * n;
    loop {
        // Deflate: find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= f64::EPSILON * diag {
                h[(lo, lo - 1)] = c(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs[hi] = h[(hi, hi)];
            if hi == 0 {
                return Ok(eigs);
            }
            hi -= 1;
            stalled = 0;
            continue;
        }
        if budget == 0 {
            return Err(Error::NoConvergence("Hessenberg QR iteration"));
        }
        budget -= 1;
        stalled += 1;
        let shift = if stalled % 10 == 0 {
            let k = (stalled / 10) as f64;
            h[(hi, hi)] + C64::from_polar(h[(hi, hi - 1)].norm() + 0.75 * h[(hi - 1, hi - 1)].norm(), 1.3 * k)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, lo, hi, shift);
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, cc: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * cc).sqrt();
    let (p, q) = (half + disc, half - disc);
    let denom = if p.norm() >= q.norm() { p } else { q };
    if denom.norm() == 0.0 {
        d
    } else {
        d - b * cc / denom
    }
}

/// One explicit shifted QR step `H - s = QR`, `H <- RQ + s` on the block
/// `lo..=hi` of an upper Hessenberg matrix, using Givens rotations.
fn qr_step(h: &mut CMat, lo: usize, hi: usize, shift: C64) {
    for j in lo..=hi {
        h[(j, j)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for j in lo..hi {
        let (a, b) = (h[(j, j)], h[(j + 1, j)]);
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (cs, sn) = if r == 0.0 {
            (1.0, c(0.0, 0.0))
        } else if a.norm() == 0.0 {
            (0.0, b.conj() / r)
        } else {
            (a.norm() / r, a.unscale(a.norm()) * b.conj() / r)
        };
        for k in j..=hi {
            let (x, y) = (h[(j, k)], h[(j + 1, k)]);
            h[(j, k)] = x * cs + sn * y;
            h[(j + 1, k)] = -sn.conj() * x + y * cs;
        }
        rotations.push((cs, sn));
    }
    for (offset, &(cs, sn)) in rotations.iter().enumerate() {
        let j = lo + offset;
        for k in lo..=(j + 2).min(hi) {
            let (x, y) = (h[(k, j)], h[(k, j + 1)]);
            h[(k, j)] = x * cs + y * sn.conj();
            h[(k, j + 1)] = -x * sn + y * cs;
        }
    }
    for j in lo..=hi {
        h[(j, j)] += shift;
    }
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-rtol (1 + ||h||), 0)` are clamped to zero.
pub fn psd_sqrt(h: &CMat, tol: &Tolerances) -> Result<CMat> {
    ensure_square(h)?;
    let scale = 1.0 + h.norm();
    let herm_residual = (h - h.adjoint()).norm();
    if herm_residual > tol.rtol * scale {
        return Err(Error::NotHermitian {
            residual: herm_residual,
        });
    }
    let (vals, vecs) = hermitian_eigen(h);
    if let Some(&lowest) = vals.first() {
        if lowest < -tol.rtol * scale {
            return Err(Error::NotPsd {
                min_eigenvalue: lowest,
            });
        }
    }
    let roots = DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| c(v.max(0.0).sqrt(), 0.0)),
    );
    let scaled = CMat::from_fn(h.nrows(), h.ncols(), |i, j| vecs[(i, j)] * roots[j]);
    let root = &scaled * vecs.adjoint();
    Ok((&root + root.adjoint()).scale(0.5))
}

/// Moore-Penrose pseudoinverse; singular values at or below
/// `rtol * max(rows, cols) * sigma_max` are treated as zero.
pub fn pinv(a: &CMat, tol: &Tolerances) -> CMat {
    let (m, n) = a.shape();
    let dec = svd(a);
    let r = dec.rank(tol);
    let mut out = CMat::zeros(n, m);
    for k in 0..r {
        let inv = 1.0 / dec.singular_values[k];
        let v = dec.v_t.row(k).adjoint();
        let u = dec.u.column(k).adjoint();
        out += (v * u).scale(inv);
    }
    out
}

pub fn pinv_real(m: &RMat, tol: &Tolerances) -> RMat {
    let c = to_complex(m);
    pinv(&c, tol).map(|z| z.re)
}

/// Smallest singular value of a square real matrix.
pub fn min_singular_real(m: &RMat) -> f64 {
    singular_values_real(m).last().copied().unwrap_or(0.0)
}

/// `b = u * diag(sigma) * u^T` with `u` unitary and `sigma` descending.
#[derive(Debug, Clone)]
pub struct TakagiFactorization {
    pub u: CMat,
    pub sigma: Vec<f64>,
}

impl TakagiFactorization {
    pub fn reconstruct(&self) -> CMat {
        let n = self.u.nrows();
        let scaled = CMat::from_fn(n, n, |i, j| self.u[(i, j)] * self.sigma[j]);
        scaled * self.u.transpose()
    }
}

/// Takagi factorization of a complex symmetric matrix.
///
/// Writing `u = a + i b`, the equation `B conj(u) = sigma u` is the real
/// symmetric eigenproblem `[[Re B, Im B], [Im B, -Re B]] (a; b) = sigma (a; b)`,
/// whose spectrum is `{+sigma_k, -sigma_k}`. The eigenvectors for the top half
/// are complex-orthonormal whenever `sigma > 0`; the zero cluster (where `u`
/// and `i u` share an eigenspace) is thinned by complex Gram-Schmidt. A final
/// phase fix makes every diagonal entry of `u* B conj(u)` real and
/// nonnegative.
pub fn takagi(b: &CMat, tol: &Tolerances) -> Result<TakagiFactorization> {
    let n = ensure_square(b)?;
    let scale = 1.0 + b.norm();
    let sym_residual = (b - b.transpose()).norm();
    if sym_residual > tol.rtol * scale {
        return Err(Error::NotSymmetric {
            residual: sym_residual,
        });
    }
    if n == 0 {
        return Ok(TakagiFactorization {
            u: CMat::zeros(0, 0),
            sigma: Vec::new(),
        });
    }
    let b = (b + b.transpose()).scale(0.5);
    let re = b.map(|z| z.re);
    let im = b.map(|z| z.im);
    let mut big = RMat::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(&re);
    big.view_mut((0, n), (n, n)).copy_from(&im);
    big.view_mut((n, 0), (n, n)).copy_from(&im);
    big.view_mut((n, n), (n, n)).copy_from(&(-&re));
    let dec = SymmetricEigen::new(big);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| dec.eigenvalues[j].total_cmp(&dec.eigenvalues[i]));

    let mut basis: Vec<CVec> = Vec::with_capacity(n);
    for &k in &order {
        if basis.len() == n {
            break;
        }
        let col = dec.eigenvectors.column(k);
        let u = CVec::from_fn(n, |i, _| c(col[i], col[i + n]));
        if let Some(q) = orthonormalize_against(&u, &basis, 0.5) {
            basis.push(q);
        }
    }
    // Only reachable through catastrophic eigensolver failure.
    let mut e = 0;
    while basis.len() < n && e < n {
        let mut unit = CVec::zeros(n);
        unit[e] = c(1.0, 0.0);
        if let Some(q) = orthonormalize_against(&unit, &basis, 0.5) {
            basis.push(q);
        }
        e += 1;
    }

    let mut u = CMat::from_columns(&basis);
    let d = u.adjoint() * &b * conj(&u);
    let mut sigma = Vec::with_capacity(n);
    for k in 0..n {
        let dk = d[(k, k)];
        let phase = C64::from_polar(1.0, 0.5 * dk.arg());
        let col = u.column(k) * phase;
        u.set_column(k, &col);
        sigma.push(dk.norm());
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let u = CMat::from_fn(n, n, |i, j| u[(i, idx[j])]);
    let sigma = idx.iter().map(|&i| sigma[i]).collect();
    Ok(TakagiFactorization { u, sigma })
}

/// Projects `v` off the orthonormal set `basis` (two passes) and normalizes;
/// `None` if less than `keep` of the original norm survives.
pub fn orthonormalize_against(v: &CVec, basis: &[CVec], keep: f64) -> Option<CVec> {
    let norm0 = v.norm();
    if norm0 == 0.0 {
        return None;
    }
    let mut w = v.clone();
    for _ in 0..2 {
        for q in basis {
            let coeff = inner(&w, q);
            w -= q * coeff;
        }
    }
    let norm = w.norm();
    if norm <= keep * norm0 {
        None
    } else {
        Some(w / c(norm, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn m2(a: [[C64; 2]; 2]) -> CMat {
        CMat::from_fn(2, 2, |i, j| a[i][j])
    }

    fn one() -> C64 {
        c(1.0, 0.0)
    }

    fn zero() -> C64 {
        c(0.0, 0.0)
    }

    #[test]
    fn takagi_swap_matrix() {
        let b = m2([[zero(), one()], [one(), zero()]]);
        let f = takagi(&b, &tol()).unwrap();
        assert!((f.sigma[0] - 1.0).abs() < 1e-12 && (f.sigma[1] - 1.0).abs() < 1e-12);
        assert!((f.u.adjoint() * &f.u - identity(2)).norm() < 1e-12);
        assert!((f.reconstruct() - &b).norm() < 1e-12);

        // The hand-computed factor (1/sqrt 2)[[1, i], [1, -i]] is also valid.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = m2([[c(s, 0.0), c(0.0, s)], [c(s, 0.0), c(0.0, -s)]]);
        assert!((u.adjoint() * &u - identity(2)).norm() < 1e-15);
        assert!((&u * u.transpose() - &b).norm() < 1e-15);
    }

    #[test]
    fn takagi_zero_matrix() {
        let f = takagi(&CMat::zeros(2, 2), &tol()).unwrap();
        assert_eq!(f.sigma, vec![0.0, 0.0]);
        assert!((f.u.adjoint() * &f.u - identity(2)).norm() < 1e-12);
    }

    #[test]
    fn takagi_diag_two_i() {
        let b = m2([[c(2.0, 0.0), zero()], [zero(), c(0.0, 1.0)]]);
        let f = takagi(&b, &tol()).unwrap();
        let oracle = singular_values(&b);
        assert!((f.sigma[0] - oracle[0]).abs() < 1e-12);
        assert!((f.sigma[1] - oracle[1]).abs() < 1e-12);
        assert!((f.sigma[0] - 2.0).abs() < 1e-12 && (f.sigma[1] - 1.0).abs() < 1e-12);
        assert!((f.reconstruct() - &b).norm() < 1e-12);
    }

    #[test]
    fn takagi_rejects_non_symmetric() {
        let b = m2([[zero(), one()], [zero(), zero()]]);
        assert!(matches!(takagi(&b, &tol()), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn psd_sqrt_examples() {
        let h = m2([[c(4.0, 0.0), zero()], [zero(), one()]]);
        let r = psd_sqrt(&h, &tol()).unwrap();
        assert!((r - m2([[c(2.0, 0.0), zero()], [zero(), one()]])).norm() < 1e-12);

        let z = psd_sqrt(&CMat::zeros(3, 3), &tol()).unwrap();
        assert!(z.norm() < 1e-15);

        let h = m2([[c(2.0, 0.0), one()], [one(), c(2.0, 0.0)]]);
        let r = psd_sqrt(&h, &tol()).unwrap();
        assert!((&r * &r - &h).norm() < 1e-12);
        let (vals, _) = hermitian_eigen(&r);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let h = m2([[one(), zero()], [zero(), c(-1.0, 0.0)]]);
        assert!(matches!(psd_sqrt(&h, &tol()), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn pinv_examples() {
        let shift = m2([[zero(), one()], [zero(), zero()]]);
        let expected = m2([[zero(), zero()], [one(), zero()]]);
        assert!((pinv(&shift, &tol()) - expected).norm() < 1e-15);

        assert!((pinv(&identity(3), &tol()) - identity(3)).norm() < 1e-15);

        let d = m2([[c(2.0, 0.0), zero()], [zero(), c(0.0, 1.0)]]);
        let p = pinv(&d, &tol());
        let expected = m2([[c(0.5, 0.0), zero()], [zero(), c(0.0, -1.0)]]);
        assert!((&p - expected).norm() < 1e-14);
        assert!((&d * &p * &d - &d).norm() < 1e-14);
        assert!((&p * &d * &p - &p).norm() < 1e-14);
    }

    #[test]
    fn min_singular_real_examples() {
        assert!((min_singular_real(&RMat::identity(2, 2)) - 1.0).abs() < 1e-15);
        let m = RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(min_singular_real(&m).abs() < 1e-15);
        let m = RMat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -5.0 / 3.0]);
        assert!((min_singular_real(&m) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = CMat::from_row_slice(1, 3, &[one(), one(), zero()]);
        let k = null_space(&a, &tol());
        assert_eq!(k.ncols(), 2);
        assert!((&a * &k).norm() < 1e-14);
        assert!((k.adjoint() * &k - identity(2)).norm() < 1e-14);
    }
}
