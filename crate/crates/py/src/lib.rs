//! Python module `antilin`: operators are built from nested lists of Python
//! complex numbers (row-major canonical matrices, `T x = A conj(x)`).

use antilin_core::blockops::{self, Factorization, Selector};
use antilin_core::gen::{self, GenKind};
use antilin_core::matkernel::{self, CMat, CVec, Tolerances, C64};
use antilin_core::opfile::OperatorFile;
use antilin_core::{numrange, spectra, structure};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_mat(rows: Vec<Vec<C64>>) -> PyResult<CMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 {
        return Err(err("matrix must be non-empty"));
    }
    if rows.iter().any(|row| row.len() != c) {
        return Err(err("rows must have equal length"));
    }
    Ok(CMat::from_fn(r, c, |i, j| rows[i][j]))
}

fn from_mat(m: &CMat) -> Vec<Vec<C64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn tolerances(rtol: Option<f64>) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(r) = rtol {
        tol.rtol = r;
    }
    tol
}

#[pyclass(name = "AntilinearOperator", module = "antilin", frozen)]
struct PyAntilinear(antilin_core::AntilinearOperator);

#[pymethods]
impl PyAntilinear {
    #[new]
    fn new(matrix: Vec<Vec<C64>>) -> PyResult<Self> {
        Ok(Self(antilin_core::AntilinearOperator::new(to_mat(matrix)?).map_err(err)?))
    }

    /// Parses an operator file; block and extension files yield the flattened
    /// block matrix and the ambient operator.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = OperatorFile::parse(text).map_err(err)?;
        Ok(Self(file.load(&Tolerances::default()).map_err(err)?.operator()))
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.dim_out(), self.0.dim_in())
    }

    fn canon(&self) -> Vec<Vec<C64>> {
        from_mat(self.0.canon())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn apply(&self, x: Vec<C64>) -> PyResult<Vec<C64>> {
        Ok(self.0.apply(&CVec::from_vec(x)).map_err(err)?.iter().copied().collect())
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn realify(&self) -> Vec<Vec<f64>> {
        let r = self.0.realify();
        (0..r.nrows()).map(|i| r.row(i).iter().copied().collect()).collect()
    }

    /// `(normal, residual)`.
    #[pyo3(signature = (tol = 1e-8))]
    fn is_normal(&self, tol: f64) -> PyResult<(bool, f64)> {
        let n = structure::is_normal(&self.0, tol).map_err(err)?;
        Ok((n.normal, n.residual))
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn is_selfadjoint(&self, tol: f64) -> PyResult<(bool, f64)> {
        structure::is_selfadjoint(&self.0, tol).map_err(err)
    }

    /// `(U, |T|)`: the antilinear partial isometry and the modulus matrix.
    #[pyo3(signature = (rtol = None))]
    fn polar(&self, rtol: Option<f64>) -> (Self, Vec<Vec<C64>>) {
        let p = structure::polar(&self.0, &tolerances(rtol));
        (Self(p.u), from_mat(&p.modulus))
    }

    #[pyo3(signature = (rtol = None))]
    fn moore_penrose(&self, rtol: Option<f64>) -> Self {
        Self(structure::moore_penrose(&self.0, &tolerances(rtol)).dagger)
    }

    #[pyo3(signature = (rtol = None))]
    fn identity_residuals(&self, rtol: Option<f64>) -> PyResult<BTreeMap<String, f64>> {
        let tol = tolerances(rtol);
        Ok(structure::identity_suite(&self.0, &tol, tol.sing).map_err(err)?.residuals)
    }

    #[pyo3(signature = (rtol = None))]
    fn spectrum_radii(&self, rtol: Option<f64>) -> PyResult<Vec<f64>> {
        Ok(spectra::antilinear_spectrum(&self.0, &tolerances(rtol)).map_err(err)?.radii)
    }

    fn in_spectrum(&self, lam: C64) -> PyResult<bool> {
        spectra::is_in_spectrum(&self.0.to_real_linear(), lam, &Tolerances::default()).map_err(err)
    }

    fn numerical_range_radius(&self) -> PyResult<f64> {
        Ok(numrange::nr_disk(&self.0, &Tolerances::default()).map_err(err)?.radius)
    }

    fn nr_value(&self, x: Vec<C64>) -> PyResult<C64> {
        numrange::nr_value(&self.0, &CVec::from_vec(x)).map_err(err)
    }

    /// A unit vector `x` with `<T x, x> = target`.
    fn witness(&self, target: C64) -> PyResult<Vec<C64>> {
        let x = numrange::witness_disk(&self.0, target, &Tolerances::default()).map_err(err)?;
        Ok(x.iter().copied().collect())
    }

    fn __repr__(&self) -> String {
        format!("AntilinearOperator(shape={:?})", self.shape())
    }
}

#[pyclass(name = "BlockAntilinearMatrix", module = "antilin", frozen)]
struct PyBlock(blockops::BlockAntilinearMatrix);

fn selector(s: &str) -> PyResult<Selector> {
    Selector::ALL
        .into_iter()
        .find(|k| k.to_string() == s)
        .ok_or_else(|| err(format!("selector must be one of S1, S2, T1, T2, got {s:?}")))
}

fn factorization(s: &str) -> PyResult<Factorization> {
    Factorization::ALL
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| err(format!("unknown factorization {s:?}")))
}

#[pymethods]
impl PyBlock {
    #[new]
    fn new(a: Vec<Vec<C64>>, b: Vec<Vec<C64>>, f: Vec<Vec<C64>>, e: Vec<Vec<C64>>) -> PyResult<Self> {
        blockops::BlockAntilinearMatrix::from_canon(to_mat(a)?, to_mat(b)?, to_mat(f)?, to_mat(e)?)
            .map(Self)
            .map_err(err)
    }

    fn flatten(&self) -> PyAntilinear {
        PyAntilinear(self.0.flatten())
    }

    /// `(P, Q)` of the complement `x -> P x + Q conj(x)`.
    fn complement(&self, which: &str, mu: C64) -> PyResult<(Vec<Vec<C64>>, Vec<Vec<C64>>)> {
        let c = blockops::complement(&self.0, selector(which)?, mu, &Tolerances::default()).map_err(err)?;
        Ok((from_mat(c.op.lin()), from_mat(c.op.anti())))
    }

    /// Relative residual of one of `schur_a`, `schur_e`, `quadratic_f`,
    /// `quadratic_b`.
    fn factorization_residual(&self, which: &str, mu: C64) -> PyResult<f64> {
        blockops::verify_factorization(&self.0, mu, factorization(which)?, &Tolerances::default()).map_err(err)
    }

    fn rank_link(&self) -> PyResult<(usize, usize, bool)> {
        let r = blockops::rank_link(&self.0, &Tolerances::default()).map_err(err)?;
        Ok((r.rank_full, r.rank_s2, r.holds_s2))
    }
}

/// `(U, sigma)` with `B = U diag(sigma) U^T` for complex symmetric `B`.
#[pyfunction]
fn takagi(matrix: Vec<Vec<C64>>) -> PyResult<(Vec<Vec<C64>>, Vec<f64>)> {
    let f = matkernel::takagi(&to_mat(matrix)?, &Tolerances::default()).map_err(err)?;
    Ok((from_mat(&f.u), f.sigma))
}

/// Canonical JSON of a seeded operator file.
#[pyfunction]
#[pyo3(signature = (kind, dim, seed, dim2 = None))]
fn generate(kind: &str, dim: usize, seed: u64, dim2: Option<usize>) -> PyResult<String> {
    let kind: GenKind = kind.parse().map_err(err)?;
    Ok(gen::generate(kind, dim, dim2, seed).map_err(err)?.to_json())
}

#[pymodule]
fn antilin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAntilinear>()?;
    m.add_class::<PyBlock>()?;
    m.add_function(wrap_pyfunction!(takagi, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
