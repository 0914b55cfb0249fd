use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("not an involution: K conj(K) differs from I by {residual:.3e}")]
    NotInvolution { residual: f64 },
    #[error("not isometric: K* K differs from I by {residual:.3e}")]
    NotIsometric { residual: f64 },
    #[error("operator is not normal (residual {residual:.3e})")]
    NotNormal { residual: f64 },
    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("target modulus {modulus} lies outside the numerical range disk of radius {radius}")]
    OutsideRange { modulus: f64, radius: f64 },
    #[error("numerical range of a one-dimensional operator is a circle, only |target| = radius is attainable")]
    DimensionOne,
    #[error("pivot {pivot} is singular (min singular value {min_singular:.3e})")]
    PivotSingular {
        pivot: &'static str,
        min_singular: f64,
    },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("empty matrix")]
    Empty,
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("invalid operator file: {0}")]
    InvalidFile(String),
}
