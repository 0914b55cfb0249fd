//! Antilinear operator calculus on finite-dimensional complex Hilbert spaces.
//!
//! Every antilinear map `T: C^n -> C^m` is stored through its canonical matrix
//! `A`, acting as `T x = A * conj(x)`. The inner product is linear in the
//! first slot and conjugate-linear in the second, `<a, b> = sum a_i conj(b_i)`,
//! which makes the adjoint `T#` the operator with canonical matrix `A^T`.
//!
//! General real-linear maps are pairs `(P, Q)` acting as `x -> P x + Q conj(x)`;
//! they close the algebra under composition, shifts `T - lambda` and
//! resolvents.

pub mod antiop;
pub mod blockops;
pub mod error;
pub mod extensions;
pub mod gen;
pub mod matkernel;
pub mod numrange;
pub mod opfile;
pub mod report;
pub mod sampling;
pub mod spectra;
pub mod structure;

pub use antiop::{AntilinearOperator, Conjugation, RealLinearOperator};
pub use blockops::BlockAntilinearMatrix;
pub use error::{Error, Result};
pub use matkernel::{CMat, CVec, RMat, Tolerances, C64};
