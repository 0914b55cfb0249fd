//! Seeded instance generators. Identical `(kind, dims, seed)` give identical
//! operator files, byte for byte.

use std::fmt;
use std::str::FromStr;

use crate::antiop::AntilinearOperator;
use crate::blockops::BlockAntilinearMatrix;
use crate::error::{Error, Result};
use crate::matkernel::{c, CMat, CVec, C64};
use crate::opfile::{Meta, OperatorFile};
use crate::sampling::{self, SeededRng};
use crate::structure::gram;

/// Rejection threshold for the `nonnormal` family on `||A A* - conj(A* A)||`.
pub const NONNORMAL_MIN_RESIDUAL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    SelfAdjoint,
    ScaledAntiunitary,
    TwistedNormal,
    NonNormal,
    Nilpotent,
    Block,
    Multiplication,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::SelfAdjoint,
        GenKind::ScaledAntiunitary,
        GenKind::TwistedNormal,
        GenKind::NonNormal,
        GenKind::Nilpotent,
        GenKind::Block,
        GenKind::Multiplication,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::SelfAdjoint => "selfadjoint",
            GenKind::ScaledAntiunitary => "scaled_antiunitary",
            GenKind::TwistedNormal => "twisted_normal",
            GenKind::NonNormal => "nonnormal",
            GenKind::Nilpotent => "nilpotent",
            GenKind::Block => "block",
            GenKind::Multiplication => "multiplication",
        }
    }

    /// Families that are antilinear normal by construction.
    pub fn is_normal_family(self) -> bool {
        matches!(
            self,
            GenKind::SelfAdjoint | GenKind::ScaledAntiunitary | GenKind::TwistedNormal | GenKind::Multiplication
        )
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

fn meta(kind: GenKind, seed: u64, description: String) -> Meta {
    Meta {
        seed: Some(seed),
        generator: Some(kind.name().to_string()),
        description,
        params: Default::default(),
    }
}

/// `A = r U` with `U` symmetric unitary: `A conj(A) = r^2 I`, so the
/// spectrum is the single circle of radius `r`.
pub fn scaled_antiunitary(rng: &mut SeededRng, n: usize) -> (CMat, f64) {
    let r = sampling::uniform(rng, 0.5, 2.0);
    (sampling::symmetric_unitary(rng, n) * c(r, 0.0), r)
}

/// Gaussian matrices redrawn until the normality residual exceeds
/// [`NONNORMAL_MIN_RESIDUAL`]. Every operator on `C^1` is normal, so `n`
/// must be at least 2.
pub fn nonnormal(rng: &mut SeededRng, n: usize) -> CMat {
    assert!(n >= 2, "no non-normal operators on C^1");
    loop {
        let a = sampling::gaussian_matrix(rng, n, n);
        let g = gram(&AntilinearOperator::new(a.clone()).expect("finite"));
        if (g.left - g.right).norm() > NONNORMAL_MIN_RESIDUAL {
            return a;
        }
    }
}

/// Strictly upper triangular Gaussian matrix.
pub fn nilpotent(rng: &mut SeededRng, n: usize) -> CMat {
    let mut a = sampling::gaussian_matrix(rng, n, n);
    for i in 0..n {
        for j in 0..=i {
            a[(i, j)] = c(0.0, 0.0);
        }
    }
    a
}

/// `T = C M_phi` on `n` sample points: canonical matrix `diag(conj phi)` for
/// `phi(t) = a + b exp(2 pi i t)` at `t = k / n`.
pub fn multiplication(rng: &mut SeededRng, n: usize) -> CMat {
    let a = sampling::gaussian(rng);
    let b = sampling::gaussian(rng);
    let phi = CVec::from_fn(n, |k, _| {
        let t = k as f64 / n as f64;
        a + b * C64::from_polar(1.0, std::f64::consts::TAU * t)
    });
    CMat::from_diagonal(&phi.map(|z| z.conj()))
}

pub fn block(rng: &mut SeededRng, n: usize, m: usize) -> BlockAntilinearMatrix {
    let a = sampling::gaussian_matrix(rng, n, n);
    let b = sampling::gaussian_matrix(rng, n, m);
    let f = sampling::gaussian_matrix(rng, m, n);
    let e = sampling::gaussian_matrix(rng, m, m);
    BlockAntilinearMatrix::from_canon(a, b, f, e).expect("consistent block sizes")
}

/// `dim2` is the second block size for `block` (defaults to `dim`) and is
/// ignored otherwise.
pub fn generate(kind: GenKind, dim: usize, dim2: Option<usize>, seed: u64) -> Result<OperatorFile> {
    if dim == 0 || dim2 == Some(0) {
        return Err(Error::Empty);
    }
    if kind == GenKind::NonNormal && dim < 2 {
        return Err(Error::Unsupported("every operator on C^1 is normal, nonnormal needs dim >= 2"));
    }
    let mut rng = sampling::rng(seed);
    let rng = &mut rng;
    let single = |a: CMat, description: String| {
        OperatorFile::antilinear(&AntilinearOperator::new(a).expect("finite"), meta(kind, seed, description))
    };
    Ok(match kind {
        GenKind::SelfAdjoint => single(sampling::symmetric(rng, dim), "symmetric canonical matrix".into()),
        GenKind::ScaledAntiunitary => {
            let (a, r) = scaled_antiunitary(rng, dim);
            let mut file = single(a, format!("{r} times a symmetric unitary"));
            file.meta.params.insert("r".into(), r);
            file
        }
        GenKind::TwistedNormal => single(
            sampling::twisted_normal(rng, dim),
            "V (S + K) V^T with S symmetric, K skew-symmetric, V unitary".into(),
        ),
        GenKind::NonNormal => single(nonnormal(rng, dim), "Gaussian, normality residual above 1e-3".into()),
        GenKind::Nilpotent => single(nilpotent(rng, dim), "strictly upper triangular".into()),
        GenKind::Multiplication => single(
            multiplication(rng, dim),
            "C M_phi with phi(t) = a + b exp(2 pi i t) sampled at k/n".into(),
        ),
        GenKind::Block => {
            let m = dim2.unwrap_or(dim);
            OperatorFile::block(
                &block(rng, dim, m),
                meta(kind, seed, format!("Gaussian blocks, n = {dim}, m = {m}")),
            )
        }
    })
}
