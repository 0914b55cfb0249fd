//! Conjugations, antilinear operators and general real-linear operators.
//!
//! An antilinear `T` is stored as its canonical matrix `A` (`T x = A conj(x)`),
//! a real-linear map as the pair `(P, Q)` (`x -> P x + Q conj(x)`). With the
//! inner product `<a, b> = sum a_i conj(b_i)` the antilinear adjoint defined by
//! `conj(<T x, y>) = <x, T# y>` has canonical matrix `A^T`.

use crate::error::{Error, Result};
use crate::matkernel::{c, conj, conj_vec, ensure_finite, ensure_square, identity, CMat, CVec, RMat, Tolerances, C64};

/// Antiunitary involution `x -> K conj(x)`; `K` is symmetric and unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation {
    kmat: CMat,
}

impl Conjugation {
    /// Validates `K conj(K) = I` (involution) and `K* K = I` (isometry).
    pub fn new(k: CMat, tol: &Tolerances) -> Result<Self> {
        let n = ensure_square(&k)?;
        ensure_finite(&k)?;
        let id = identity(n);
        let involution = (&k * conj(&k) - &id).norm();
        if involution > tol.rtol * (1.0 + k.norm()) {
            return Err(Error::NotInvolution { residual: involution });
        }
        let isometry = (k.adjoint() * &k - &id).norm();
        if isometry > tol.rtol * (1.0 + k.norm()) {
            return Err(Error::NotIsometric { residual: isometry });
        }
        Ok(Self { kmat: k })
    }

    /// Coordinatewise complex conjugation on `C^n`.
    pub fn standard(n: usize) -> Self {
        Self { kmat: identity(n) }
    }

    pub fn kmat(&self) -> &CMat {
        &self.kmat
    }

    pub fn dim(&self) -> usize {
        self.kmat.nrows()
    }

    pub fn apply(&self, x: &CVec) -> Result<CVec> {
        self.as_operator().apply(x)
    }

    pub fn as_operator(&self) -> AntilinearOperator {
        AntilinearOperator {
            canon: self.kmat.clone(),
        }
    }

    /// Linear factor `S` with `T = C S`; for unitary `K` this is `K^T conj(A)`.
    pub fn split(&self, t: &AntilinearOperator) -> Result<CMat> {
        check_dim("conjugation split", self.dim(), t.dim_out())?;
        Ok(self.kmat.transpose() * conj(&t.canon))
    }

    /// The antilinear operator `C S` for a linear `S`.
    pub fn compose_linear(&self, s: &CMat) -> Result<AntilinearOperator> {
        check_dim("conjugation compose", self.dim(), s.nrows())?;
        Ok(AntilinearOperator {
            canon: &self.kmat * conj(s),
        })
    }
}

/// Antilinear `T: C^n -> C^m`, `T x = A conj(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOperator {
    canon: CMat,
}

impl AntilinearOperator {
    pub fn new(canon: CMat) -> Result<Self> {
        ensure_finite(&canon)?;
        Ok(Self { canon })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            canon: CMat::zeros(rows, cols),
        }
    }

    pub fn canon(&self) -> &CMat {
        &self.canon
    }

    pub fn into_canon(self) -> CMat {
        self.canon
    }

    pub fn dim_in(&self) -> usize {
        self.canon.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.canon.nrows()
    }

    pub fn is_square(&self) -> bool {
        self.canon.is_square()
    }

    pub fn norm(&self) -> f64 {
        self.canon.norm()
    }

    pub fn apply(&self, x: &CVec) -> Result<CVec> {
        check_dim("apply", self.dim_in(), x.len())?;
        Ok(&self.canon * conj_vec(x))
    }

    /// `T#`, canonical matrix `A^T`.
    pub fn adjoint(&self) -> Self {
        Self {
            canon: self.canon.transpose(),
        }
    }

    pub fn to_real_linear(&self) -> RealLinearOperator {
        RealLinearOperator {
            lin: CMat::zeros(self.dim_out(), self.dim_in()),
            anti: self.canon.clone(),
        }
    }

    pub fn realify(&self) -> RMat {
        self.to_real_linear().realify()
    }

    /// `T - lambda`, with `lambda` acting by scalar multiplication.
    pub fn shifted(&self, lambda: C64) -> Result<RealLinearOperator> {
        self.to_real_linear().shifted(lambda)
    }
}

/// Real-linear `x -> P x + Q conj(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearOperator {
    lin: CMat,
    anti: CMat,
}

impl RealLinearOperator {
    pub fn new(lin: CMat, anti: CMat) -> Result<Self> {
        if lin.shape() != anti.shape() {
            return Err(Error::DimensionMismatch {
                context: "real-linear parts",
                expected: lin.nrows() * lin.ncols(),
                found: anti.nrows() * anti.ncols(),
            });
        }
        ensure_finite(&lin)?;
        ensure_finite(&anti)?;
        Ok(Self { lin, anti })
    }

    pub fn linear(p: CMat) -> Self {
        let anti = CMat::zeros(p.nrows(), p.ncols());
        Self { lin: p, anti }
    }

    pub fn antilinear(q: CMat) -> Self {
        let lin = CMat::zeros(q.nrows(), q.ncols());
        Self { lin, anti: q }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(identity(n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::linear(CMat::zeros(rows, cols))
    }

    pub fn lin(&self) -> &CMat {
        &self.lin
    }

    pub fn anti(&self) -> &CMat {
        &self.anti
    }

    pub fn dim_in(&self) -> usize {
        self.lin.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.lin.nrows()
    }

    /// `sqrt(||P||^2 + ||Q||^2)`.
    pub fn norm(&self) -> f64 {
        self.lin.norm().hypot(self.anti.norm())
    }

    pub fn is_purely_linear(&self) -> bool {
        self.anti.iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    pub fn is_purely_antilinear(&self) -> bool {
        self.lin.iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    /// The antilinear part as an operator, if the linear part vanishes.
    pub fn as_antilinear(&self) -> Option<AntilinearOperator> {
        self.is_purely_antilinear().then(|| AntilinearOperator {
            canon: self.anti.clone(),
        })
    }

    pub fn apply(&self, x: &CVec) -> Result<CVec> {
        check_dim("apply", self.dim_in(), x.len())?;
        Ok(&self.lin * x + &self.anti * conj_vec(x))
    }

    /// `self - lambda`, subtracting from the linear part only.
    pub fn shifted(&self, lambda: C64) -> Result<Self> {
        let n = ensure_square(&self.lin)?;
        Ok(Self {
            lin: &self.lin - identity(n) * lambda,
            anti: self.anti.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            lin: &self.lin + &other.lin,
            anti: &self.anti + &other.anti,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            lin: &self.lin - &other.lin,
            anti: &self.anti - &other.anti,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            lin: -&self.lin,
            anti: -&self.anti,
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.lin.shape() != other.lin.shape() {
            return Err(Error::DimensionMismatch {
                context: "real-linear sum",
                expected: self.dim_out() * self.dim_in(),
                found: other.dim_out() * other.dim_in(),
            });
        }
        Ok(())
    }

    /// Adjoint with respect to `Re <., .>`: `(P*, Q^T)`.
    pub fn adjoint(&self) -> Self {
        Self {
            lin: self.lin.adjoint(),
            anti: self.anti.transpose(),
        }
    }

    /// The `2m x 2n` real matrix acting on stacked `(Re x; Im x)`.
    pub fn realify(&self) -> RMat {
        let (m, n) = self.lin.shape();
        let mut out = RMat::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let p = self.lin[(i, j)];
                let q = self.anti[(i, j)];
                out[(i, j)] = p.re + q.re;
                out[(i, j + n)] = -p.im + q.im;
                out[(i + m, j)] = p.im + q.im;
                out[(i + m, j + n)] = p.re - q.re;
            }
        }
        out
    }

    /// Inverse of [`realify`](Self::realify); every `2m x 2n` real matrix is
    /// the realification of exactly one `(P, Q)`.
    pub fn from_realified(r: &RMat) -> Result<Self> {
        let (rows, cols) = r.shape();
        if rows % 2 != 0 || cols % 2 != 0 {
            return Err(Error::DimensionMismatch {
                context: "realification must have even dimensions",
                expected: rows + rows % 2,
                found: rows,
            });
        }
        let (m, n) = (rows / 2, cols / 2);
        let lin = CMat::from_fn(m, n, |i, j| {
            let (r11, r12, r21, r22) = (r[(i, j)], r[(i, j + n)], r[(i + m, j)], r[(i + m, j + n)]);
            c(0.5 * (r11 + r22), 0.5 * (r21 - r12))
        });
        let anti = CMat::from_fn(m, n, |i, j| {
            let (r11, r12, r21, r22) = (r[(i, j)], r[(i, j + n)], r[(i + m, j)], r[(i + m, j + n)]);
            c(0.5 * (r11 - r22), 0.5 * (r21 + r12))
        });
        Ok(Self { lin, anti })
    }

    /// Real-linear inverse via the realification. Fails with `PivotSingular`
    /// (naming `pivot`) when the realification is singular under `tol.sing`.
    pub fn inverse(&self, pivot: &'static str, tol: &Tolerances) -> Result<(Self, f64)> {
        let r = self.realify();
        if !r.is_square() {
            return Err(Error::NotSquare {
                rows: r.nrows(),
                cols: r.ncols(),
            });
        }
        let smin = crate::matkernel::min_singular_real(&r);
        if smin <= tol.sing_threshold(r.norm()) {
            return Err(Error::PivotSingular {
                pivot,
                min_singular: smin,
            });
        }
        let inv = r.try_inverse().ok_or(Error::PivotSingular {
            pivot,
            min_singular: smin,
        })?;
        Ok((Self::from_realified(&inv)?, smin))
    }

    /// Places four blocks into one operator on the direct sum.
    pub fn from_blocks(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        let (n, m) = (tl.dim_out(), br.dim_out());
        let (ni, mi) = (tl.dim_in(), br.dim_in());
        check_dim("block tr rows", n, tr.dim_out())?;
        check_dim("block bl rows", m, bl.dim_out())?;
        check_dim("block bl cols", ni, bl.dim_in())?;
        check_dim("block tr cols", mi, tr.dim_in())?;
        let assemble = |part: fn(&Self) -> &CMat| {
            let mut out = CMat::zeros(n + m, ni + mi);
            out.view_mut((0, 0), (n, ni)).copy_from(part(tl));
            out.view_mut((0, ni), (n, mi)).copy_from(part(tr));
            out.view_mut((n, 0), (m, ni)).copy_from(part(bl));
            out.view_mut((n, ni), (m, mi)).copy_from(part(br));
            out
        };
        Ok(Self {
            lin: assemble(Self::lin),
            anti: assemble(Self::anti),
        })
    }

    /// Distance to another operator of the same shape.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.lin - &other.lin)
            .norm()
            .hypot((&self.anti - &other.anti).norm())
    }
}

/// Anything that can be viewed as a real-linear operator.
pub trait AsRealLinear {
    fn to_real_linear(&self) -> RealLinearOperator;
}

impl AsRealLinear for RealLinearOperator {
    fn to_real_linear(&self) -> RealLinearOperator {
        self.clone()
    }
}

impl AsRealLinear for AntilinearOperator {
    fn to_real_linear(&self) -> RealLinearOperator {
        AntilinearOperator::to_real_linear(self)
    }
}

impl AsRealLinear for Conjugation {
    fn to_real_linear(&self) -> RealLinearOperator {
        RealLinearOperator::antilinear(self.kmat.clone())
    }
}

/// A plain complex matrix acts linearly.
impl AsRealLinear for CMat {
    fn to_real_linear(&self) -> RealLinearOperator {
        RealLinearOperator::linear(self.clone())
    }
}

/// `f o g` under `(P1, Q1) o (P2, Q2) = (P1 P2 + Q1 conj(Q2), P1 Q2 + Q1 conj(P2))`.
pub fn compose(f: &impl AsRealLinear, g: &impl AsRealLinear) -> Result<RealLinearOperator> {
    let f = f.to_real_linear();
    let g = g.to_real_linear();
    check_dim("compose", f.dim_in(), g.dim_out())?;
    let lin = &f.lin * &g.lin + &f.anti * conj(&g.anti);
    let anti = &f.lin * &g.anti + &f.anti * conj(&g.lin);
    Ok(RealLinearOperator { lin, anti })
}

/// Left-to-right product `ops[0] o ops[1] o ...`.
pub fn compose_all(ops: &[RealLinearOperator]) -> Result<RealLinearOperator> {
    let (first, rest) = ops.split_first().ok_or(Error::Empty)?;
    rest.iter().try_fold(first.clone(), |acc, op| compose(&acc, op))
}

/// `N(T#) = R(T)^perp`, checked on realifications: returns
/// `||P_ker(T#) + P_ran(T) - I||` for the orthogonal projectors onto the
/// numerical kernel of `realify(T#)` and the numerical range of `realify(T)`.
pub fn kernel_range_residual(t: &AntilinearOperator, tol: &Tolerances) -> f64 {
    let ker = crate::matkernel::null_space_real(&t.adjoint().realify(), tol);
    let ran = crate::matkernel::range_basis_real(&t.realify(), tol);
    let dim = 2 * t.dim_out();
    let proj = &ker * ker.transpose() + &ran * ran.transpose();
    (proj - RMat::identity(dim, dim)).norm()
}

fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
