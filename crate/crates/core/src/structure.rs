//! Gram operators, normality, modulus, polar decomposition and the
//! Moore-Penrose inverse of antilinear operators, plus the identity suite
//! relating them.
//!
//! Identity residuals are relative: `||X - Y|| / (1 + max(||X||, ||Y||))`.

use std::collections::BTreeMap;

use crate::antiop::{compose, AntilinearOperator, RealLinearOperator};
use crate::error::{Error, Result};
use crate::matkernel::{c, conj, ensure_square, inner, pinv, psd_sqrt, svd, CMat, CVec, Tolerances};
use crate::sampling;

/// Seed of the unit-vector sample behind the norm criterion.
pub const NORM_CRITERION_SEED: u64 = 0x5eed_0001;
pub const NORM_CRITERION_SAMPLES: usize = 50;

pub fn rel_diff(x: &CMat, y: &CMat) -> f64 {
    (x - y).norm() / (1.0 + x.norm().max(y.norm()))
}

/// Canonical matrices of the two Gram operators.
#[derive(Debug, Clone)]
pub struct Gram {
    /// `T T#`, matrix `A A*`.
    pub left: CMat,
    /// `T# T`, matrix `conj(A* A)`.
    pub right: CMat,
}

pub fn gram(t: &AntilinearOperator) -> Gram {
    let a = t.canon();
    Gram {
        left: a * a.adjoint(),
        right: conj(&(a.adjoint() * a)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normality {
    pub normal: bool,
    /// `||A A* - conj(A* A)||`.
    pub residual: f64,
    /// Largest `| ||T x|| - ||T# x|| |` over the sampled unit vectors.
    pub norm_gap: f64,
    pub norm_criterion: bool,
}

impl Normality {
    pub fn criteria_agree(&self) -> bool {
        self.normal == self.norm_criterion
    }
}

/// `T T# = T# T` within `tol (1 + ||A||^2)`, cross-checked by
/// `||T x|| = ||T# x||` on seeded random unit vectors within `tol (1 + ||A||)`.
pub fn is_normal(t: &AntilinearOperator, tol: f64) -> Result<Normality> {
    ensure_square(t.canon())?;
    let g = gram(t);
    let residual = (&g.left - &g.right).norm();
    let scale = t.norm();
    let norm_gap = norm_criterion_gap(t, NORM_CRITERION_SAMPLES, NORM_CRITERION_SEED)?;
    Ok(Normality {
        normal: residual <= tol * (1.0 + scale * scale),
        residual,
        norm_gap,
        norm_criterion: norm_gap <= tol * (1.0 + scale),
    })
}

pub fn norm_criterion_gap(t: &AntilinearOperator, samples: usize, seed: u64) -> Result<f64> {
    let n = ensure_square(t.canon())?;
    let sharp = t.adjoint();
    let mut rng = sampling::rng(seed);
    let mut gap: f64 = 0.0;
    for _ in 0..samples {
        let x = sampling::unit_vector(&mut rng, n);
        let d = t.apply(&x)?.norm() - sharp.apply(&x)?.norm();
        gap = gap.max(d.abs());
    }
    Ok(gap)
}

/// Returns `(A == A^T within tol (1 + ||A||), ||A - A^T||)`.
pub fn is_selfadjoint(t: &AntilinearOperator, tol: f64) -> Result<(bool, f64)> {
    ensure_square(t.canon())?;
    let residual = (t.canon() - t.canon().transpose()).norm();
    Ok((residual <= tol * (1.0 + t.norm()), residual))
}

/// `|T| = (T# T)^{1/2}`, the root of `conj(A* A)`. Built from the SVD
/// `A = W S V*` as `conj(V S V*)`, which keeps small singular values accurate
/// where a square root of the Gram matrix would square the conditioning.
pub fn modulus(t: &AntilinearOperator, _tol: &Tolerances) -> Result<CMat> {
    let n = t.dim_in();
    let dec = svd(t.canon());
    let mut vsv = CMat::zeros(n, n);
    for (k, &s) in dec.singular_values.iter().enumerate() {
        let v = dec.v_t.row(k).adjoint();
        vsv += (&v * v.adjoint()).scale(s);
    }
    let vsv = (&vsv + vsv.adjoint()).scale(0.5);
    Ok(conj(&vsv))
}

/// `T = U |T|` with `U` a partial antilinear isometry.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub u: AntilinearOperator,
    pub modulus: CMat,
}

impl PolarDecomposition {
    /// `||A - U_c conj(M)||`.
    pub fn reconstruction_residual(&self, t: &AntilinearOperator) -> f64 {
        (t.canon() - self.u.canon() * conj(&self.modulus)).norm()
    }

    /// `||U_c U_c* U_c - U_c||`.
    pub fn partial_isometry_residual(&self) -> f64 {
        let u = self.u.canon();
        (u * u.adjoint() * u - u).norm()
    }

    /// `U# U` (matrix `conj(U_c* U_c)`) against the projector onto `R(|T|)`.
    pub fn initial_space_residual(&self, tol: &Tolerances) -> f64 {
        let u = self.u.canon();
        let proj = crate::matkernel::range_projector(&self.modulus, tol);
        (conj(&(u.adjoint() * u)) - proj).norm()
    }

    /// `U U#` (matrix `U_c U_c*`) against the projector onto `R(T)`.
    pub fn final_space_residual(&self, t: &AntilinearOperator, tol: &Tolerances) -> f64 {
        let u = self.u.canon();
        let proj = crate::matkernel::range_projector(t.canon(), tol);
        (u * u.adjoint() - proj).norm()
    }
}

/// From the compact SVD `A = W_r S_r V_r*`: `U_c = W_r V_r*` and
/// `|T| = conj(V_r S_r V_r*)`.
pub fn polar(t: &AntilinearOperator, tol: &Tolerances) -> PolarDecomposition {
    let (m, n) = t.canon().shape();
    let dec = svd(t.canon());
    let r = dec.rank(tol);
    let mut u = CMat::zeros(m, n);
    let mut vsv = CMat::zeros(n, n);
    for k in 0..r {
        let w = dec.u.column(k);
        let v = dec.v_t.row(k).adjoint();
        u += &w * v.adjoint();
        vsv += (&v * v.adjoint()).scale(dec.singular_values[k]);
    }
    let vsv = (&vsv + vsv.adjoint()).scale(0.5);
    PolarDecomposition {
        u: AntilinearOperator::new(u).expect("finite"),
        modulus: conj(&vsv),
    }
}

/// `||U |T| - |T| U||` for normal `T`, i.e. `||U_c conj(M) - M U_c||`.
pub fn check_polar_commutation(t: &AntilinearOperator, normal_tol: f64, tol: &Tolerances) -> Result<f64> {
    let normality = is_normal(t, normal_tol)?;
    if !normality.normal {
        return Err(Error::NotNormal {
            residual: normality.residual,
        });
    }
    let p = polar(t, tol);
    let lhs = compose(&p.u, &p.modulus)?;
    let rhs = compose(&p.modulus, &p.u)?;
    Ok(lhs.distance(&rhs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CNormal {
    pub normal: bool,
    pub residual: f64,
}

/// `C0 |T| C0 = |T# C0|`: compares `conj(|T|)` with `psd_sqrt(conj(A) A^T)`,
/// the modulus of the linear map `T# C0` (matrix `A^T`).
pub fn c_normal_criterion(t: &AntilinearOperator, normal_tol: f64, tol: &Tolerances) -> Result<CNormal> {
    ensure_square(t.canon())?;
    let a = t.canon();
    let lhs = conj(&modulus(t, tol)?);
    let rhs = psd_sqrt(&(conj(a) * a.transpose()), tol)?;
    let residual = (lhs - rhs).norm();
    Ok(CNormal {
        normal: residual <= normal_tol * (1.0 + t.norm()),
        residual,
    })
}

fn power(op: &RealLinearOperator, k: usize) -> Result<RealLinearOperator> {
    let mut out = RealLinearOperator::identity(op.dim_in());
    for _ in 0..k {
        out = compose(&out, op)?;
    }
    Ok(out)
}

/// `||T^k (T#)^k - (T#)^k T^k||` (norm of the `(P, Q)` difference) for normal `T`.
pub fn power_commute(t: &AntilinearOperator, k: usize, normal_tol: f64) -> Result<f64> {
    let normality = is_normal(t, normal_tol)?;
    if !normality.normal {
        return Err(Error::NotNormal {
            residual: normality.residual,
        });
    }
    let tk = power(&t.to_real_linear(), k)?;
    let sk = power(&t.adjoint().to_real_linear(), k)?;
    Ok(compose(&tk, &sk)?.distance(&compose(&sk, &tk)?))
}

/// Greedy column-pivoted Gram-Schmidt: the first `r` orthonormal directions
/// of the column space of `m`, largest residual first.
pub fn pivoted_orthonormal_basis(m: &CMat, r: usize) -> CMat {
    let rows = m.nrows();
    let mut work: Vec<CVec> = (0..m.ncols()).map(|j| m.column(j).into_owned()).collect();
    let mut basis: Vec<CVec> = Vec::with_capacity(r);
    for _ in 0..r {
        let Some((idx, _)) = work
            .iter()
            .enumerate()
            .map(|(j, v)| (j, v.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        let pick = work.swap_remove(idx);
        let mut q = pick;
        for _ in 0..2 {
            for b in &basis {
                let coeff = inner(&q, b);
                q -= b * coeff;
            }
        }
        let norm = q.norm();
        if norm == 0.0 {
            break;
        }
        q /= c(norm, 0.0);
        for v in work.iter_mut() {
            let coeff = inner(v, &q);
            *v -= &q * coeff;
        }
        basis.push(q);
    }
    if basis.is_empty() {
        CMat::zeros(rows, 0)
    } else {
        CMat::from_columns(&basis)
    }
}

#[derive(Debug, Clone)]
pub struct MpResult {
    pub dagger: AntilinearOperator,
    pub residuals: BTreeMap<String, f64>,
}

/// `T^dagger` built from its definition: invert `T` restricted to
/// `N(T)^perp = R(A^T)` onto `R(T) = R(A)` and extend by zero on `R(T)^perp`.
///
/// With orthonormal bases `Q_d` of `R(A^T)` and `Q_r` of `R(A)`, the
/// restriction in coordinates is `alpha -> M conj(alpha)`,
/// `M = Q_r* A conj(Q_d)`, and the assembled canonical matrix is
/// `Q_d conj(M^{-1}) Q_r^T`. The result is compared against
/// `conj(pinv(A))`.
pub fn moore_penrose(t: &AntilinearOperator, tol: &Tolerances) -> MpResult {
    let a = t.canon();
    let (m, n) = a.shape();
    let r = crate::matkernel::rank(a, tol);
    let qr = pivoted_orthonormal_basis(a, r);
    let qd = pivoted_orthonormal_basis(&a.transpose(), r);
    let canon = if r == 0 {
        CMat::zeros(n, m)
    } else {
        let restricted = qr.adjoint() * a * conj(&qd);
        let inv = restricted
            .clone()
            .try_inverse()
            .unwrap_or_else(|| pinv(&restricted, tol));
        &qd * conj(&inv) * qr.transpose()
    };
    let oracle = conj(&pinv(a, tol));
    let dagger = AntilinearOperator::new(canon).expect("finite");
    let d = dagger.canon();

    let mut residuals = BTreeMap::new();
    residuals.insert(
        "definition_vs_pinv".to_string(),
        (d - &oracle).norm() / (1.0 + oracle.norm()),
    );
    // T T^dagger and T^dagger T as linear maps.
    let left = a * conj(d);
    let right = d * conj(a);
    let proj_range = &qr * qr.adjoint();
    let proj_coker = &qd * qd.adjoint();
    residuals.insert("t_tdagger_projector".to_string(), rel_diff(&left, &proj_range));
    residuals.insert("tdagger_t_projector".to_string(), rel_diff(&right, &proj_coker));
    MpResult { dagger, residuals }
}

/// Range equality: `T T^dagger = T^dagger T` exactly when `R(T) = R(T#)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeEquality {
    pub projector_gap: f64,
    pub range_gap: f64,
    pub projectors_equal: bool,
    pub ranges_equal: bool,
}

impl RangeEquality {
    pub fn consistent(&self) -> bool {
        self.projectors_equal == self.ranges_equal
    }
}

#[derive(Debug, Clone)]
pub struct IdentitySuite {
    pub residuals: BTreeMap<String, f64>,
    pub range_equality: RangeEquality,
}

pub fn identity_suite(t: &AntilinearOperator, tol: &Tolerances, equality_tol: f64) -> Result<IdentitySuite> {
    let a = t.canon();
    let sharp = t.adjoint();
    let mp = moore_penrose(t, tol);
    let mp_sharp = moore_penrose(&sharp, tol);
    let dag = &mp.dagger;
    let dag_sharp = &mp_sharp.dagger;
    let g = gram(t);

    let mut res = BTreeMap::new();
    res.insert(
        "sharp_dagger".to_string(),
        rel_diff(dag_sharp.canon(), dag.adjoint().canon()),
    );
    res.insert(
        "dagger_dagger".to_string(),
        rel_diff(moore_penrose(dag, tol).dagger.canon(), a),
    );
    let prod = compose(dag, dag_sharp)?;
    res.insert(
        "right_gram_dagger".to_string(),
        rel_diff(&pinv(&g.right, tol), prod.lin()) + rel_anti(&prod),
    );
    let prod = compose(dag_sharp, dag)?;
    res.insert(
        "left_gram_dagger".to_string(),
        rel_diff(&pinv(&g.left, tol), prod.lin()) + rel_anti(&prod),
    );
    let mod_t = modulus(t, tol)?;
    res.insert(
        "modulus_dagger".to_string(),
        rel_diff(&pinv(&mod_t, tol), &modulus(dag_sharp, tol)?),
    );
    res.insert(
        "dagger_modulus".to_string(),
        rel_diff(&modulus(dag, tol)?, &pinv(&modulus(&sharp, tol)?, tol)),
    );
    let p = polar(t, tol);
    let u_sharp = p.u.adjoint();
    let factored = compose(&pinv(&mod_t, tol), &u_sharp)?;
    res.insert(
        "dagger_polar_factorization".to_string(),
        rel_diff(factored.anti(), dag.canon()) + rel_lin(&factored),
    );
    res.insert(
        "polar_of_sharp".to_string(),
        rel_diff(polar(&sharp, tol).u.canon(), u_sharp.canon()),
    );
    for (k, v) in mp.residuals {
        res.insert(format!("mp_{k}"), v);
    }

    let t_tdag = compose(t, dag)?;
    let tdag_t = compose(dag, t)?;
    let projector_gap = if a.is_square() {
        (t_tdag.lin() - tdag_t.lin()).norm()
    } else {
        f64::INFINITY
    };
    let p_range = crate::matkernel::range_projector(a, tol);
    let p_range_sharp = crate::matkernel::range_projector(sharp.canon(), tol);
    let range_gap = if a.is_square() {
        (p_range - p_range_sharp).norm()
    } else {
        f64::INFINITY
    };
    let range_equality = RangeEquality {
        projector_gap,
        range_gap,
        projectors_equal: a.is_square() && projector_gap <= equality_tol,
        ranges_equal: range_gap <= equality_tol,
    };
    Ok(IdentitySuite {
        residuals: res,
        range_equality,
    })
}

fn rel_anti(op: &RealLinearOperator) -> f64 {
    op.anti().norm() / (1.0 + op.lin().norm())
}

fn rel_lin(op: &RealLinearOperator) -> f64 {
    op.lin().norm() / (1.0 + op.anti().norm())
}
