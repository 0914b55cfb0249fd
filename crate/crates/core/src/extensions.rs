//! Normal extensions of antilinear operators: an operator `T` on a subspace
//! `H = ran V` of `C^N` and a normal `N` on `C^N` with `N h = T h` for
//! `h in H`. Minimality is decided by the span of the words
//! `(N#)^j N^i x`, `x in H`, which must be all of `C^N`.

use crate::antiop::AntilinearOperator;
use crate::error::{Error, Result};
use crate::matkernel::{conj, identity, orthonormalize_against, CMat, CVec, Tolerances};
use crate::structure::is_normal;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionProblem {
    ambient: AntilinearOperator,
    embed: CMat,
    restricted: Option<AntilinearOperator>,
}

impl ExtensionProblem {
    /// `ambient: N x N`, `embed: N x h` with orthonormal columns and an
    /// optional `restricted: h x h` in the coordinates of `embed`.
    pub fn new(
        ambient: AntilinearOperator,
        embed: CMat,
        restricted: Option<AntilinearOperator>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if !ambient.is_square() {
            return Err(Error::NotSquare {
                rows: ambient.dim_out(),
                cols: ambient.dim_in(),
            });
        }
        if embed.nrows() != ambient.dim_out() {
            return Err(Error::DimensionMismatch {
                context: "embedding rows",
                expected: ambient.dim_out(),
                found: embed.nrows(),
            });
        }
        if embed.ncols() == 0 {
            return Err(Error::Empty);
        }
        crate::matkernel::ensure_finite(&embed)?;
        let h = embed.ncols();
        let residual = (embed.adjoint() * &embed - identity(h)).norm();
        if residual > tol.rtol {
            return Err(Error::NotIsometric { residual });
        }
        if let Some(t) = &restricted {
            if t.dim_in() != h || t.dim_out() != h {
                return Err(Error::DimensionMismatch {
                    context: "restricted operator",
                    expected: h,
                    found: t.dim_in().max(t.dim_out()),
                });
            }
        }
        Ok(Self {
            ambient,
            embed,
            restricted,
        })
    }

    pub fn ambient(&self) -> &AntilinearOperator {
        &self.ambient
    }

    pub fn embed(&self) -> &CMat {
        &self.embed
    }

    pub fn restricted(&self) -> Option<&AntilinearOperator> {
        self.restricted.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim_out()
    }

    fn columns(&self) -> Vec<CVec> {
        (0..self.embed.ncols()).map(|j| self.embed.column(j).into_owned()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionCheck {
    /// `||A_N conj(V) - V A_T||`.
    pub residual: f64,
    /// `||(I - V V*) A_N conj(V)||`: how far `N` maps `H` out of itself.
    pub range_residual: f64,
}

/// Without a restricted operator only the invariance of `H` is measured and
/// `residual` is `NaN`.
pub fn check_extension(p: &ExtensionProblem) -> ExtensionCheck {
    let image = p.ambient.canon() * conj(&p.embed);
    let residual = match &p.restricted {
        Some(t) => (&image - &p.embed * t.canon()).norm(),
        None => f64::NAN,
    };
    let projected = &p.embed * (p.embed.adjoint() * &image);
    ExtensionCheck {
        residual,
        range_residual: (image - projected).norm(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanResult {
    pub g_dim: usize,
    pub is_minimal: bool,
    /// Largest word length `i + j` that still added a direction, once the
    /// span has stopped growing.
    pub stabilized_at: Option<usize>,
    pub hit_cap: bool,
}

fn ensure_normal(p: &ExtensionProblem, normal_tol: f64) -> Result<()> {
    let check = is_normal(&p.ambient, normal_tol)?;
    if check.normal {
        Ok(())
    } else {
        Err(Error::NotNormal {
            residual: check.residual,
        })
    }
}

fn keep_threshold(p: &ExtensionProblem, tol: &Tolerances) -> f64 {
    tol.rtol * p.dim() as f64
}

/// Grows the span of `(N#)^j N^i v` level by level in `i + j`, up to `2N`.
///
/// Each new word is stored as its normalized component orthogonal to the
/// span so far. For normal `N` (`N N# = N# N`) the next level is spanned by
/// `N#` applied to the kept words of this level plus `N` applied to the kept
/// pure power `N^L v`, so dropped words need no children.
pub fn minimal_span(p: &ExtensionProblem, normal_tol: f64, tol: &Tolerances) -> Result<SpanResult> {
    ensure_normal(p, normal_tol)?;
    let dim = p.dim();
    let cap = 2 * dim;
    let keep = keep_threshold(p, tol);
    let sharp = p.ambient.adjoint();
    let mut basis: Vec<CVec> = Vec::new();

    // Per column of V: (kept words of the current level tagged by whether
    // they are the pure power N^L v).
    let mut frontier: Vec<(CVec, bool)> = Vec::new();
    for v in p.columns() {
        if let Some(q) = orthonormalize_against(&v, &basis, keep) {
            basis.push(q.clone());
            frontier.push((q, true));
        }
    }
    let mut last_new = 0;
    let mut stable = false;
    for level in 1..=cap {
        if basis.len() == dim || frontier.is_empty() {
            stable = true;
            break;
        }
        let mut next = Vec::new();
        for (w, pure) in &frontier {
            let mut children = vec![(sharp.apply(w)?, false)];
            if *pure {
                children.push((p.ambient.apply(w)?, true));
            }
            for (child, pure) in children {
                if let Some(q) = orthonormalize_against(&child, &basis, keep) {
                    basis.push(q.clone());
                    next.push((q, pure));
                }
            }
        }
        if !next.is_empty() {
            last_new = level;
        }
        frontier = next;
    }
    let stable = stable || basis.len() == dim || frontier.is_empty();
    let stabilized_at = stable.then_some(last_new);
    let g_dim = basis.len();
    Ok(SpanResult {
        g_dim,
        is_minimal: g_dim == dim,
        stabilized_at,
        hit_cap: stabilized_at.is_none(),
    })
}

/// Dimension of the span of every word in `{N, N#}` of length at most
/// `max_len` applied to the columns of `V`. Computed as the closure of the
/// subspace under both maps (antilinear maps send complex spans to complex
/// spans), without using normality to reorder words.
pub fn word_span_oracle(p: &ExtensionProblem, max_len: usize, normal_tol: f64, tol: &Tolerances) -> Result<usize> {
    ensure_normal(p, normal_tol)?;
    let keep = keep_threshold(p, tol);
    let sharp = p.ambient.adjoint();
    let mut basis: Vec<CVec> = Vec::new();
    let mut frontier = Vec::new();
    for v in p.columns() {
        if let Some(q) = orthonormalize_against(&v, &basis, keep) {
            basis.push(q.clone());
            frontier.push(q);
        }
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for child in [p.ambient.apply(w)?, sharp.apply(w)?] {
                if let Some(q) = orthonormalize_against(&child, &basis, keep) {
                    basis.push(q.clone());
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(basis.len())
}

/// Span dimension of the words `(N#)^j N^i v` evaluated in a caller-chosen
/// order: each entry of `order` is a pair `(i, j)`. Used to confirm that for
/// normal `N` the span does not depend on how words are arranged.
pub fn ordered_word_span(p: &ExtensionProblem, order: &[(usize, usize)], tol: &Tolerances) -> Result<usize> {
    let keep = keep_threshold(p, tol);
    let sharp = p.ambient.adjoint();
    let mut basis: Vec<CVec> = Vec::new();
    for v in p.columns() {
        for &(i, j) in order {
            let mut w = v.clone();
            for _ in 0..i {
                w = p.ambient.apply(&w)?;
            }
            for _ in 0..j {
                w = sharp.apply(&w)?;
            }
            if let Some(q) = orthonormalize_against(&w, &basis, keep) {
                basis.push(q);
            }
        }
    }
    Ok(basis.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkernel::c;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn diag23() -> AntilinearOperator {
        AntilinearOperator::new(CMat::from_diagonal(&CVec::from_vec(vec![c(2.0, 0.0), c(3.0, 0.0)]))).unwrap()
    }

    fn col(entries: &[f64]) -> CMat {
        CMat::from_iterator(entries.len(), 1, entries.iter().map(|&x| c(x, 0.0)))
    }

    #[test]
    fn invariant_line_is_not_minimal() {
        let t = AntilinearOperator::new(CMat::from_element(1, 1, c(2.0, 0.0))).unwrap();
        let p = ExtensionProblem::new(diag23(), col(&[1.0, 0.0]), Some(t), &tol()).unwrap();
        let check = check_extension(&p);
        assert!(check.residual < 1e-15);
        assert!(check.range_residual < 1e-15);
        let span = minimal_span(&p, 1e-8, &tol()).unwrap();
        assert_eq!(span.g_dim, 1);
        assert!(!span.is_minimal);
        assert!(!span.hit_cap);
        assert_eq!(word_span_oracle(&p, 4, 1e-8, &tol()).unwrap(), 1);
    }

    #[test]
    fn diagonal_line_is_minimal() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = AntilinearOperator::new(CMat::from_element(1, 1, c(2.5, 0.0))).unwrap();
        let p = ExtensionProblem::new(diag23(), col(&[s, s]), Some(t), &tol()).unwrap();
        assert!(check_extension(&p).range_residual > 0.1);
        let span = minimal_span(&p, 1e-8, &tol()).unwrap();
        assert_eq!((span.g_dim, span.is_minimal), (2, true));
        assert_eq!(word_span_oracle(&p, 4, 1e-8, &tol()).unwrap(), 2);
    }

    #[test]
    fn trivial_extension() {
        let p = ExtensionProblem::new(diag23(), identity(2), Some(diag23()), &tol()).unwrap();
        assert!(check_extension(&p).residual < 1e-15);
        assert!(minimal_span(&p, 1e-8, &tol()).unwrap().is_minimal);
    }

    #[test]
    fn rejects_non_normal_and_non_isometric() {
        let shift = AntilinearOperator::new(CMat::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ))
        .unwrap();
        let p = ExtensionProblem::new(shift, col(&[1.0, 0.0]), None, &tol()).unwrap();
        assert!(matches!(minimal_span(&p, 1e-8, &tol()), Err(Error::NotNormal { .. })));
        assert!(matches!(
            ExtensionProblem::new(diag23(), col(&[1.0, 1.0]), None, &tol()),
            Err(Error::NotIsometric { .. })
        ));
    }
}
