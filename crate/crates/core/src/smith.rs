//! Smith normal form over the integers, with transformation matrices.
//!
//! For an input `A` we compute unimodular `U`, `V` with `U * A * V = S`,
//! where `S` is diagonal, nonnegative, and the diagonal entries form a
//! divisibility chain with zeros trailing. The pivot is always a
//! minimal-absolute-value nonzero entry of the remaining submatrix, which
//! keeps coefficient growth tame at the matrix sizes handled here.
//!
//! The same factorization drives homology (cokernel structure) and exact
//! linear-system solving over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// The factorization `U * A * V = S`.
///
/// `U` is `rows x rows`, `V` is `cols x cols`, both with determinant ±1;
/// `S` is diagonal with nonnegative entries `d1 | d2 | ...` and zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.s
            .diagonal_entries()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s
            .diagonal_entries()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Like [`SmithDecomposition`] but also carrying the inverse transforms,
/// which the homology coordinate maps need.
#[derive(Debug, Clone)]
pub struct SmithFull {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithFull {
    pub fn rank(&self) -> usize {
        self.s
            .diagonal_entries()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Working state: the matrix being reduced plus all four transforms, kept
/// consistent by routing every elementary operation through one place.
struct Workspace {
    s: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    u_inv: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Workspace {
    fn new(a: &IntegerMatrix) -> Self {
        Workspace {
            s: a.clone(),
            u: IntegerMatrix::identity(a.rows()),
            v: IntegerMatrix::identity(a.cols()),
            u_inv: IntegerMatrix::identity(a.rows()),
            v_inv: IntegerMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += q * row_j, mirrored into U and U^{-1}.
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        self.s.add_row_multiple(i, j, q);
        self.u.add_row_multiple(i, j, q);
        let neg = -q;
        self.u_inv.add_col_multiple(j, i, &neg);
    }

    /// col_i += q * col_j, mirrored into V and V^{-1}.
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        self.s.add_col_multiple(i, j, q);
        self.v.add_col_multiple(i, j, q);
        let neg = -q;
        self.v_inv.add_row_multiple(j, i, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Minimal-absolute-value nonzero entry of `s[t.., t..]`, scanning
    /// row-major so the choice is deterministic.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for r in t..self.s.rows() {
            for c in t..self.s.cols() {
                let e = &self.s[(r, c)];
                if e.is_zero() {
                    continue;
                }
                let abs = e.abs();
                if best.is_none() || abs < best_abs {
                    if abs.is_one() {
                        return Some((r, c));
                    }
                    best = Some((r, c));
                    best_abs = abs;
                }
            }
        }
        best
    }
}

/// Smith normal form with transformation matrices and their inverses.
pub fn smith_with_inverses(a: &IntegerMatrix) -> SmithFull {
    let mut w = Workspace::new(a);
    let steps = a.rows().min(a.cols());
    for t in 0..steps {
        let Some((pi, pj)) = w.min_pivot(t) else {
            break; // remaining submatrix is zero
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // Euclidean reduction of column t below the pivot.
            let mut remainder_left = false;
            for i in t + 1..w.s.rows() {
                if w.s[(i, t)].is_zero() {
                    continue;
                }
                let q = &w.s[(i, t)] / &w.s[(t, t)];
                w.add_row(i, t, &(-q));
                if !w.s[(i, t)].is_zero() {
                    remainder_left = true;
                }
            }
            // Same for row t right of the pivot.
            for j in t + 1..w.s.cols() {
                if w.s[(t, j)].is_zero() {
                    continue;
                }
                let q = &w.s[(t, j)] / &w.s[(t, t)];
                w.add_col(j, t, &(-q));
                if !w.s[(t, j)].is_zero() {
                    remainder_left = true;
                }
            }
            if remainder_left {
                // A strictly smaller entry appeared; make it the pivot.
                let (pi, pj) = w.min_pivot(t).expect("nonzero remainder exists");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // Pivot now alone in its row and column. Enforce that it
            // divides the rest of the submatrix.
            let offender = (t + 1..w.s.rows())
                .flat_map(|i| (t + 1..w.s.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !(&w.s[(i, j)] % &w.s[(t, t)]).is_zero());
            match offender {
                Some((i, _)) => {
                    w.add_row(t, i, &BigInt::one());
                    // Loop again: reduction will shrink the pivot to a gcd.
                }
                None => break,
            }
        }
        if w.s[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    debug_assert!(w.s.is_diagonal());
    SmithFull {
        u: w.u,
        s: w.s,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// Smith normal form `U * A * V = S`. Total on every matrix, including
/// zero-dimensional ones, and deterministic for a fixed input.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let full = smith_with_inverses(a);
    SmithDecomposition {
        u: full.u,
        s: full.s,
        v: full.v,
    }
}

/// Structure of `Z^rows / column-space(A)` as `Z^free_rank + sum Z_ti`.
///
/// The torsion list carries the invariant factors greater than one, in
/// divisibility order `t1 | t2 | ...`.
pub fn cokernel_structure(a: &IntegerMatrix) -> (usize, Vec<BigInt>) {
    let snf = smith_with_inverses(a);
    let rank = snf.rank();
    let torsion = snf
        .s
        .diagonal_entries()
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    (a.rows() - rank, torsion)
}

/// Find an integer solution of `A * x = b`, if one exists.
///
/// Returns `Ok(None)` when the system has no integral solution and an
/// error when `b` has the wrong length.
pub fn solve_diophantine(
    a: &IntegerMatrix,
    b: &[BigInt],
) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_with_inverses(a);
    // A x = b  <=>  S y = U b with x = V y.
    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let s_ii = if i < a.cols() {
            snf.s[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if s_ii.is_zero() {
            if !c[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = c[i].div_rem(&s_ii);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&y)))
}

/// Inverse of a unimodular matrix. Panics if `m` is not square with
/// determinant ±1.
pub fn unimodular_inverse(m: &IntegerMatrix) -> IntegerMatrix {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let snf = smith_with_inverses(m);
    assert!(
        snf.s == IntegerMatrix::identity(m.rows()),
        "matrix is not unimodular"
    );
    // U m V = I  =>  m^{-1} = V U.
    snf.v.mul(&snf.u)
}

/// Check every Smith invariant at once; used by tests and callers that
/// want a belt-and-braces verification of a decomposition.
pub fn verify_smith(a: &IntegerMatrix, d: &SmithDecomposition) -> Result<(), String> {
    if d.u.mul(a).mul(&d.v) != d.s {
        return Err("U*A*V != S".into());
    }
    if !d.s.is_diagonal() {
        return Err("S is not diagonal".into());
    }
    let diag = d.s.diagonal_entries();
    let mut seen_zero = false;
    for i in 0..diag.len() {
        if diag[i].is_negative() {
            return Err(format!("negative diagonal entry at {i}"));
        }
        if diag[i].is_zero() {
            seen_zero = true;
        } else if seen_zero {
            return Err("zero entry before a nonzero one".into());
        }
        if i + 1 < diag.len()
            && !diag[i].is_zero()
            && !diag[i + 1].is_zero()
            && !(&diag[i + 1] % &diag[i]).is_zero()
        {
            return Err(format!("divisibility fails at {i}"));
        }
    }
    if d.u.determinant().abs() != BigInt::one() {
        return Err("U not unimodular".into());
    }
    if d.v.determinant().abs() != BigInt::one() {
        return Err("V not unimodular".into());
    }
    Ok(())
}
