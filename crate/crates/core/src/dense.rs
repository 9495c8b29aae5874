//! Dense complex linear algebra aliases and small helpers.
//!
//! Everything dense in this crate works on 2^n-dimensional spaces with
//! n ≤ [`crate::DENSE_QUBIT_CAP`], so heap-allocated dynamically sized
//! matrices are the right tool; this module fixes the scalar type and wraps
//! the few decompositions we need behind intent-revealing names.

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// The largest singular value of `m` (the operator norm).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    SVD::new_unordered(m.clone(), false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |acc, s| acc.max(*s))
}

/// Stacks vectors of equal length as the columns of a matrix.
pub fn columns_matrix(cols: &[CVector]) -> Result<CMatrix> {
    let Some(first) = cols.first() else {
        return Err(Error::InvalidSize("no columns given".into()));
    };
    let rows = first.len();
    if cols.iter().any(|c| c.len() != rows) {
        return Err(Error::DimensionMismatch(
            "columns have differing lengths".into(),
        ));
    }
    Ok(CMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r]))
}

/// Numerical rank of `m` and an orthonormal basis of its column span.
///
/// The rank counts singular values above `tol`; the basis is the matching
/// left-singular vectors, returned as the columns of a tall matrix.
pub fn orthonormal_range(m: &CMatrix, tol: f64) -> (usize, CMatrix) {
    let svd = SVD::new_unordered(m.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol)
        .map(|(i, _)| i)
        .collect();
    let basis = CMatrix::from_fn(u.nrows(), keep.len(), |r, c| u[(r, keep[c])]);
    (keep.len(), basis)
}

/// The orthogonal projector U·U† onto the column span of an orthonormal
/// `basis`.
pub fn projector_onto(basis: &CMatrix) -> CMatrix {
    basis * basis.adjoint()
}
