//! Thin wrappers over the LAPACK-backed primitives used everywhere else.
//! Each returns crate errors so call sites never touch backend error types.

use ndarray::{Array1, Array2};
use ndarray_linalg::{c64, Eig, Eigh, UPLO};

use crate::error::{Error, Result};

/// Symmetric eigendecomposition; eigenvalues ascending, eigenvectors in
/// matching columns.
pub fn eigh(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    Ok(a.eigh(UPLO::Lower)?)
}

/// Hermitian eigendecomposition of a complex matrix; eigenvalues ascending,
/// eigenvectors in matching columns.
///
/// The backend hands a row-major buffer to LAPACK as if it were
/// column-major, so the vectors come back conjugated (it diagonalizes
/// conj(H)). Pinning the input layout makes that deterministic; conjugating
/// the output undoes it.
pub fn eigh_complex(a: &Array2<c64>) -> Result<(Array1<f64>, Array2<c64>)> {
    let c_order = a.as_standard_layout().into_owned();
    let (w, u) = c_order.eigh(UPLO::Lower)?;
    Ok((w, u.mapv(|z| z.conj())))
}

/// Eigenvalues of a general real matrix. dgeev balances internally, which is
/// what keeps O(1) eigenvalues accurate in matrices whose norm is set by a
/// large mode occupancy.
pub fn eigvals(a: &Array2<f64>) -> Result<Array1<c64>> {
    let (vals, _vecs) = a.eig()?;
    Ok(vals)
}

/// A^p for symmetric positive definite A, via eigendecomposition.
pub fn sym_power(a: &Array2<f64>, p: f64) -> Result<Array2<f64>> {
    let (w, q) = eigh(a)?;
    if w[0] <= 0.0 {
        return Err(Error::NonPositiveDefinite(w[0]));
    }
    let qd = &q * &w.mapv(|x| x.powf(p));
    let m = qd.dot(&q.t());
    Ok(symmetrize(&m))
}

/// (M + Mᵀ)/2, discarding rounding-level asymmetry.
pub fn symmetrize(m: &Array2<f64>) -> Array2<f64> {
    (m + &m.t()) * 0.5
}

pub fn max_abs(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

pub fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (&x, &y)| acc.max((x - y).abs()))
}
