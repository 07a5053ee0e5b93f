//! The quadratic statistic `Σ (Xᵢ + aᵢ)²` reduces to a linear one:
//!
//! ```text
//! Σ aᵢXᵢ + Y + Z = Σ (Xᵢ + aᵢ/2)² − ¼ Σ aᵢ²,   Y + Z = Σ Xᵢ²
//! ```

use crate::error::{Error, Result};
use crate::estimation::SampleMatrix;
use crate::scalar::{Field, Scalar};

/// Left minus right side of the identity on a single row.
pub fn reduction_residual<T: Field>(coeffs: &[T], row: &[T]) -> Result<T> {
    if coeffs.len() != row.len() {
        return Err(Error::DimensionMismatch { expected: coeffs.len(), found: row.len() });
    }
    let two = T::from_i64(2);
    let quarter = T::one() / T::from_i64(4);
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    let mut norm = T::zero();
    for (a, x) in coeffs.iter().zip(row) {
        lhs = lhs + a.clone() * x.clone() + x.clone() * x.clone();
        let shifted = x.clone() + a.clone() / two.clone();
        rhs = rhs + shifted.clone() * shifted;
        norm = norm + a.clone() * a.clone();
    }
    Ok(lhs - (rhs - quarter * norm))
}

/// Largest absolute residual over the rows of `samples`.
pub fn quadratic_reduction_check(coeffs: &[f64], samples: &SampleMatrix) -> Result<f64> {
    if coeffs.len() != samples.cols() {
        return Err(Error::DimensionMismatch { expected: samples.cols(), found: coeffs.len() });
    }
    let mut row = vec![0.0; samples.cols()];
    let mut worst = 0.0f64;
    for r in 0..samples.rows() {
        samples.row_into(r, &mut row);
        worst = worst.max(reduction_residual(coeffs, &row)?.abs());
    }
    Ok(worst)
}

/// Exact variant on rational rows.
pub fn quadratic_reduction_check_exact(coeffs: &[Scalar], rows: &[Vec<Scalar>]) -> Result<Scalar> {
    let mut worst = Scalar::from_i64(0);
    for row in rows {
        let r = reduction_residual(coeffs, row)?.abs_value();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}
