//! Exact rational arithmetic and sparse linear algebra.

mod elim;
mod matrix;
mod rational;

pub use elim::{
    axpy, coeff, kernel_basis, kernel_with_free_columns, normalize, rank, rank_with, rref, scale,
    span_rank, Echelon, PivotStrategy,
};
pub use matrix::SparseRationalMatrix;
pub use rational::{ParseRationalError, Rational};

/// Sparse vector as `(index, value)` pairs sorted by index with no zero values.
pub type SparseVector = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactLinError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("COMPOSITION_NOT_ZERO: d_out * d_in has {nonzero} nonzero entries")]
    CompositionNotZero { nonzero: usize },
}

/// `dim ker(d_out) - rank(d_in)` for `A --d_in--> B --d_out--> C`.
///
/// Fails unless the shapes chain and `d_out * d_in = 0`.
pub fn cohomology_dim(
    d_in: &SparseRationalMatrix,
    d_out: &SparseRationalMatrix,
) -> Result<usize, ExactLinError> {
    let product = d_out.mul(d_in)?;
    if !product.is_zero() {
        return Err(ExactLinError::CompositionNotZero { nonzero: product.nnz() });
    }
    let kernel = d_out.cols() - rank(d_out);
    let image = rank(d_in);
    Ok(kernel - image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseRationalMatrix::zero(3, 3)), 0);
        assert_eq!(rank(&SparseRationalMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseRationalMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseRationalMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseRationalMatrix::zero(2, 3)).len(), 3);
        let k = kernel_basis(&SparseRationalMatrix::from_dense(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let a = coeff(v, 0).cloned().unwrap_or_else(Rational::zero);
        let b = coeff(v, 1).cloned().unwrap_or_else(Rational::zero);
        assert!(!a.is_zero());
        assert_eq!(a, -b);
    }

    #[test]
    fn cohomology_examples() {
        let z01 = SparseRationalMatrix::zero(1, 0);
        let z10 = SparseRationalMatrix::zero(0, 1);
        assert_eq!(cohomology_dim(&z01, &z10).unwrap(), 1);
        assert_eq!(cohomology_dim(&z01, &SparseRationalMatrix::identity(1)).unwrap(), 0);
        let d_in = SparseRationalMatrix::from_dense(&[vec![1], vec![1]]);
        let d_out = SparseRationalMatrix::from_dense(&[vec![1, -1]]);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn broken_complex_detected() {
        let d_in = SparseRationalMatrix::from_dense(&[vec![1], vec![0]]);
        let d_out = SparseRationalMatrix::from_dense(&[vec![1, 0]]);
        assert!(matches!(
            cohomology_dim(&d_in, &d_out),
            Err(ExactLinError::CompositionNotZero { .. })
        ));
        let bad = SparseRationalMatrix::zero(3, 3);
        assert!(matches!(
            cohomology_dim(&d_in, &bad),
            Err(ExactLinError::DimensionMismatch { .. })
        ));
    }
}
