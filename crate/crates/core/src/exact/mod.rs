//! Exact rational arithmetic and dense linear algebra.
//!
//! Everything here is generic over [`Scalar`]; the rest of the crate works
//! with the arbitrary-precision instantiation exported from the crate root.

mod elimination;
mod matrix;
mod scalar;

use num_rational::{BigRational, Ratio};
use thiserror::Error;

pub use elimination::{Echelon, Overflow};
pub use matrix::{dot, Matrix};
pub use scalar::{int, narrow_i128, parse_rational, q, widen_i128, ParseRationalError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
}

/// Why a linear system has no solution: elimination of `[A | b]` produced a
/// pivot in the right-hand-side column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyReport {
    pub rank_coefficients: usize,
    pub rank_augmented: usize,
    /// Row of the reduced augmented matrix reading `0 = 1`.
    pub contradiction_row: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution<T> {
    Unique(Vec<T>),
    /// Consistent but rank deficient: one particular solution plus a kernel basis.
    Underdetermined {
        particular: Vec<T>,
        kernel: Vec<Vec<T>>,
    },
    Inconsistent(InconsistencyReport),
}

impl<T> LinearSolution<T> {
    pub fn unique(self) -> Option<Vec<T>> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Hook letting a scalar type run elimination through a cheaper exact
/// representation when its entries allow it.
pub trait FastElimination: Scalar {
    fn fast_rref(_matrix: &Matrix<Self>) -> Option<Echelon<Self>> {
        None
    }
}

impl FastElimination for Ratio<i64> {}
impl FastElimination for Ratio<i128> {}

impl FastElimination for BigRational {
    fn fast_rref(matrix: &Matrix<Self>) -> Option<Echelon<Self>> {
        let narrow = matrix.try_map(narrow_i128)?;
        let echelon = elimination::try_rref(&narrow).ok()?;
        Some(Echelon {
            reduced: echelon.reduced.map(widen_i128),
            pivots: echelon.pivots,
        })
    }
}

impl<T: FastElimination> Matrix<T> {
    /// Reduced row-echelon form.
    ///
    /// Panics only for fixed-width scalars whose intermediate values overflow;
    /// use [`Matrix::checked_rref`] there.
    pub fn rref(&self) -> Echelon<T> {
        self.checked_rref()
            .expect("rational overflow in fixed-width elimination")
    }

    pub fn checked_rref(&self) -> Option<Echelon<T>> {
        if let Some(fast) = T::fast_rref(self) {
            return Some(fast);
        }
        elimination::try_rref(self).ok()
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right kernel in reduced echelon parametrization; empty iff
    /// the matrix has full column rank.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        self.rref().kernel_basis()
    }

    /// Solves `A x = b` exactly.
    pub fn solve(&self, rhs: &[T]) -> Result<LinearSolution<T>, LinAlgError> {
        if rhs.len() != self.rows() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows(),
                found: rhs.len(),
            });
        }
        let cols = self.cols();
        let augmented = Matrix::from_fn(self.rows(), cols + 1, |i, j| {
            if j < cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let echelon = augmented.rref();
        if let Some(row) = echelon.pivots.iter().position(|&p| p == cols) {
            return Ok(LinearSolution::Inconsistent(InconsistencyReport {
                rank_coefficients: row,
                rank_augmented: echelon.rank(),
                contradiction_row: row,
            }));
        }
        let mut particular = vec![T::zero(); cols];
        for (row, &pivot) in echelon.pivots.iter().enumerate() {
            particular[pivot] = echelon.reduced.get(row, cols).clone();
        }
        if echelon.rank() == cols {
            Ok(LinearSolution::Unique(particular))
        } else {
            Ok(LinearSolution::Underdetermined {
                particular,
                kernel: self.kernel_basis(),
            })
        }
    }
}

/// Convenience wrapper matching the free-function form used by reports.
pub fn solve_linear<T: FastElimination>(
    a: &Matrix<T>,
    b: &[T],
) -> Result<LinearSolution<T>, LinAlgError> {
    a.solve(b)
}
