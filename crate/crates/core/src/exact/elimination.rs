use super::matrix::Matrix;
use super::scalar::Scalar;

/// Raised by fixed-width scalars when an intermediate value does not fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Right-kernel basis read off the reduced form: one vector per free
    /// column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let cols = self.reduced.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&free| !is_pivot[free])
            .map(|free| {
                let mut v = vec![T::zero(); cols];
                v[free] = T::one();
                for (row, &pivot) in self.pivots.iter().enumerate() {
                    let entry = self.reduced.get(row, free);
                    if !entry.is_zero() {
                        v[pivot] = -entry.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Gauss-Jordan elimination to reduced row-echelon form.
///
/// Pivots are chosen as the first nonzero entry at or below the current row,
/// so the result depends only on the input matrix.
pub fn try_rref<T: Scalar>(matrix: &Matrix<T>) -> Result<Echelon<T>, Overflow> {
    let rows = matrix.rows();
    let cols = matrix.cols();
    let mut a = matrix.row_vecs();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, pivot_row);

        let pivot = a[pivot_row][col].clone();
        if !pivot.is_one() {
            for x in a[pivot_row][col..].iter_mut() {
                if !x.is_zero() {
                    *x = x.try_div(&pivot).ok_or(Overflow)?;
                }
            }
        }

        // Columns left of `col` in the pivot row are already zero.
        let support: Vec<usize> = (col..cols)
            .filter(|&j| !a[pivot_row][j].is_zero())
            .collect();
        let (head, tail) = a.split_at_mut(pivot_row);
        let (pivot_slice, rest) = tail.split_first_mut().expect("pivot row exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let factor = row[col].clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &support {
                let delta = factor.try_mul(&pivot_slice[j]).ok_or(Overflow)?;
                row[j] = row[j].try_sub(&delta).ok_or(Overflow)?;
            }
        }

        pivots.push(col);
        pivot_row += 1;
    }

    let reduced = Matrix::from_rows(a).expect("rows keep their length");
    let reduced = if rows == 0 {
        Matrix::zeros(0, cols)
    } else {
        reduced
    };
    Ok(Echelon { reduced, pivots })
}
