//! Dense matrices over a generic scalar, plus an exact linear solver.
//!
//! The same `Matrix` type serves three instantiations: polynomial
//! matrices for the matrix-product representation, `y`-tagged polynomial
//! matrices for sector normalization, and rational matrices for the
//! Markov chain solve.

use crate::scalar::FieldScalar;
use num_traits::{One, Zero};
use std::ops::{Index, IndexMut};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Clone + Zero> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl<S: Clone + Zero + One> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }

    /// Multiply every entry by `s`.
    pub fn scale(&self, s: &S) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |i, j| s.clone() * self[(i, j)].clone())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = S::zero();
                for (i, vi) in v.iter().enumerate() {
                    acc = acc + vi.clone() * self[(i, j)].clone();
                }
                acc
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc = acc + self[(i, j)].clone() * vj.clone();
                }
                acc
            })
            .collect()
    }

    /// Maximum bandwidth: largest `|i - j|` over nonzero entries (0 for
    /// the zero matrix).
    pub fn bandwidth(&self) -> usize
    where
        S: PartialEq,
    {
        let mut b = 0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    b = b.max(i.abs_diff(j));
                }
            }
        }
        b
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve the (possibly overdetermined, consistent) system `A x = b`
/// exactly by Gaussian elimination with back substitution.
///
/// Returns `None` when the system has no unique solution (rank deficient
/// or inconsistent). Requires a field scalar so every pivot division is
/// exact.
pub fn solve_exact<S: FieldScalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    assert_eq!(a.rows(), b.len());
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let found = (pivot_row..rows).find(|&r| !m[(r, col)].is_zero())?;
        if found != pivot_row {
            for j in 0..cols {
                let tmp = m[(found, j)].clone();
                m[(found, j)] = m[(pivot_row, j)].clone();
                m[(pivot_row, j)] = tmp;
            }
            rhs.swap(found, pivot_row);
        }
        let inv = S::one() / m[(pivot_row, col)].clone();
        for j in col..cols {
            m[(pivot_row, j)] = m[(pivot_row, j)].clone() * inv.clone();
        }
        rhs[pivot_row] = rhs[pivot_row].clone() * inv;
        for r in 0..rows {
            if r != pivot_row && !m[(r, col)].is_zero() {
                let factor = m[(r, col)].clone();
                for j in col..cols {
                    m[(r, j)] = m[(r, j)].clone() - factor.clone() * m[(pivot_row, j)].clone();
                }
                rhs[r] = rhs[r].clone() - factor * rhs[pivot_row].clone();
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // leftover equations must be identically satisfied
    if rhs[pivot_row..rows].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (col, &pr) in pivots.iter().enumerate() {
        x[col] = rhs[pr].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QRat;
    use num_bigint::BigInt;

    fn r(n: i64) -> QRat {
        QRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn solve_simple_system() {
        // x + y = 3, x - y = 1
        let a = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, _) => r(1),
            (1, 0) => r(1),
            (1, 1) => r(-1),
            _ => unreachable!(),
        });
        let x = solve_exact(&a, &[r(3), r(1)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
    }

    #[test]
    fn solve_overdetermined_consistent() {
        // x = 1, y = 2, x + y = 3
        let a = Matrix::from_fn(3, 2, |i, j| match (i, j) {
            (0, 0) | (1, 1) | (2, 0) | (2, 1) => r(1),
            _ => r(0),
        });
        let x = solve_exact(&a, &[r(1), r(2), r(3)]).unwrap();
        assert_eq!(x, vec![r(1), r(2)]);
    }

    #[test]
    fn solve_rejects_inconsistent_and_singular() {
        let a = Matrix::from_fn(2, 2, |_, _| r(1));
        assert!(solve_exact(&a, &[r(1), r(2)]).is_none());
        assert!(solve_exact(&a, &[r(1), r(1)]).is_none()); // rank 1
    }

    #[test]
    fn bandwidth_of_shifted_identity() {
        let mut m: Matrix<QRat> = Matrix::identity(4);
        assert_eq!(m.bandwidth(), 0);
        m[(0, 2)] = r(5);
        assert_eq!(m.bandwidth(), 2);
    }
}
