//! Dense square-matrix value type.
//!
//! Storage is row-major `f64`: element `(i, j)`, 0-based, lives at index
//! `i * n + j`. Matrices are finite by construction — `NaN` and infinities
//! are rejected rather than propagated — and immutable through the public
//! API; the elimination engine mutates its own working copies internally.

use std::ops::Index;

use thiserror::Error;

use crate::exec;

/// Errors from matrix construction and binary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatrixError {
    /// The input rows were empty or ragged.
    #[error("input rows do not form a square matrix")]
    NonSquare,
    /// A NaN or infinity was found at the given position (0-based).
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    /// A dimension of zero was requested.
    #[error("matrix dimension must be at least 1")]
    InvalidDimension,
    /// The two operands have different dimensions.
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// An `n`×`n` matrix of 64-bit floats, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from its rows. Every row must have length equal to
    /// the number of rows, and every value must be finite.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::NonSquare);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatrixError::NonSquare);
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(MatrixError::NonFinite { row: i, col: j });
                }
                data.push(v);
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a flat row-major buffer of length `n * n`.
    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::InvalidDimension);
        }
        if data.len() != n * n {
            return Err(MatrixError::NonSquare);
        }
        for (idx, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::NonFinite {
                    row: idx / n,
                    col: idx % n,
                });
            }
        }
        Ok(Self { n, data })
    }

    /// The identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::InvalidDimension);
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Ok(Self { n, data })
    }

    /// Dimension of the matrix.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Element at `(i, j)`, 0-based. Panics when out of bounds.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds");
        self.data[i * self.n + j]
    }

    /// Row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Iterator over the rows.
    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.data.chunks(self.n)
    }

    /// The whole row-major buffer.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Standard matrix product `self · other`.
    pub fn multiply(&self, other: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        let n = self.check_same_dim(other)?;
        let mut out = vec![0.0; n * n];
        exec::for_each_row(&mut out, n, |i, orow| {
            let arow = self.row(i);
            for (k, &aik) in arow.iter().enumerate() {
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += aik * b;
                }
            }
        });
        Ok(DenseMatrix { n, data: out })
    }

    /// Largest absolute elementwise difference; 0 for identical matrices.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64, MatrixError> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// The transpose.
    pub fn transpose(&self) -> DenseMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        DenseMatrix { n, data }
    }

    fn check_same_dim(&self, other: &DenseMatrix) -> Result<usize, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.n)
    }

    // Mutation is reserved for the elimination engine.

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
    }

    /// Swaps rows `a` and `b` within columns `0..limit` only.
    pub(crate) fn swap_rows_in_cols(&mut self, a: usize, b: usize, limit: usize) {
        if a == b || limit == 0 {
            return;
        }
        let n = self.n;
        for j in 0..limit {
            self.data.swap(a * n + j, b * n + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for i in 0..n {
            self.data.swap(i * n + a, i * n + b);
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds");
        &self.data[i * self.n + j]
    }
}
