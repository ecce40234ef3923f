//! Dense square-matrix inversion by Gauss-Jordan diagonalization.
//!
//! The elimination reduces the input all the way to the identity while the
//! same row operations, applied to an identity matrix, accumulate the
//! inverse. The determinant falls out as the product of the pivots (with a
//! sign flip per row or column swap), so it costs nothing extra.
//!
//! Three pivoting strategies are supported:
//!
//! - [`PivotStrategy::None`] — always use the diagonal element;
//! - [`PivotStrategy::PartialRow`] — search the pivot column below the
//!   diagonal for the entry of largest magnitude and swap rows;
//! - [`PivotStrategy::Full`] — search the whole trailing submatrix and swap
//!   rows and columns.
//!
//! Row and column swaps are recorded in a [`PivotLog`] and undone on the
//! computed inverse by [`depivot`] (row swaps of the input become column
//! swaps of the inverse and vice versa).
//!
//! The [`analysis`] module holds brute-force oracles (cofactor determinant,
//! adjugate inverse), deterministic test-matrix generators, and a harness
//! that compares the residual `max|A·Â⁻¹ − I|` across strategies.
//!
//! All indices in the API are 0-based; human-readable output (error
//! messages) counts steps from 1, matching the usual presentation of the
//! algorithm.
//!
//! With the default `parallel` feature, row updates, the full-pivot search,
//! and matrix products switch to rayon once the dimension reaches
//! [`PAR_DIM_THRESHOLD`]; smaller problems always run sequentially.

pub mod analysis;
pub mod engine;
mod exec;
pub mod matrix;

pub use engine::{
    depivot, det, det_or_zero, invert, EliminationMode, EliminationState, GjError,
    InversionResult, PivotChoice, PivotLog, PivotStrategy, SwapRecord, DEFAULT_ZERO_THRESHOLD,
};
pub use exec::PAR_DIM_THRESHOLD;
pub use matrix::{DenseMatrix, MatrixError};
