//! Brute-force oracles, test-matrix generators, and the pivoting
//! comparison harness.
//!
//! The cofactor determinant and adjugate inverse are deliberately naive
//! (Laplace expansion, factorial cost) so they share nothing with the
//! elimination engine; they exist to check it. [`compare_strategies`] runs
//! the engine under every pivoting strategy and reports the residual
//! `max|A·Â⁻¹ − I|` of each, which is the measurable form of "pivoting
//! reduces rounding error".

use thiserror::Error;

use crate::engine::{self, EliminationMode, GjError, PivotStrategy};
use crate::matrix::{DenseMatrix, MatrixError};

/// Largest dimension the Laplace determinant accepts (n! growth).
pub const COFACTOR_MAX_DIM: usize = 10;

/// Largest dimension the adjugate inverse accepts (n² minors of size n−1).
pub const ADJUGATE_MAX_DIM: usize = 8;

/// Determinant magnitude below which float input counts as exactly
/// singular for the adjugate oracle.
pub const ADJUGATE_SINGULAR_CUTOFF: f64 = 1e-300;

/// Errors from the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AnalysisError {
    /// The dimension exceeds the oracle's cost guard.
    #[error("dimension {n} exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    /// The determinant is zero (or below [`ADJUGATE_SINGULAR_CUTOFF`]).
    #[error("matrix is singular (determinant is zero)")]
    Singular,
}

/// `max|a·ainv − I|`: how far a claimed inverse is from being one.
pub fn residual_norm(a: &DenseMatrix, ainv: &DenseMatrix) -> Result<f64, MatrixError> {
    let product = a.multiply(ainv)?;
    let id = DenseMatrix::identity(a.n()).expect("dimension is at least 1");
    product.max_abs_diff(&id)
}

/// Determinant by Laplace expansion along the first row. Exact for small
/// integer matrices; factorial cost, hence the dimension guard.
pub fn cofactor_det(a: &DenseMatrix) -> Result<f64, AnalysisError> {
    let n = a.n();
    if n > COFACTOR_MAX_DIM {
        return Err(AnalysisError::TooLarge {
            n,
            limit: COFACTOR_MAX_DIM,
        });
    }
    Ok(laplace(n, a.as_slice()))
}

fn laplace(n: usize, data: &[f64]) -> f64 {
    if n == 1 {
        return data[0];
    }
    if n == 2 {
        return data[0] * data[3] - data[1] * data[2];
    }
    let m = n - 1;
    let mut minor = vec![0.0; m * m];
    let mut acc = 0.0;
    for col in 0..n {
        let lead = data[col];
        if lead == 0.0 {
            continue;
        }
        for i in 1..n {
            let src = &data[i * n..(i + 1) * n];
            let dst = &mut minor[(i - 1) * m..i * m];
            dst[..col].copy_from_slice(&src[..col]);
            dst[col..].copy_from_slice(&src[col + 1..]);
        }
        let term = lead * laplace(m, &minor);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Inverse as transpose-of-cofactors over the determinant. Exact-arithmetic
/// construction, used as the independent oracle for the engine.
pub fn adjugate_inverse(a: &DenseMatrix) -> Result<DenseMatrix, AnalysisError> {
    let n = a.n();
    if n > ADJUGATE_MAX_DIM {
        return Err(AnalysisError::TooLarge {
            n,
            limit: ADJUGATE_MAX_DIM,
        });
    }
    let det = cofactor_det(a)?;
    if det.abs() < ADJUGATE_SINGULAR_CUTOFF {
        return Err(AnalysisError::Singular);
    }
    if n == 1 {
        return Ok(DenseMatrix::from_vec(1, vec![1.0 / det]).expect("finite"));
    }

    let m = n - 1;
    let mut minor = vec![0.0; m * m];
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            for (r, ii) in (0..n).filter(|&ii| ii != i).enumerate() {
                let src = a.row(ii);
                let dst = &mut minor[r * m..(r + 1) * m];
                dst[..j].copy_from_slice(&src[..j]);
                dst[j..].copy_from_slice(&src[j + 1..]);
            }
            let cof = if (i + j) % 2 == 0 { 1.0 } else { -1.0 } * laplace(m, &minor);
            // adjugate transposes the cofactor matrix
            out[j * n + i] = cof / det;
        }
    }
    DenseMatrix::from_vec(n, out).map_err(|_| AnalysisError::Singular)
}

/// The n×n Hilbert matrix, element `(i, j)` = 1/(i+j+1) with 0-based
/// indices. Symmetric and notoriously ill-conditioned; the standard stress
/// input for comparing pivoting strategies.
pub fn gen_hilbert(n: usize) -> Result<DenseMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::InvalidDimension);
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = 1.0 / (i + j + 1) as f64;
        }
    }
    DenseMatrix::from_vec(n, data)
}

/// SplitMix64 (Steele, Lea & Flood 2014). The algorithm is pinned here so
/// a seed reproduces the exact same matrix on every platform and toolchain.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Random matrix with integer entries in `[−magnitude, magnitude]`, drawn
/// from SplitMix64 by reduction modulo the range size. Fully determined by
/// `(n, seed, magnitude)`.
pub fn gen_random_integer(n: usize, seed: u64, magnitude: u32) -> Result<DenseMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::InvalidDimension);
    }
    let mut rng = SplitMix64(seed);
    let span = 2 * u64::from(magnitude) + 1;
    let data = (0..n * n)
        .map(|_| (rng.next_u64() % span) as i64 - i64::from(magnitude))
        .map(|v| v as f64)
        .collect();
    DenseMatrix::from_vec(n, data)
}

/// What one strategy did on one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyOutcome {
    /// The inversion succeeded.
    Success {
        /// `max|A·Â⁻¹ − I|` of the computed inverse.
        residual_max: f64,
        /// Determinant reported by the engine.
        determinant: f64,
        /// Row plus column swaps performed.
        swap_count: usize,
    },
    /// The strategy ran out of pivot candidates at this step (0-based).
    Singular { step: usize },
}

impl StrategyOutcome {
    /// The residual, when the run succeeded.
    pub fn residual_max(&self) -> Option<f64> {
        match self {
            StrategyOutcome::Success { residual_max, .. } => Some(*residual_max),
            StrategyOutcome::Singular { .. } => None,
        }
    }

    /// True for [`StrategyOutcome::Success`].
    pub fn is_success(&self) -> bool {
        matches!(self, StrategyOutcome::Success { .. })
    }
}

/// Per-strategy outcomes of inverting one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyReport {
    /// Outcome under no pivoting.
    pub none: StrategyOutcome,
    /// Outcome under partial (row) pivoting.
    pub partial_row: StrategyOutcome,
    /// Outcome under full pivoting.
    pub full: StrategyOutcome,
}

impl StrategyReport {
    /// The outcome recorded for `strategy`.
    pub fn outcome(&self, strategy: PivotStrategy) -> &StrategyOutcome {
        match strategy {
            PivotStrategy::None => &self.none,
            PivotStrategy::PartialRow => &self.partial_row,
            PivotStrategy::Full => &self.full,
        }
    }
}

/// Inverts `a` under all three strategies (compact storage) and captures
/// outcome, residual, determinant, and swap count for each. Failures are
/// reported, never raised. With the `parallel` feature the three runs
/// proceed concurrently; `invert` is pure, so the outcomes are unaffected.
pub fn compare_strategies(a: &DenseMatrix, threshold: f64) -> StrategyReport {
    let run = |strategy: PivotStrategy| -> StrategyOutcome {
        match engine::invert(a, strategy, threshold, EliminationMode::Compact) {
            Ok(res) => StrategyOutcome::Success {
                residual_max: residual_norm(a, &res.inverse)
                    .expect("inverse has the input's dimension"),
                determinant: res.determinant,
                swap_count: res.log.swap_count(),
            },
            Err(GjError::Singular { step, .. }) | Err(GjError::ZeroPivot { step }) => {
                StrategyOutcome::Singular { step }
            }
        }
    };

    #[cfg(feature = "parallel")]
    let (none, (partial_row, full)) = rayon::join(
        || run(PivotStrategy::None),
        || {
            rayon::join(
                || run(PivotStrategy::PartialRow),
                || run(PivotStrategy::Full),
            )
        },
    );
    #[cfg(not(feature = "parallel"))]
    let (none, (partial_row, full)) = (
        run(PivotStrategy::None),
        (run(PivotStrategy::PartialRow), run(PivotStrategy::Full)),
    );

    StrategyReport {
        none,
        partial_row,
        full,
    }
}
