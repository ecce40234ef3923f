//! The Gauss-Jordan elimination state machine.
//!
//! An inversion is n steps. Step `k` (0-based) selects a pivot for position
//! `(k, k)` according to a [`PivotStrategy`], swaps it into place, then
//! performs the row operations that turn column `k` of the working matrix
//! into the k-th identity column while the same operations accumulate the
//! inverse. After the last step the recorded swaps are undone on the
//! accumulated matrix by [`depivot`].
//!
//! Two storage forms are supported and produce bit-identical results:
//!
//! - [`EliminationMode::Explicit`] keeps the reduced matrix and the
//!   accumulator separately. After step `k`, columns `0..=k` of the reduced
//!   matrix and columns `k+1..n` of the accumulator are exact identity
//!   columns.
//! - [`EliminationMode::Compact`] overlays the two in a single array: the
//!   identity columns carry no information, so the processed columns store
//!   the accumulator instead.
//!
//! The determinant is the running product of the pivots (taken before the
//! division), times −1 for every swap performed. The product is tracked in
//! plain `f64`, so it can overflow or underflow for extreme inputs; no
//! guard is attempted beyond the 64-bit float range.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec;
use crate::matrix::DenseMatrix;

/// Default magnitude below which a pivot candidate counts as zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// How pivots are chosen at each elimination step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotStrategy {
    /// Always use the diagonal element; fail if it is below threshold.
    None,
    /// Search rows `k..n` of column `k` for the largest magnitude; row
    /// swaps only.
    PartialRow,
    /// Search the whole trailing submatrix; row and column swaps.
    Full,
}

impl PivotStrategy {
    /// All strategies, in fixed order.
    pub const ALL: [PivotStrategy; 3] = [
        PivotStrategy::None,
        PivotStrategy::PartialRow,
        PivotStrategy::Full,
    ];
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PivotStrategy::None => "none",
            PivotStrategy::PartialRow => "partial",
            PivotStrategy::Full => "full",
        })
    }
}

impl FromStr for PivotStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(PivotStrategy::None),
            "partial" | "partial-row" => Ok(PivotStrategy::PartialRow),
            "full" => Ok(PivotStrategy::Full),
            other => Err(format!(
                "unknown pivot strategy `{other}` (expected none, partial, or full)"
            )),
        }
    }
}

/// Which storage form the elimination works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EliminationMode {
    /// Separate reduced matrix and inverse accumulator.
    Explicit,
    /// Single working array holding both.
    Compact,
}

impl fmt::Display for EliminationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EliminationMode::Explicit => "explicit",
            EliminationMode::Compact => "compact",
        })
    }
}

impl FromStr for EliminationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "explicit" => Ok(EliminationMode::Explicit),
            "compact" => Ok(EliminationMode::Compact),
            other => Err(format!(
                "unknown mode `{other}` (expected explicit or compact)"
            )),
        }
    }
}

/// Errors from the elimination engine.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GjError {
    /// Every pivot candidate admissible for the strategy fell at or below
    /// the zero threshold at the given step (0-based).
    #[error("singular matrix: no pivot above threshold at step {} ({strategy} pivoting)", .step + 1)]
    Singular {
        step: usize,
        strategy: PivotStrategy,
    },
    /// A zero pivot reached the elimination itself. Unreachable when the
    /// pivot was produced by `select_pivot`.
    #[error("zero pivot at step {}", .step + 1)]
    ZeroPivot { step: usize },
}

/// The pivot chosen for one step: position (0-based) and the value found
/// there before any division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotChoice {
    /// Step this choice was made for (0-based).
    pub step: usize,
    /// Source row of the pivot, `step <= row < n`.
    pub row: usize,
    /// Source column of the pivot, `step <= col < n`. Equals `step` for
    /// the `None` and `PartialRow` strategies.
    pub col: usize,
    /// The pivot value.
    pub value: f64,
}

/// The swaps performed at one step. A no-op swap `(k, k)` is recorded as
/// `None`; an entry with both fields `None` is never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    /// Step the swaps belong to (0-based).
    pub step: usize,
    /// Rows swapped in the input, if any.
    pub row_swap: Option<(usize, usize)>,
    /// Columns swapped in the input, if any.
    pub col_swap: Option<(usize, usize)>,
}

/// Chronological record of the swaps performed during an elimination.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PivotLog {
    entries: Vec<SwapRecord>,
}

impl PivotLog {
    /// The recorded entries in chronological order.
    pub fn entries(&self) -> &[SwapRecord] {
        &self.entries
    }

    /// True when no swap was performed at all.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of swaps performed (row and column swaps counted
    /// separately).
    pub fn swap_count(&self) -> usize {
        self.entries
            .iter()
            .map(|e| usize::from(e.row_swap.is_some()) + usize::from(e.col_swap.is_some()))
            .sum()
    }

    fn record(&mut self, rec: SwapRecord) {
        debug_assert!(rec.row_swap.is_some() || rec.col_swap.is_some());
        debug_assert!(self.entries.last().is_none_or(|e| e.step < rec.step));
        self.entries.push(rec);
    }
}

#[derive(Debug, Clone)]
enum Workspace {
    Explicit { a: DenseMatrix, d: DenseMatrix },
    Compact { x: DenseMatrix },
}

/// The elimination in progress: completed step count, working matrices,
/// swap log, and the determinant bookkeeping (running pivot product and
/// swap sign).
#[derive(Debug, Clone)]
pub struct EliminationState {
    k: usize,
    work: Workspace,
    log: PivotLog,
    pivot_product: f64,
    sign: f64,
}

impl EliminationState {
    /// Starts an elimination on a copy of `a`: zero completed steps, empty
    /// log, pivot product 1, sign +1.
    pub fn new(a: &DenseMatrix, mode: EliminationMode) -> Self {
        let work = match mode {
            EliminationMode::Explicit => Workspace::Explicit {
                a: a.clone(),
                d: DenseMatrix::identity(a.n()).expect("dimension is at least 1"),
            },
            EliminationMode::Compact => Workspace::Compact { x: a.clone() },
        };
        EliminationState {
            k: 0,
            work,
            log: PivotLog::default(),
            pivot_product: 1.0,
            sign: 1.0,
        }
    }

    /// Dimension of the matrix being inverted.
    pub fn n(&self) -> usize {
        match &self.work {
            Workspace::Explicit { a, .. } => a.n(),
            Workspace::Compact { x } => x.n(),
        }
    }

    /// Number of completed elimination steps (0..=n).
    pub fn completed_steps(&self) -> usize {
        self.k
    }

    /// True once all n steps have run.
    pub fn is_complete(&self) -> bool {
        self.k == self.n()
    }

    /// The storage form this state runs in.
    pub fn mode(&self) -> EliminationMode {
        match &self.work {
            Workspace::Explicit { .. } => EliminationMode::Explicit,
            Workspace::Compact { .. } => EliminationMode::Compact,
        }
    }

    /// The reduced matrix (explicit mode only).
    pub fn a_work(&self) -> Option<&DenseMatrix> {
        match &self.work {
            Workspace::Explicit { a, .. } => Some(a),
            Workspace::Compact { .. } => None,
        }
    }

    /// The inverse accumulator (explicit mode only).
    pub fn d_work(&self) -> Option<&DenseMatrix> {
        match &self.work {
            Workspace::Explicit { d, .. } => Some(d),
            Workspace::Compact { .. } => None,
        }
    }

    /// The single working array (compact mode only).
    pub fn x(&self) -> Option<&DenseMatrix> {
        match &self.work {
            Workspace::Compact { x } => Some(x),
            Workspace::Explicit { .. } => None,
        }
    }

    /// The swaps performed so far.
    pub fn log(&self) -> &PivotLog {
        &self.log
    }

    /// Product of the pivots consumed so far, before their divisions.
    pub fn pivot_product(&self) -> f64 {
        self.pivot_product
    }

    /// +1 or −1: parity of the swaps performed so far.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// `sign · pivot_product`; the determinant once the elimination is
    /// complete.
    pub fn determinant(&self) -> f64 {
        self.sign * self.pivot_product
    }

    /// The matrix whose trailing block holds the still-unreduced entries.
    /// In both modes, positions `(i, j)` with `i, j >= k` read the same
    /// values.
    fn active(&self) -> &DenseMatrix {
        match &self.work {
            Workspace::Explicit { a, .. } => a,
            Workspace::Compact { x } => x,
        }
    }

    /// Picks the pivot for the next step: the candidate of largest absolute
    /// value in the strategy's search region, provided it exceeds
    /// `threshold`. Ties break to the smallest row, then smallest column.
    ///
    /// Returns [`GjError::Singular`] when the whole region is at or below
    /// the threshold — for `None` that is the single diagonal candidate,
    /// so a zero diagonal there does not mean the matrix is singular.
    pub fn select_pivot(
        &self,
        strategy: PivotStrategy,
        threshold: f64,
    ) -> Result<PivotChoice, GjError> {
        assert!(
            threshold >= 0.0 && threshold.is_finite(),
            "threshold must be finite and non-negative"
        );
        let s = self.k;
        let n = self.n();
        assert!(s < n, "elimination already complete");
        let m = self.active();

        let best: (f64, usize, usize) = match strategy {
            PivotStrategy::None => (m[(s, s)], s, s),
            PivotStrategy::PartialRow => {
                let mut best = (m[(s, s)], s, s);
                for i in s + 1..n {
                    let v = m[(i, s)];
                    if v.abs() > best.0.abs() {
                        best = (v, i, s);
                    }
                }
                best
            }
            PivotStrategy::Full => full_search(m, s),
        };

        if best.0.abs() > threshold {
            Ok(PivotChoice {
                step: s,
                row: best.1,
                col: best.2,
                value: best.0,
            })
        } else {
            Err(GjError::Singular { step: s, strategy })
        }
    }

    /// Swaps the chosen pivot into position `(k, k)`, records the swaps,
    /// and flips the sign once per swap actually performed.
    ///
    /// In explicit mode the row swap applies to the reduced matrix and to
    /// the accumulator's computed columns `0..k`; its remaining columns are
    /// still identity columns, and leaving them in place is what makes a
    /// mid-run swap equivalent to having swapped the input up front, so the
    /// final accumulator is exactly `Q⁻¹·A⁻¹·P⁻¹` for [`depivot`] to
    /// unscramble. (The compact form gets this for free: its single array
    /// does not store the identity columns at all.) Column swaps apply to
    /// the reduced matrix only — they permute the unknowns, which
    /// `depivot` restores on the inverse.
    pub fn apply_pivot(&mut self, choice: &PivotChoice) {
        let s = self.k;
        assert_eq!(choice.step, s, "pivot choice is for a different step");
        assert!(choice.row >= s && choice.row < self.n(), "bad pivot row");
        assert!(choice.col >= s && choice.col < self.n(), "bad pivot col");

        let row_swap = (choice.row != s).then_some((s, choice.row));
        let col_swap = (choice.col != s).then_some((s, choice.col));

        match &mut self.work {
            Workspace::Explicit { a, d } => {
                if let Some((p, q)) = row_swap {
                    a.swap_rows(p, q);
                    d.swap_rows_in_cols(p, q, s);
                }
                if let Some((p, q)) = col_swap {
                    a.swap_cols(p, q);
                }
            }
            Workspace::Compact { x } => {
                if let Some((p, q)) = row_swap {
                    x.swap_rows(p, q);
                }
                if let Some((p, q)) = col_swap {
                    x.swap_cols(p, q);
                }
            }
        }

        if row_swap.is_some() {
            self.sign = -self.sign;
        }
        if col_swap.is_some() {
            self.sign = -self.sign;
        }
        if row_swap.is_some() || col_swap.is_some() {
            self.log.record(SwapRecord {
                step: s,
                row_swap,
                col_swap,
            });
        }
    }

    /// Runs the row operations for the current step, with the pivot already
    /// in position `(k, k)`, and advances the step counter. The pivot value
    /// (pre-division) is multiplied into the running product.
    pub fn eliminate_step(&mut self) -> Result<(), GjError> {
        let s = self.k;
        let n = self.n();
        assert!(s < n, "elimination already complete");

        let pivot = self.active()[(s, s)];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(GjError::ZeroPivot { step: s });
        }
        self.pivot_product *= pivot;

        match &mut self.work {
            Workspace::Explicit { a, d } => eliminate_explicit(a, d, s, pivot),
            Workspace::Compact { x } => eliminate_compact(x, s, pivot),
        }
        self.k += 1;
        Ok(())
    }

    /// The accumulated inverse before de-pivoting: the accumulator in
    /// explicit mode, the working array in compact mode. Only meaningful
    /// once the elimination is complete.
    pub fn inverse_candidate(&self) -> &DenseMatrix {
        match &self.work {
            Workspace::Explicit { d, .. } => d,
            Workspace::Compact { x } => x,
        }
    }

    fn into_parts(self) -> (DenseMatrix, PivotLog, f64) {
        let det = self.determinant();
        let candidate = match self.work {
            Workspace::Explicit { d, .. } => d,
            Workspace::Compact { x } => x,
        };
        (candidate, self.log, det)
    }
}

/// Row operations of one explicit step: both pivot rows are divided by the
/// pivot, then every other row i gets `row_i -= f · pivot_row` on both
/// matrices, with the factor `f` read from the reduced matrix.
///
/// The arithmetic lands the identity columns exactly: the pivot position
/// becomes `q/q = 1`, eliminated entries become `f − f·1 = 0`, and already
/// processed identity columns only ever see `±0` contributions.
fn eliminate_explicit(a: &mut DenseMatrix, d: &mut DenseMatrix, s: usize, pivot: f64) {
    let n = a.n();
    let a_data = a.data_mut();
    let d_data = d.data_mut();

    for v in &mut a_data[s * n..(s + 1) * n] {
        *v /= pivot;
    }
    for v in &mut d_data[s * n..(s + 1) * n] {
        *v /= pivot;
    }
    let pivot_row_a = a_data[s * n..(s + 1) * n].to_vec();
    let pivot_row_d = d_data[s * n..(s + 1) * n].to_vec();

    exec::for_each_row_pair_except(a_data, d_data, n, s, |_, ra, rd| {
        let f = ra[s];
        for (v, p) in ra.iter_mut().zip(&pivot_row_a) {
            *v -= f * p;
        }
        for (v, p) in rd.iter_mut().zip(&pivot_row_d) {
            *v -= f * p;
        }
    });
}

/// One compact step, exactly the single-array update: the pivot slot is
/// seeded with 1 before the row division (so it ends as 1/pivot, the
/// accumulator value), and each remaining row zeroes its pivot-column slot
/// before the subtraction (so it ends as −f/pivot).
fn eliminate_compact(x: &mut DenseMatrix, s: usize, pivot: f64) {
    let n = x.n();
    let data = x.data_mut();

    data[s * n + s] = 1.0;
    for v in &mut data[s * n..(s + 1) * n] {
        *v /= pivot;
    }
    let pivot_row = data[s * n..(s + 1) * n].to_vec();

    exec::for_each_row_except(data, n, s, |_, row| {
        let f = row[s];
        row[s] = 0.0;
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            *v -= f * p;
        }
    });
}

/// Max-abs search over the trailing submatrix `i, j >= s`. Ties break to
/// the smallest row, then smallest column, in both the sequential and the
/// parallel path, so the choice is deterministic.
fn full_search(m: &DenseMatrix, s: usize) -> (f64, usize, usize) {
    let n = m.n();

    #[cfg(feature = "parallel")]
    if n - s >= exec::PAR_DIM_THRESHOLD {
        use rayon::prelude::*;
        return (s..n)
            .into_par_iter()
            .map(|i| {
                let (v, j) = row_max_abs(&m.row(i)[s..], s);
                (v, i, j)
            })
            .reduce(|| (0.0, usize::MAX, usize::MAX), better_candidate);
    }

    let mut best = (0.0, usize::MAX, usize::MAX);
    for i in s..n {
        let (v, j) = row_max_abs(&m.row(i)[s..], s);
        best = better_candidate(best, (v, i, j));
    }
    best
}

/// Largest-magnitude entry of a row segment; first occurrence wins.
/// `offset` converts the position back to a column index.
fn row_max_abs(segment: &[f64], offset: usize) -> (f64, usize) {
    let mut best = (segment[0], offset);
    for (idx, &v) in segment.iter().enumerate().skip(1) {
        if v.abs() > best.0.abs() {
            best = (v, offset + idx);
        }
    }
    best
}

/// Associative combiner: larger magnitude wins, exact ties go to the
/// smaller (row, column) pair.
fn better_candidate(a: (f64, usize, usize), b: (f64, usize, usize)) -> (f64, usize, usize) {
    if b.0.abs() > a.0.abs() || (b.0.abs() == a.0.abs() && (b.1, b.2) < (a.1, a.2)) {
        b
    } else {
        a
    }
}

/// Undoes the recorded swaps on the accumulated inverse, newest first:
/// a row swap of the input is undone as a column swap of the inverse, and
/// a column swap of the input as a row swap.
///
/// With P the row swaps and Q the column swaps, the elimination reduced
/// P·A·Q, so its accumulator is Q⁻¹·A⁻¹·P⁻¹ and A⁻¹ = Q·X·P.
pub fn depivot(inverse_candidate: &DenseMatrix, log: &PivotLog) -> DenseMatrix {
    let mut m = inverse_candidate.clone();
    for rec in log.entries().iter().rev() {
        if let Some((p, q)) = rec.col_swap {
            m.swap_rows(p, q);
        }
        if let Some((p, q)) = rec.row_swap {
            m.swap_cols(p, q);
        }
    }
    m
}

/// A completed inversion: the de-pivoted inverse, the determinant
/// (`sign · pivot product`), the swap log, and the run configuration.
#[derive(Debug, Clone)]
pub struct InversionResult {
    /// The inverse of the input.
    pub inverse: DenseMatrix,
    /// Determinant of the input; never 0 (singular inputs error instead).
    pub determinant: f64,
    /// Swaps performed during elimination.
    pub log: PivotLog,
    /// Strategy the run used.
    pub strategy: PivotStrategy,
    /// Number of elimination steps (= n).
    pub steps: usize,
}

/// Inverts `a`: n rounds of select/swap/eliminate, then de-pivoting.
///
/// `threshold` must be finite and non-negative; candidates at or below it
/// are treated as zero. Returns [`GjError::Singular`] with the failing
/// step when the strategy's search region is exhausted.
pub fn invert(
    a: &DenseMatrix,
    strategy: PivotStrategy,
    threshold: f64,
    mode: EliminationMode,
) -> Result<InversionResult, GjError> {
    let n = a.n();
    let mut state = EliminationState::new(a, mode);
    for _ in 0..n {
        let choice = state.select_pivot(strategy, threshold)?;
        state.apply_pivot(&choice);
        state.eliminate_step()?;
    }
    let (candidate, log, determinant) = state.into_parts();
    let inverse = depivot(&candidate, &log);
    Ok(InversionResult {
        inverse,
        determinant,
        log,
        strategy,
        steps: n,
    })
}

/// Determinant of `a` via a full inversion run (compact storage).
/// Propagates [`GjError::Singular`] for singular input.
pub fn det(a: &DenseMatrix, strategy: PivotStrategy, threshold: f64) -> Result<f64, GjError> {
    invert(a, strategy, threshold, EliminationMode::Compact).map(|r| r.determinant)
}

/// Like [`det`], but maps singular input to 0 instead of an error.
pub fn det_or_zero(a: &DenseMatrix, strategy: PivotStrategy, threshold: f64) -> f64 {
    det(a, strategy, threshold).unwrap_or(0.0)
}
