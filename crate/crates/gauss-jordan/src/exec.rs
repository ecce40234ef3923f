//! Row-parallel execution helpers.
//!
//! Every loop here visits disjoint rows of a row-major buffer, so the
//! parallel and sequential variants perform the identical arithmetic in the
//! identical per-row order and produce bit-equal results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Dimension at which the `parallel` feature switches row loops and the
/// full-pivot search over to rayon. Below this, thread overhead dominates
/// the O(n) work per row.
pub const PAR_DIM_THRESHOLD: usize = 128;

pub(crate) fn for_each_row<F>(data: &mut [f64], n: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_DIM_THRESHOLD {
        data.par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
        return;
    }
    for (i, row) in data.chunks_mut(n).enumerate() {
        f(i, row);
    }
}

pub(crate) fn for_each_row_except<F>(data: &mut [f64], n: usize, skip: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_DIM_THRESHOLD {
        data.par_chunks_mut(n)
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .for_each(|(i, row)| f(i, row));
        return;
    }
    for (i, row) in data.chunks_mut(n).enumerate() {
        if i != skip {
            f(i, row);
        }
    }
}

/// Visits matching rows of two equally sized buffers, skipping row `skip`.
pub(crate) fn for_each_row_pair_except<F>(
    left: &mut [f64],
    right: &mut [f64],
    n: usize,
    skip: usize,
    f: F,
) where
    F: Fn(usize, &mut [f64], &mut [f64]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_DIM_THRESHOLD {
        left.par_chunks_mut(n)
            .zip(right.par_chunks_mut(n))
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .for_each(|(i, (l, r))| f(i, l, r));
        return;
    }
    for (i, (l, r)) in left.chunks_mut(n).zip(right.chunks_mut(n)).enumerate() {
        if i != skip {
            f(i, l, r);
        }
    }
}
