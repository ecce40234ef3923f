//! Parallel-vs-sequential comparison of the elimination kernels.
//!
//! With the default `parallel` feature, dimensions at or above
//! `PAR_DIM_THRESHOLD` run the rayon row kernels; the "seq" lane pins the
//! same work to a one-thread pool for a like-for-like baseline. Building
//! the bench with `--no-default-features` measures the pure sequential
//! code with no rayon in the binary at all.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use gauss_jordan::{invert, DenseMatrix, EliminationMode, PivotStrategy};

/// Well-conditioned deterministic test matrix: noise in [-1, 1) plus a
/// dominant diagonal, so every strategy succeeds without drama.
fn test_matrix(n: usize, seed: u64) -> DenseMatrix {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v = next();
        }
        row[i] += n as f64;
    }
    DenseMatrix::from_rows(&rows).unwrap()
}

fn bench_invert(c: &mut Criterion) {
    let mut group = c.benchmark_group("invert");
    group.sample_size(20);

    for &n in &[64usize, 128, 256] {
        let a = test_matrix(n, 0xC0FFEE);
        group.throughput(Throughput::Elements((n * n * n) as u64));

        for mode in [EliminationMode::Compact, EliminationMode::Explicit] {
            group.bench_with_input(
                BenchmarkId::new(format!("{mode}/par"), n),
                &a,
                |b, a| b.iter(|| invert(a, PivotStrategy::Full, 1e-12, mode).unwrap()),
            );

            #[cfg(feature = "parallel")]
            {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(1)
                    .build()
                    .unwrap();
                group.bench_with_input(
                    BenchmarkId::new(format!("{mode}/seq"), n),
                    &a,
                    |b, a| {
                        b.iter(|| {
                            pool.install(|| invert(a, PivotStrategy::Full, 1e-12, mode).unwrap())
                        })
                    },
                );
            }
        }
    }
    group.finish();
}

fn bench_strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("strategies");
    group.sample_size(20);

    let n = 192;
    let a = test_matrix(n, 0xBEEF);
    for strategy in PivotStrategy::ALL {
        group.bench_with_input(
            BenchmarkId::new(strategy.to_string(), n),
            &a,
            |b, a| b.iter(|| invert(a, strategy, 1e-12, EliminationMode::Compact).unwrap()),
        );
    }
    group.finish();
}

fn bench_multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    group.sample_size(20);

    for &n in &[128usize, 256] {
        let a = test_matrix(n, 1);
        let b_mat = test_matrix(n, 2);

        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, _| {
            b.iter(|| a.multiply(&b_mat).unwrap())
        });

        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap();
            group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
                b.iter(|| pool.install(|| a.multiply(&b_mat).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_invert, bench_strategies, bench_multiply);
criterion_main!(benches);
