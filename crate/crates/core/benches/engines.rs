//! Engine timings. Run once with the default features and once with
//! `--no-default-features` to compare the rayon core with the sequential
//! build; each group also pins the pool to one thread for comparison.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graver::{
    graver_basis, graver_basis_sym, kernel_lattice, table_group, table_matrix, Algorithm,
    EngineOptions,
};

const MODE: &str = if cfg!(feature = "parallel") {
    "parallel"
} else {
    "sequential"
};

fn bench_engines(c: &mut Criterion) {
    let opts = EngineOptions::default();
    let dims = [2usize, 3, 3];
    let basis = kernel_lattice(&table_matrix(&dims).unwrap()).unwrap();
    let group = table_group(&dims).unwrap();
    let mut g = c.benchmark_group(format!("table_2x3x3_{MODE}"));
    g.sample_size(10);
    for threads in [1usize, 0] {
        let label = if threads == 1 {
            "1-thread"
        } else {
            "all-threads"
        };
        for alg in [Algorithm::Pottier, Algorithm::Fast] {
            g.bench_function(BenchmarkId::new(format!("{alg}"), label), |b| {
                b.iter(|| {
                    graver::par::with_threads(threads, || graver_basis(&basis, alg, &opts).unwrap())
                })
            });
            g.bench_function(BenchmarkId::new(format!("sym-{alg}"), label), |b| {
                b.iter(|| {
                    graver::par::with_threads(threads, || {
                        graver_basis_sym(&basis, &group, alg, &opts).unwrap()
                    })
                })
            });
        }
    }
    g.finish();

    let dims = [3usize, 3, 3];
    let basis = kernel_lattice(&table_matrix(&dims).unwrap()).unwrap();
    let group = table_group(&dims).unwrap();
    let mut g = c.benchmark_group(format!("table_3x3x3_{MODE}"));
    g.sample_size(10);
    for threads in [1usize, 0] {
        let label = if threads == 1 {
            "1-thread"
        } else {
            "all-threads"
        };
        g.bench_function(BenchmarkId::new("sym-fast", label), |b| {
            b.iter(|| {
                graver::par::with_threads(threads, || {
                    graver_basis_sym(&basis, &group, Algorithm::Fast, &opts).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_engines);
criterion_main!(benches);
