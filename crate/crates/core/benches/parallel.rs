//! Sequential versus data-parallel runs of the heavier kernels.
//!
//! Each workload runs inside a 1-thread rayon pool and inside the default
//! pool. Built without the `parallel` feature, both variants exercise the
//! sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPoolBuilder;

use k3sym_core::index_solver::{enumerate_profiles, standard_types, ManifoldInvariants};
use k3sym_core::kummer::{kummer_verify, Deltas};
use k3sym_core::lattice::{smith_batch, IntMatrix};
use k3sym_core::report::run_lemma;

fn random_matrices(n: usize, size: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..size).map(|_| (0..size).map(|_| rng.random_range(-9..=9)).collect()).collect();
            IntMatrix::from_rows(&rows).unwrap()
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let pools = [
        ("1-thread", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("default", ThreadPoolBuilder::new().build().unwrap()),
    ];
    let matrices = random_matrices(256, 8);
    let inv = ManifoldInvariants::k3();
    let types5 = standard_types(5).unwrap();

    let mut g = c.benchmark_group("smith_batch_256x8x8");
    for (name, pool) in &pools {
        g.bench_with_input(BenchmarkId::from_parameter(name), &matrices, |b, m| b.iter(|| pool.install(|| smith_batch(m))));
    }
    g.finish();

    let mut g = c.benchmark_group("enumerate_order5");
    for (name, pool) in &pools {
        g.bench_function(*name, |b| b.iter(|| pool.install(|| enumerate_profiles(5, &types5, &inv, 3).unwrap())));
    }
    g.finish();

    let mut g = c.benchmark_group("kummer_verify");
    for (name, pool) in &pools {
        g.bench_function(*name, |b| b.iter(|| pool.install(|| kummer_verify(Deltas::default()).unwrap())));
    }
    g.finish();

    let mut g = c.benchmark_group("lemma_all");
    g.sample_size(10);
    for (name, pool) in &pools {
        g.bench_function(*name, |b| b.iter(|| pool.install(|| run_lemma("all").unwrap())));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
