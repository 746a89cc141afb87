//! Parallel vs sequential comparison of the data-parallel cores: the
//! crossing-number level search and a mid-size staircase build.
//!
//! `cargo bench` runs with the default `parallel` feature, pitting the rayon
//! search against the single-threaded reference in one binary. Running
//! `cargo bench --no-default-features` measures the crate with the parallel
//! code paths compiled out entirely.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use std::hint::black_box;

use critcross::family::{build_r, build_s, ThickSelection};
use critcross::graph::complete_bipartite;
use critcross::oracle::{crossing_number_exact, crossing_number_exact_seq};

const BUDGET: Duration = Duration::from_secs(600);

fn bench_oracle(c: &mut Criterion) {
    let k33 = complete_bipartite(3, 3).unwrap();
    let k35 = complete_bipartite(3, 5).unwrap();
    let r20 = build_r(&BigInt::from(2), &BigInt::from(0)).unwrap();

    let mut group = c.benchmark_group("oracle_k33");
    group.bench_function("default", |b| {
        b.iter(|| crossing_number_exact(black_box(&k33), 2, BUDGET).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| crossing_number_exact_seq(black_box(&k33), 2, BUDGET).unwrap())
    });
    group.finish();

    let mut group = c.benchmark_group("oracle_r20");
    group.bench_function("default", |b| {
        b.iter(|| crossing_number_exact(black_box(&r20), 3, BUDGET).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| crossing_number_exact_seq(black_box(&r20), 3, BUDGET).unwrap())
    });
    group.finish();

    // Level-3 exhaustion of K35 is the heaviest pinned instance; sample
    // sparingly.
    let mut group = c.benchmark_group("oracle_k35");
    group.sample_size(10);
    group.bench_function("default", |b| {
        b.iter(|| crossing_number_exact(black_box(&k35), 4, BUDGET).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| crossing_number_exact_seq(black_box(&k35), 4, BUDGET).unwrap())
    });
    group.finish();
}

fn bench_build(c: &mut Criterion) {
    let (n, m) = (BigInt::from(5), BigInt::from(1001));
    let cc = BigInt::from(500);
    let mut group = c.benchmark_group("build_s_5_1001_500");
    group.sample_size(20);
    group.bench_function("canonical", |b| {
        b.iter(|| build_s(black_box(&n), &m, &cc, ThickSelection::Canonical).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_oracle, bench_build);
criterion_main!(benches);
