use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bercov_bench::standard_params;
use bercov_core::glue::{build_covering, refute_overconvergent};
use bercov_core::powermap::{fiber, pushforward, pushforward_oracle, split_profile};
use bercov_core::rational::{rat, ratio};
use bercov_core::valgroup::LogMag;

fn bench_pushforward(c: &mut Criterion) {
    let mut group = c.benchmark_group("pushforward");
    let center = LogMag::Pow(ratio(5, 3));
    let t = ratio(-7, 5) + ratio(5, 3);
    for h in [1u32, 2, 4] {
        group.bench_with_input(BenchmarkId::new("recursion", h), &h, |b, &h| {
            b.iter(|| pushforward(5, h, &center, &t).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("expansion-oracle", h), &h, |b, &h| {
            b.iter(|| pushforward_oracle(5, h, &center, &t).unwrap())
        });
    }
    group.finish();
}

fn bench_profile(c: &mut Criterion) {
    c.bench_function("split_profile p=7 h=4", |b| {
        b.iter(|| split_profile(7, 4).unwrap())
    });
    c.bench_function("fiber enumeration p=7 h=4 grid", |b| {
        let one = LogMag::one();
        b.iter(|| {
            for k in 0..64i64 {
                fiber(7, 4, &one, &ratio(-k, 8)).unwrap();
            }
        })
    });
}

fn bench_glued_covering(c: &mut Criterion) {
    c.bench_function("build_covering N=64", |b| {
        let params = standard_params(64);
        b.iter(|| build_covering(&params).unwrap())
    });
    c.bench_function("components_over_neighborhood N=64", |b| {
        let covering = build_covering(&standard_params(64)).unwrap();
        let eps = ratio(1, 8);
        b.iter(|| covering.components_over_neighborhood(&eps).unwrap())
    });
    c.bench_function("refute N=16,32,64", |b| {
        let params = standard_params(0);
        let eps = ratio(1, 8);
        b.iter(|| refute_overconvergent(&params, &eps, &[16, 32, 64]).unwrap())
    });
    c.bench_function("refute full-band N=128", |b| {
        let params = standard_params(0);
        b.iter(|| refute_overconvergent(&params, &rat(1), &[64, 128]).unwrap())
    });
}

criterion_group!(
    benches,
    bench_pushforward,
    bench_profile,
    bench_glued_covering
);
criterion_main!(benches);
