use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypercert_core::arith::{pk, stirling_bounds_check};
use hypercert_core::energy::{energy, exhaustive_verify, random_subset};
use hypercert_core::inequality::{certify_f_below_one, f_k, verify_main_inequality, GridSpec};
use hypercert_core::means::whiteley_mean;
use hypercert_core::rug::Rational;
use hypercert_core::walk::{simulate, walk_distribution};
use hypercert_core::{PrecisionPolicy, WalkLaw};

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("arith");
    for k in [10u32, 100, 1000] {
        g.bench_with_input(BenchmarkId::new("p_k", k), &k, |b, &k| {
            b.iter(|| pk(black_box(k), 256))
        });
    }
    g.bench_function("stirling n=1000", |b| {
        b.iter(|| stirling_bounds_check(black_box(1000), 256))
    });
    g.finish();
}

fn binomial_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("f_k");
    let x = Rational::from((3, 7));
    for k in [10u32, 50, 100] {
        g.bench_with_input(BenchmarkId::new("eval", k), &k, |b, &k| {
            b.iter(|| f_k(k, black_box(&x), 256))
        });
        g.bench_with_input(BenchmarkId::new("certify", k), &k, |b, &k| {
            b.iter(|| certify_f_below_one(k, black_box(&x), PrecisionPolicy::default()))
        });
    }
    let grid = GridSpec::unit(101).unwrap();
    g.sample_size(10);
    g.bench_function("grid k=50 n=101", |b| {
        b.iter(|| verify_main_inequality(50, &grid, PrecisionPolicy::default()))
    });
    g.finish();
}

fn additive_energy(c: &mut Criterion) {
    let mut g = c.benchmark_group("energy");
    for (d, k) in [(6u32, 2u32), (8, 3), (10, 2)] {
        let a = random_subset(d, 1, 0).unwrap();
        g.bench_function(format!("d={d} k={k}"), |b| {
            b.iter(|| energy(black_box(&a), k))
        });
    }
    g.sample_size(10);
    g.bench_function("exhaustive d=3 k=3", |b| {
        b.iter(|| exhaustive_verify(3, 3, PrecisionPolicy::default()))
    });
    g.finish();
}

fn lazy_walk(c: &mut Criterion) {
    let mut g = c.benchmark_group("walk");
    let law = WalkLaw::new(Rational::from((3, 10))).unwrap();
    for n in [10u32, 100] {
        g.bench_with_input(BenchmarkId::new("distribution", n), &n, |b, &n| {
            b.iter(|| walk_distribution(black_box(&law), n))
        });
    }
    g.sample_size(10);
    g.bench_function("simulate k=5 1e5", |b| {
        b.iter(|| simulate(&law, 5, 100_000, 0))
    });
    g.finish();
}

fn means(c: &mut Criterion) {
    let x = Rational::from((5, 3));
    let y = Rational::from(1);
    c.bench_function("whiteley_mean k=20", |b| {
        b.iter(|| whiteley_mean(20, black_box(&x), black_box(&y), 256))
    });
}

criterion_group!(
    benches,
    arithmetic,
    binomial_sum,
    additive_energy,
    lazy_walk,
    means
);
criterion_main!(benches);
