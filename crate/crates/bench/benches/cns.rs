use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cnslab_core::lab::sweep;
use cnslab_core::multdep::mult_dep;
use cnslab_core::{make_base, FieldSpec, QuadInt};

fn gi(a: i64, b: i64) -> QuadInt {
    QuadInt::from_i64(FieldSpec::gaussian(), a, b)
}

fn expansion(c: &mut Criterion) {
    let base = make_base(gi(-1, 1)).unwrap();
    let small = gi(987_654, -123_456);
    let large = gi(-3, 7).pow(40);
    c.bench_function("expand/small", |b| b.iter(|| base.expand(black_box(&small)).unwrap()));
    c.bench_function("expand/bigint", |b| b.iter(|| base.expand(black_box(&large)).unwrap()));
    c.bench_function("digit_step", |b| b.iter(|| base.digit_step(black_box(&large)).unwrap()));
}

fn dependence(c: &mut Criterion) {
    let (x, y) = (gi(-7, 1), gi(-1, 7).pow(3));
    c.bench_function("mult_dep", |b| b.iter(|| mult_dep(black_box(&x), black_box(&y)).unwrap()));
}

fn small_sweep(c: &mut Criterion) {
    let (a, b) = (make_base(gi(-1, 1)).unwrap(), make_base(gi(-2, 1)).unwrap());
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("n_max=1e4", |bch| bch.iter(|| sweep(&a, &b, black_box(10_000)).unwrap()));
    group.finish();
}

criterion_group!(benches, expansion, dependence, small_sweep);
criterion_main!(benches);
