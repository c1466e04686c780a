use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use unruh_otto::{response, response_extrapolated, QuadratureSpec, ResponseQuery};

fn closed_form(c: &mut Criterion) {
    c.bench_function("response closed form", |b| {
        b.iter(|| response(black_box(1.0), black_box(0.7), black_box(30.0)).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let q = ResponseQuery::new(1.0, 1.0, 12f64.sqrt() / 2.0).unwrap();
    let spec = QuadratureSpec::default();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("extrapolated E=1 b/T=2", |b| {
        b.iter(|| response_extrapolated(black_box(&q), &spec).unwrap())
    });
    group.finish();
}

criterion_group!(benches, closed_form, oracle);
criterion_main!(benches);
