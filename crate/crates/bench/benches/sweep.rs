use criterion::{criterion_group, criterion_main, Criterion};
use unruh_otto::sweep::{presets, run_sweep, run_sweep_parallel};

fn presets_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    for name in ["fig2", "fig5", "fig6"] {
        let spec = presets::preset(name).unwrap();
        group.bench_function(name, |b| b.iter(|| run_sweep(&spec).unwrap()));
    }
    let spec = presets::preset("fig6").unwrap();
    group.bench_function("fig6 parallel 4", |b| {
        b.iter(|| run_sweep_parallel(&spec, 4).unwrap())
    });
    group.finish();
}

criterion_group!(benches, presets_bench);
criterion_main!(benches);
