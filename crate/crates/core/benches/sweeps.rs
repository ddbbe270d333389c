//! Sequential against rayon-parallel sweeps. Without the `parallel` feature
//! only the sequential rows are measured.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

#[cfg(feature = "parallel")]
use disperse_core::exec::Execution;
use disperse_core::scan::{linspace, Scanner};
use disperse_core::SystemParams;

fn scanners() -> Vec<(&'static str, Scanner)> {
    vec![
        ("sequential", Scanner::sequential()),
        #[cfg(feature = "parallel")]
        ("parallel", Scanner::new(Execution::Parallel)),
    ]
}

fn bench_spectrum(c: &mut Criterion) {
    let p = SystemParams::lambda(1.0, 2.3, 8.0);
    let mut group = c.benchmark_group("spectrum_1601");
    for (name, scanner) in scanners() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scanner.spectrum(black_box(&p), -10.0, 10.0, 1601).unwrap())
        });
    }
    group.finish();
}

fn bench_regime_map(c: &mut Criterion) {
    let base = SystemParams::default();
    let mut group = c.benchmark_group("regime_map_200x200");
    for (name, scanner) in scanners() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scanner.regime_map(black_box(&base), (0.0, 6.0, 200), (0.0, 10.0, 200)).unwrap())
        });
    }
    group.finish();
}

fn bench_validate(c: &mut Criterion) {
    let cases: Vec<SystemParams> =
        [1.0, 8.0].iter().flat_map(|&w| [0.8, 1.3, 2.3].map(|r| SystemParams::lambda(1.0, r, w))).collect();
    let grid = linspace(-10.0, 10.0, 161).unwrap();
    let mut group = c.benchmark_group("validate_6x161");
    group.sample_size(20);
    for (name, scanner) in scanners() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scanner.validate(black_box(&cases), &grid, 1e-3).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_spectrum, bench_regime_map, bench_validate);
criterion_main!(benches);
