//! Hot-path benchmarks: transform round-trip, one integrator step, weight
//! construction and the Morawetz potential evaluation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypwave_core::data::gaussian_bump;
use hypwave_core::grid::{RadialField, RadialGrid, WaveState};
use hypwave_core::morawetz::{build_weight, morawetz_potential, WeightFamily};
use hypwave_core::solver::{step, CubicSign};
use hypwave_core::spectral::{forward, inverse};
use std::hint::black_box;

fn bench_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("transform_roundtrip");
    for exp in [10usize, 12, 14] {
        let grid = RadialGrid::new(12.0, 1 << exp).unwrap();
        let u = gaussian_bump(grid.clone(), 0.5, 1.0, 0.0).unwrap();
        // Warm the plan cache outside the timing loop.
        let _ = inverse(&forward(&u));
        group.bench_with_input(BenchmarkId::from_parameter(1usize << exp), &u, |b, u| {
            b.iter(|| inverse(&forward(black_box(u))));
        });
    }
    group.finish();
}

fn bench_step(c: &mut Criterion) {
    let grid = RadialGrid::new(12.0, 1 << 12).unwrap();
    let u = gaussian_bump(grid.clone(), 0.5, 1.0, 0.0).unwrap();
    let st = WaveState::new(u, RadialField::zeros(grid), 0.0).unwrap();
    let _ = step(&st, 1e-3, CubicSign::Defocusing, 1e8).unwrap();
    c.bench_function("strang_step_n4096", |b| {
        b.iter(|| step(black_box(&st), 1e-3, CubicSign::Defocusing, 1e8).unwrap());
    });
}

fn bench_weight_build(c: &mut Criterion) {
    let grid = RadialGrid::new(10.0, 1 << 12).unwrap();
    c.bench_function("build_weight_a3_n4096", |b| {
        b.iter(|| build_weight(WeightFamily::A3 { alpha: 0.9 }, black_box(grid.clone())).unwrap());
    });
}

fn bench_potential(c: &mut Criterion) {
    let grid = RadialGrid::new(10.0, 1 << 12).unwrap();
    let w = build_weight(WeightFamily::A1, grid.clone()).unwrap();
    let u = gaussian_bump(grid.clone(), 0.5, 1.0, 0.0).unwrap();
    let ut = gaussian_bump(grid.clone(), 0.2, 1.2, 0.5).unwrap();
    let st = WaveState::new(u, ut, 0.0).unwrap();
    c.bench_function("morawetz_potential_n4096", |b| {
        b.iter(|| morawetz_potential(black_box(&st), &w).unwrap());
    });
}

criterion_group!(benches, bench_transform, bench_step, bench_weight_build, bench_potential);
criterion_main!(benches);
