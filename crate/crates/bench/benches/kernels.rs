//! Benchmarks for the hot kernels: rotation-matrix construction, operator
//! assembly, dense diagonalization, and trajectory evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use twomode::dynamics::population_trajectory;
use twomode::model::{assemble_h3, ModelParams};
use twomode::oracle::{dense_eigensolve, displacement_matrix};
use twomode::sector::{FockSector, StateVector};
use twomode::wigner::{d_column, rotation_matrix};

fn params(two_j: u32) -> ModelParams {
    ModelParams::new(100.0, 1.0, 0.01, 0.2, FockSector::from_two_j(two_j)).unwrap()
}

fn bench_wigner(c: &mut Criterion) {
    let mut group = c.benchmark_group("wigner");
    group.bench_function("d_column_j100", |b| {
        b.iter(|| d_column(black_box(200), black_box(-100), black_box(0.25)).unwrap())
    });
    group.sample_size(20);
    group.bench_function("rotation_matrix_j50", |b| {
        b.iter(|| rotation_matrix(black_box(100), black_box(0.25)))
    });
    group.sample_size(10);
    group.bench_function("rotation_matrix_j100", |b| {
        b.iter(|| rotation_matrix(black_box(200), black_box(0.25)))
    });
    group.finish();
}

fn bench_operators(c: &mut Criterion) {
    let mut group = c.benchmark_group("operators");
    group.bench_function("assemble_h3_j50", |b| {
        let p = params(100);
        b.iter(|| assemble_h3(black_box(&p)))
    });
    group.sample_size(20);
    group.bench_function("dense_eigensolve_j50", |b| {
        let h3 = assemble_h3(&params(100));
        b.iter(|| dense_eigensolve(black_box(&h3)).unwrap())
    });
    group.bench_function("displacement_j50", |b| {
        let sector = FockSector::from_two_j(100);
        b.iter(|| displacement_matrix(black_box(sector), black_box(0.25)))
    });
    group.finish();
}

fn bench_dynamics(c: &mut Criterion) {
    let mut group = c.benchmark_group("dynamics");
    group.sample_size(20);
    group.bench_function("population_trajectory_j100_2000", |b| {
        let p = params(200);
        let psi0 = StateVector::basis_state(p.sector, 200).unwrap();
        let times: Vec<f64> = (0..2000).map(|i| i as f64 * 0.002).collect();
        b.iter(|| {
            population_trajectory(black_box(&p), black_box(&psi0), black_box(&times)).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_wigner, bench_operators, bench_dynamics);
criterion_main!(benches);
