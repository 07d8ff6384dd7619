//! Sequential versus rayon execution for the sampling-heavy routines.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sicwitness::exec::Execution;
use sicwitness::povm::build_sic;
use sicwitness::rotation::AxisRotation;
use sicwitness::witness::{
    ball_check_with, build_witness, scan_bell_diagonal_with, PositiveMapSpec, SeeSaw,
};

const POLICIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn ball(c: &mut Criterion) {
    let spec = PositiveMapSpec::new(build_sic(3).unwrap(), AxisRotation::random(3, 1)).unwrap();
    let mut group = c.benchmark_group("ball_check");
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::new(name, 2000), &exec, |b, &exec| {
            b.iter(|| ball_check_with(black_box(&spec), 2000, 7, exec))
        });
    }
    group.finish();
}

fn seesaw(c: &mut Criterion) {
    let w = build_witness(&build_sic(3).unwrap(), &AxisRotation::random(3, 2)).unwrap();
    let mut group = c.benchmark_group("seesaw");
    group.sample_size(20);
    for (name, exec) in POLICIES {
        let cfg = SeeSaw {
            exec,
            ..SeeSaw::with_restarts(100)
        };
        group.bench_function(BenchmarkId::new(name, 100), |b| {
            b.iter(|| cfg.run(black_box(&w), 3))
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let povm = build_sic(3).unwrap();
    let rot = AxisRotation::random(3, 3);
    let grid: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
    let mut group = c.benchmark_group("bell_scan");
    group.sample_size(20);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::new(name, grid.len()), &exec, |b, &exec| {
            b.iter(|| scan_bell_diagonal_with(&povm, &rot, black_box(&grid), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ball, seesaw, scan);
criterion_main!(benches);
