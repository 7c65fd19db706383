use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use trigmie::mie::{cross_sections, HomogeneousSphere, LayeredSphere, Sphere};
use trigmie::trig::{approx_cross_section, constant_optical_path_sweep};
use trigmie::uncertainty::{
    expected_cross_section, grid_for, Evaluator, ForwardModel, Integrand, ParametricDistribution,
};
use trigmie::Execution;

fn point_evaluators(c: &mut Criterion) {
    let spheres: [(&str, Sphere); 2] = [
        ("homogeneous", HomogeneousSphere::new(15.0, 1.5).unwrap().into()),
        ("layered", LayeredSphere::new(50.0, 1.33, 70.0, 1.51).unwrap().into()),
    ];
    let mut group = c.benchmark_group("cross_section");
    for (name, s) in &spheres {
        group.bench_with_input(BenchmarkId::new("exact", name), s, |b, s| {
            b.iter(|| cross_sections(black_box(s), 1.0, 3).unwrap().c_sca)
        });
        group.bench_with_input(BenchmarkId::new("approx", name), s, |b, s| {
            b.iter(|| approx_cross_section(black_box(s), 1.0, 3).unwrap().c_sca)
        });
    }
    group.finish();
}

fn integration(c: &mut Criterion) {
    let d = ParametricDistribution::uniform((10.0, 20.0), (1.2, 1.8)).unwrap();
    let grid = grid_for(&d, 60, 60).unwrap();
    let mut group = c.benchmark_group("expected_cross_section_60x60");
    group.sample_size(20);
    for evaluator in [Evaluator::Exact, Evaluator::Approx] {
        let f = Integrand::new(ForwardModel::Homogeneous, evaluator, 1.0, 3);
        for (policy, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_function(BenchmarkId::new(evaluator.name(), policy), |b| {
                b.iter(|| expected_cross_section(&d, &grid, &f, exec).unwrap().value)
            });
        }
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("constant_path_sweep_10k");
    for (policy, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(policy, |b| {
            b.iter(|| constant_optical_path_sweep(20.0, (5.0, 20.0), 1, 10_000, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, point_evaluators, integration, sweep);
criterion_main!(benches);
