use std::hint::black_box;

use cremona::cremona::{maximal_minors_with, standard_matrix};
use cremona::exact::int;
use cremona::fan::{common_refinement_with, covering_check_with};
use cremona::mixed_volume::{
    mixed_coefficient_with, multidegree_sequence, MixedVolumeQuery, MultidegreeMethod,
};
use cremona::polytope::VPolytope;
use cremona::verify::{verify, VerifyOptions};
use cremona::{DeskGuards, Execution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn lattice_bodies() -> Vec<VPolytope> {
    let shapes: [&[[i64; 3]]; 3] = [
        &[[0, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
        &[[0, 0, 0], [1, 0, 0], [0, 2, 0], [0, 0, 1], [-1, 1, 0]],
        &[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 2], [1, -1, 1]],
    ];
    shapes
        .iter()
        .map(|pts| {
            VPolytope::from_points(
                3,
                pts.iter()
                    .map(|p| p.iter().map(|&x| int(x)).collect())
                    .collect(),
            )
            .unwrap()
        })
        .collect()
}

fn mixed_volume(c: &mut Criterion) {
    let mut group = c.benchmark_group("mixed_volume");
    let bodies = lattice_bodies();
    let query = MixedVolumeQuery::new(bodies.iter().collect()).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("general_3d", name), |b| {
            b.iter(|| mixed_coefficient_with(black_box(&query), exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("multidegrees_n8", name), |b| {
            b.iter(|| {
                multidegree_sequence(black_box(8), MultidegreeMethod::MixedVolume, exec).unwrap()
            })
        });
    }
    group.finish();
}

fn fans(c: &mut Criterion) {
    let mut group = c.benchmark_group("fan");
    group.sample_size(10);
    let guards = DeskGuards::default();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("refinement_n4", name), |b| {
            b.iter(|| common_refinement_with(black_box(4), exec, &guards).unwrap())
        });
        group.bench_function(BenchmarkId::new("covering_n3", name), |b| {
            b.iter(|| covering_check_with(black_box(3), exec, &guards).unwrap())
        });
    }
    group.finish();
}

fn minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("minors");
    let m = standard_matrix(6).unwrap();
    let guards = DeskGuards::default();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("standard_n6", name), |b| {
            b.iter(|| maximal_minors_with(black_box(&m), exec, &guards).unwrap())
        });
    }
    group.finish();
}

fn verify_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in MODES {
        let options = VerifyOptions {
            execution: exec,
            ..VerifyOptions::new(4)
        };
        group.bench_function(BenchmarkId::new("max_n4", name), |b| {
            b.iter(|| verify(black_box(&options)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, mixed_volume, fans, minors, verify_suite);
criterion_main!(benches);
