use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use desitter_bench::{dense, SAMPLE_POINT};
use desitter_core::algebra;
use desitter_core::clifford::Signature;
use desitter_core::dynamics::{self, CurveState, IntegratorConfig};
use desitter_core::komar::{self, QuadratureSpec, SpacetimeModel, Surface};
use desitter_core::DeSitter;

fn clifford(c: &mut Criterion) {
    for (name, sig) in [("4", Signature::lorentz4()), ("5", Signature::lorentz5())] {
        let a = dense(&sig, 0.7);
        let b = dense(&sig, 1.3);
        c.bench_function(&format!("gp_dense_{name}d"), |bn| bn.iter(|| black_box(&a).gp(black_box(&b)).unwrap()));
        c.bench_function(&format!("hodge_dense_{name}d"), |bn| bn.iter(|| black_box(&a).hodge()));
    }
}

fn geometry(c: &mut Criterion) {
    let ds = DeSitter::new(1.0).unwrap();
    let chart = ds.chart();
    c.bench_function("christoffel_analytic", |b| b.iter(|| chart.christoffel(black_box(&SAMPLE_POINT)).unwrap()));
    c.bench_function("geometry_at_point", |b| b.iter(|| chart.geometry(black_box(&SAMPLE_POINT)).unwrap()));
    c.bench_function("killing_det", |b| b.iter(|| ds.killing_det(black_box(&SAMPLE_POINT))));
}

fn dynamics_and_komar(c: &mut Criterion) {
    let ds = DeSitter::new(1.0).unwrap();
    let s0 = CurveState::new([0.0; 4], [1.0, 0.0, 0.0, 0.0]);
    let cfg = IntegratorConfig::new(1e-2, 1.0);
    c.bench_function("geodesic_100_steps", |b| b.iter(|| dynamics::desitter_geodesic(&ds, &s0, &cfg).unwrap()));
    let model = SpacetimeModel::schwarzschild(1.0);
    let quad = QuadratureSpec::new(16).unwrap();
    let sphere = Surface::SchwarzschildSphere { t: 0.0, r: 10.0 };
    c.bench_function("komar_sphere_grid16", |b| b.iter(|| komar::komar_surface_energy(&model, &sphere, quad).unwrap()));
}

fn exact_algebra(c: &mut Criterion) {
    c.bench_function("commutator_table", |b| b.iter(algebra::commutator_table));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = clifford, geometry, dynamics_and_komar, exact_algebra
}
criterion_main!(benches);
