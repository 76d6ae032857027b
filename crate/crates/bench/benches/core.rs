use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use vwlap_core::bounds::{cohom_dim_upper, BoundReport};
use vwlap_core::constructions::{cocktail_party, extremal_uniform, skeleton_simplex};
use vwlap_core::homology::betti_exact;
use vwlap_core::operators::full_laplacian;
use vwlap_core::spectra::{eigenvalues_symmetric, spectrum_of};
use vwlap_core::verify::run_suite;
use vwlap_core::weighted::seeded_weights;

fn assembly(c: &mut Criterion) {
    let mut g = c.benchmark_group("full_laplacian");
    for n in [6, 8, 10] {
        let w = seeded_weights(skeleton_simplex(n, 3).unwrap(), 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| b.iter(|| full_laplacian(black_box(w), 2)));
    }
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi");
    for n in [3, 4, 5] {
        let w = seeded_weights(cocktail_party(n).unwrap(), 2);
        let m = full_laplacian(&w, 1).unwrap().symmetrize().unwrap();
        g.bench_with_input(BenchmarkId::new("cp_k1", m.nrows()), &m, |b, m| b.iter(|| eigenvalues_symmetric(black_box(m))));
    }
    let e = extremal_uniform(2, 3, 2).unwrap();
    let m = full_laplacian(&e.weighted, 4).unwrap();
    g.bench_function("extremal_232_k4_blocks", |b| b.iter(|| spectrum_of(black_box(&m), 1e-8)));
    g.finish();
}

fn exact(c: &mut Criterion) {
    let x = skeleton_simplex(9, 3).unwrap();
    c.bench_function("betti_skeleton_9_3", |b| b.iter(|| betti_exact(black_box(&x))));
}

fn bounds(c: &mut Criterion) {
    let w = seeded_weights(cocktail_party(4).unwrap(), 3);
    c.bench_function("bound_report_cp4_k1", |b| b.iter(|| BoundReport::evaluate(black_box(&w), 1, None)));
    c.bench_function("cohom_dim_upper_cp4_k2", |b| b.iter(|| cohom_dim_upper(black_box(&w), 2)));
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("duality_20x7", |b| b.iter(|| run_suite("duality", 20, 7)));
    g.bench_function("hodge_20x7", |b| b.iter(|| run_suite("hodge", 20, 7)));
    g.finish();
}

criterion_group!(benches, assembly, jacobi, exact, bounds, suites);
criterion_main!(benches);
