//! Benchmarks over the shipped fixtures: jet enumeration, the two coefficient
//! routes, blow-up invariance, and the logarithmic-derivative series.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num::BigInt;
use snczeta_bench::fixture;
use snczeta_core::jets::{count_jets, SparsePoly, DEFAULT_BUDGET};
use snczeta_core::model::ComponentId;
use snczeta_core::monodromy::{log_derivative_coefficients, monodromy_zeta};
use snczeta_core::series::{
    blowup_invariance_check, direct_coefficient, series_coefficient, volume_series,
};

fn jet_counting(c: &mut Criterion) {
    let f = SparsePoly::new(2, [(vec![1, 1], BigInt::from(1))]).unwrap();
    c.bench_function("count_jets xy d=3 q=3", |b| {
        b.iter(|| count_jets(black_box(&f), 3, 3, DEFAULT_BUDGET).unwrap())
    });
}

fn coefficient_routes(c: &mut Criterion) {
    let model = fixture("cusp").derive_mu().unwrap();
    let series = volume_series(&model).unwrap();
    c.bench_function("series_coefficient cusp d=60", |b| {
        b.iter(|| series_coefficient(black_box(&series), 60))
    });
    c.bench_function("direct_coefficient cusp d=60", |b| {
        b.iter(|| direct_coefficient(black_box(&model), 60).unwrap())
    });
}

fn blowup_check(c: &mut Criterion) {
    let model = fixture("cusp").derive_mu().unwrap();
    let center: std::collections::BTreeSet<ComponentId> =
        [ComponentId::new("E1"), ComponentId::new("E3")].into_iter().collect();
    c.bench_function("blowup_invariance_check cusp {E1,E3} d<=12", |b| {
        b.iter(|| blowup_invariance_check(black_box(&model), &center, 12).unwrap())
    });
}

fn log_derivative(c: &mut Criterion) {
    let model = fixture("cusp");
    let zeta = monodromy_zeta(&model, "origin").unwrap();
    c.bench_function("log_derivative_coefficients cusp d<=48", |b| {
        b.iter(|| log_derivative_coefficients(black_box(&zeta), 48))
    });
}

criterion_group!(benches, jet_counting, coefficient_routes, blowup_check, log_derivative);
criterion_main!(benches);
