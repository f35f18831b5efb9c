use criterion::{black_box, criterion_group, criterion_main, Criterion};

use nilflow::exterior::{d, wedge, Form};
use nilflow::gauduchon::{connection_one_forms_tau, curvature, tables, trace_wedge};
use nilflow::lie::real_structure_constants;
use nilflow::sample;
use nilflow_bench::{generic_adapted, generic_params};

fn bench_exterior(c: &mut Criterion) {
    let p = generic_params();
    let a = generic_adapted();
    let sc = real_structure_constants(&p, &a).unwrap();
    let mut rng = sample::rng(3);
    let f2 = sample::form_of_degree(&mut rng, 2);
    let f3 = sample::form_of_degree(&mut rng, 3);

    c.bench_function("wedge 2-form with 3-form", |b| {
        b.iter(|| wedge(black_box(&f2), black_box(&f3)))
    });
    c.bench_function("differential of a 3-form", |b| {
        b.iter(|| d(black_box(&f3), &sc))
    });
}

fn bench_curvature(c: &mut Criterion) {
    let p = generic_params();
    let a = generic_adapted();
    let sc = real_structure_constants(&p, &a).unwrap();
    let tau = -0.7;

    c.bench_function("connection forms (first principles)", |b| {
        b.iter(|| connection_one_forms_tau(black_box(&sc), tau))
    });
    let sigma = connection_one_forms_tau(&sc, tau);
    c.bench_function("curvature from connection forms", |b| {
        b.iter(|| curvature(black_box(&sigma), &sc))
    });
    c.bench_function("curvature (closed-form table)", |b| {
        b.iter(|| tables::closed_form_curvature_tau(&p, &a, tau))
    });
    let omega = curvature(&sigma, &sc);
    c.bench_function("wedge trace of curvature", |b| {
        b.iter(|| trace_wedge(black_box(&omega)))
    });
    c.bench_function("trace (closed-form)", |b| {
        b.iter(|| tables::closed_form_trace_tau(&p, &a, tau))
    });
}

fn bench_pq(c: &mut Criterion) {
    let p = generic_params();
    let m = nilflow::hermitian::MetricCoeffs::diagonal(1.3, 0.8, 1.5).unwrap();
    let (frame, _) = nilflow::hermitian::adapted_basis(&p, &m).unwrap();
    let mut rng = sample::rng(4);
    let f = sample::form_of_degree(&mut rng, 2);
    c.bench_function("(p,q) decomposition of a 2-form", |b| {
        b.iter(|| nilflow::exterior::decompose_pq(black_box(&f), &frame))
    });
    let _ = Form::zero();
}

criterion_group!(benches, bench_exterior, bench_curvature, bench_pq);
criterion_main!(benches);
