use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use doily_core::codes::{build_split_doily, heptagon_code, pentagon_split};
use doily_core::contextuality::{contextuality_degree, IncidenceSystem, Mode};
use doily_core::pauli::PauliOperator;
use doily_core::polar::{build_polar_space, doily_spreads, quadric_points};

fn polar_spaces(c: &mut Criterion) {
    c.bench_function("polar space W(5,2)", |b| {
        b.iter(|| build_polar_space(black_box(3)).unwrap())
    });
    c.bench_function("polar space W(7,2)", |b| {
        b.iter(|| build_polar_space(black_box(4)).unwrap())
    });
    c.bench_function("quadric Q+(7,2)", |b| b.iter(|| quadric_points(black_box(4)).unwrap()));
    c.bench_function("doily spreads", |b| b.iter(doily_spreads));
}

fn codes(c: &mut Criterion) {
    c.bench_function("heptagon group", |b| b.iter(heptagon_code));
}

fn contextuality(c: &mut Criterion) {
    let d = build_split_doily(&pentagon_split()).unwrap();
    let label = |m: usize| d.left_labels[d.points.iter().position(|&p| p == m).unwrap()];
    let contexts: Vec<Vec<PauliOperator>> = d.lines.iter().map(|l| l.elements.map(label).to_vec()).collect();
    let sys = IncidenceSystem::from_signed_contexts(&contexts).unwrap();
    c.bench_function("doily degree, exhaustive", |b| {
        b.iter(|| contextuality_degree(black_box(&sys), Mode::Exact).unwrap())
    });
}

criterion_group!(benches, polar_spaces, codes, contextuality);
criterion_main!(benches);
