use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use zariski_core::afield::{Field, Quad};
use zariski_core::fpgroup::{abelianization, nonabelian_certificate, prop1_presentation};
use zariski_core::ideal::{groebner_basis, MonomialOrder};
use zariski_core::pencil::{check_condition_1, make_pencil};
use zariski_core::plane::singular_points;
use zariski_core::poly::{vars_of, MultiPoly};
use zariski_core::series::{build_cpqk, build_series1, quartic_f0};

fn groebner(c: &mut Criterion) {
    let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::rationals());
    // nodal cubic and its partials
    let f = &(&(&g[0].pow(2) * &g[2]) - &(&g[1].pow(2) * &g[2])) - &g[0].pow(3);
    let mut sys = vec![f.clone()];
    sys.extend(f.gradient());
    c.bench_function("groebner/nodal_cubic_jacobian", |b| {
        b.iter(|| groebner_basis(black_box(&sys), MonomialOrder::Grevlex).unwrap())
    });
    let two = Quad::from_int(2);
    let h = &(&g[0].pow(4) + &g[1].pow(4).scale(&two)) - &(&(&g[0] * &g[1]) * &g[2].pow(2));
    c.bench_function("singular_points/quartic", |b| b.iter(|| singular_points(black_box(&h), &Field::rationals()).unwrap()));
}

fn pencils(c: &mut Criterion) {
    let pencil = make_pencil(&quartic_f0()).unwrap();
    c.bench_function("pencil/quartic_condition_1", |b| b.iter(|| check_condition_1(black_box(&pencil)).unwrap()));
}

fn curves(c: &mut Criterion) {
    let mut group = c.benchmark_group("curves");
    group.sample_size(10);
    group.bench_function("cpqk_3_2_1", |b| b.iter(|| build_cpqk(3, 2, 1, black_box(1)).unwrap()));
    group.bench_function("series1_q5", |b| b.iter(|| build_series1(5, None, black_box(7)).unwrap()));
    group.finish();
}

fn groups(c: &mut Criterion) {
    let pres = prop1_presentation(3, 5, 1).unwrap();
    c.bench_function("group/abelianization_3_5_1", |b| b.iter(|| abelianization(black_box(&pres))));
    c.bench_function("group/nonabelian_3_5_1", |b| b.iter(|| nonabelian_certificate(black_box(&pres), 8)));
}

criterion_group!(benches, groebner, pencils, curves, groups);
criterion_main!(benches);
