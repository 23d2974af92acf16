use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use forge_core::algebra::{parse_infix, vars, OpSymbol};
use forge_core::consequence::{enumerate_basis, sets_equivalent};
use forge_core::fixtures;
use forge_core::free_leibniz::expand_binary_tree;
use forge_core::kp::{kp_apply, VarietyPresentation};
use forge_core::rightcomm::{permuted_associator_expand, JordanReducer};
use forge_core::systems::{build_envelope, check_leibniz, check_lts, known_system, lts_equations, search_fp};

fn algebra(c: &mut Criterion) {
    let lie = VarietyPresentation::new(fixtures::named("lie_triple", &["L1", "L2", "L3"]));
    c.bench_function("kp/lie-triple", |b| b.iter(|| kp_apply(black_box(&lie)).unwrap()));
    let lt = fixtures::lt();
    c.bench_function("basis/ternary-degree-5", |b| b.iter(|| enumerate_basis(std::slice::from_ref(&lt), 5, &vars("abcde")).unwrap()));
    let p = parse_infix("((a(bc))(de))f", &OpSymbol::new("lb", 2)).unwrap();
    c.bench_function("free/expand-degree-6", |b| b.iter(|| expand_binary_tree(black_box(&p)).unwrap()));
}

fn spans(c: &mut Criterion) {
    let mut g = c.benchmark_group("span");
    g.sample_size(10);
    let (pair, four) = (fixtures::lts_pair(), fixtures::lts_four());
    g.bench_function("lts-equivalence", |b| b.iter(|| sets_equivalent(&pair, &four, 5, &vars("abcde")).unwrap()));
    let e = permuted_associator_expand(&fixtures::lts_b()).unwrap();
    g.bench_function("jordan-reduce", |b| {
        b.iter(|| {
            let r = JordanReducer::new(&[]).unwrap();
            r.reduces(black_box(&e)).unwrap()
        })
    });
    g.finish();
}

fn systems(c: &mut Criterion) {
    let t = known_system("system2").unwrap();
    c.bench_function("systems/check-lts", |b| b.iter(|| check_lts(black_box(&t))));
    let a = build_envelope(&t);
    c.bench_function("systems/envelope-leibniz", |b| b.iter(|| check_leibniz(black_box(&a))));
    let eqs = lts_equations(2);
    let mask: Vec<String> = ["alpha122", "alpha222", "beta111"].map(String::from).to_vec();
    c.bench_function("systems/search-f5", |b| b.iter(|| search_fp(&eqs, 5, &mask).unwrap()));
}

criterion_group!(benches, algebra, spans, systems);
criterion_main!(benches);
