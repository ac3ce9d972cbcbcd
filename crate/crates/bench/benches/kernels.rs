use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use coxalt_core::cohomology::{cohomology_cocycle, CocycleConfig};
use coxalt_core::complex::{build_coxeter_complex, DEFAULT_SIMPLEX_CAP};
use coxalt_core::coxeter::parse_graph;
use coxalt_core::group::{alternating_subgroup, enumerate_group, SubgroupHandle};
use coxalt_core::linalg::{cochain_complex, invariant_cochain_complex, rank_fp};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for name in ["B4", "F4", "H4"] {
        let m = parse_graph(name).unwrap();
        group.bench_function(name, |b| b.iter(|| enumerate_group(black_box(&m), 60_000).unwrap()));
    }
    group.finish();
}

fn complexes(c: &mut Criterion) {
    let m = parse_graph("F4").unwrap();
    let g = Arc::new(enumerate_group(&m, 60_000).unwrap());
    c.bench_function("complex/F4", |b| {
        b.iter(|| build_coxeter_complex(black_box(&g), DEFAULT_SIMPLEX_CAP, None).unwrap())
    });
    let x = build_coxeter_complex(&g, DEFAULT_SIMPLEX_CAP, None).unwrap();
    let alt = alternating_subgroup(&g);
    c.bench_function("invariant-cochains/F4", |b| {
        b.iter(|| invariant_cochain_complex(&x, &g, &alt, 5, None).unwrap().betti())
    });
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for name in ["F4", "H4"] {
        let m = parse_graph(name).unwrap();
        let g = enumerate_group(&m, 60_000).unwrap();
        let x = build_coxeter_complex(&g, DEFAULT_SIMPLEX_CAP, None).unwrap();
        let cx = cochain_complex(&x, 7).unwrap();
        let top = cx.differentials().last().unwrap().clone();
        group.bench_function(format!("top-coboundary/{name}"), |b| b.iter(|| rank_fp(black_box(&top))));
    }
    group.finish();
}

fn cocycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle");
    group.sample_size(10);
    let g = Arc::new(enumerate_group(&parse_graph("A4").unwrap(), 1000).unwrap());
    let alt = alternating_subgroup(&g);
    let whole = SubgroupHandle::whole(&g);
    let cfg = CocycleConfig::default();
    group.bench_function("A_5/p=5/k<=2", |b| b.iter(|| cohomology_cocycle(&alt, 5, None, 2, &cfg).unwrap()));
    group.bench_function("S_5/p=5/k<=2", |b| b.iter(|| cohomology_cocycle(&whole, 5, None, 2, &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, enumeration, complexes, ranks, cocycles);
criterion_main!(benches);
