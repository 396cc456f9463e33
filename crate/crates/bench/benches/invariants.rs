use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use stabletype::decomposition::mw_decompose;
use stabletype::equivalence::stably_equivalent;
use stabletype::hom::{enumerate_homs, rep_classes};
use stabletype::lattice::all_subgroups;
use stabletype::out::automorphism_group;
use stabletype_bench::{group, minami_pair};

fn homs(c: &mut Criterion) {
    let q8 = group("Q8");
    let s4 = group("S4");
    let d6c4 = group("D6 x C4");
    c.bench_function("hom Q8 -> S4", |b| {
        b.iter(|| enumerate_homs(black_box(&q8), black_box(&s4)).unwrap())
    });
    c.bench_function("rep classes C4 x C2 -> D6 x C4", |b| {
        let q = group("C4 x C2");
        b.iter(|| rep_classes(black_box(&q), black_box(&d6c4), 2).unwrap())
    });
    c.bench_function("aut E2^3", |b| {
        let e = group("E2^3");
        b.iter(|| automorphism_group(black_box(&e)).unwrap())
    });
}

fn lattice(c: &mut Criterion) {
    let s4 = group("S4");
    c.bench_function("all subgroups S4", |b| {
        b.iter(|| all_subgroups(black_box(&s4)).unwrap())
    });
}

fn decide(c: &mut Criterion) {
    let (a, b) = minami_pair();
    let mut g = c.benchmark_group("minami pair");
    for p in [2u64, 3] {
        g.bench_function(format!("stably equivalent p={p}"), |bench| {
            bench.iter(|| stably_equivalent(black_box(&a), black_box(&b), p).unwrap())
        });
    }
    g.finish();
}

fn decompose(c: &mut Criterion) {
    let s4 = group("S4");
    let (a, _) = minami_pair();
    c.bench_function("mw S4 p=2", |b| {
        b.iter(|| mw_decompose(black_box(&s4), 2).unwrap())
    });
    c.bench_function("mw Q12 x C2 p=2", |b| {
        b.iter(|| mw_decompose(black_box(&a), 2).unwrap())
    });
}

criterion_group!(benches, homs, lattice, decide, decompose);
criterion_main!(benches);
