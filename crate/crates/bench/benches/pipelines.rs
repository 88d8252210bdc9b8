use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use strata_bench::{categories, matchings};
use strata_core::exitpath::cover;
use strata_core::fixtures;
use strata_core::morse::{classify_flow, flow_category, morse_complex};
use strata_core::simpset::homology;
use strata_core::stellar::{roundtrip, unstable_stratification};
use strata_core::strat::implications_harness;
use strata_core::AcycCat;

fn classifying_spaces(c: &mut Criterion) {
    let b4 = AcycCat::ordinal(4);
    c.bench_function("nerve B[4]", |b| b.iter(|| black_box(&b4).classifying_space()));
    let x = b4.classifying_space().0;
    c.bench_function("homology B[4]", |b| b.iter(|| homology(black_box(&x))));
    let fig1 = fixtures::figure1();
    c.bench_function("unstable stratification figure1", |b| b.iter(|| unstable_stratification(black_box(&fig1))));
}

fn round_trips(c: &mut Criterion) {
    let cats = categories(20, 1);
    c.bench_function("roundtrip 20 random categories", |b| {
        b.iter(|| cats.iter().all(|cat| roundtrip(cat).map(|r| r.pass()).unwrap_or(false)))
    });
    let fig1 = fixtures::figure1();
    c.bench_function("chart cover figure1", |b| b.iter(|| cover(black_box(&fig1)).unwrap()));
}

fn morse(c: &mut Criterion) {
    let work = matchings(20, 50, 2);
    c.bench_function("morse complex 20 random matchings", |b| {
        b.iter(|| work.iter().map(|(cx, m)| morse_complex(cx, m).unwrap().complex.ranks.len()).sum::<usize>())
    });
    let cx = fixtures::tetrahedron_boundary();
    let m = fixtures::height_matching(&cx);
    let homs = fixtures::hexagon_flow_homs();
    c.bench_function("classify hexagon flow", |b| {
        b.iter(|| classify_flow(&flow_category(&cx, &m, Some(&homs)).unwrap()).unwrap().1.strata)
    });
}

fn harness(c: &mut Criterion) {
    c.bench_function("implications 100 samples", |b| b.iter(|| implications_harness(100, black_box(3))));
}

criterion_group!(benches, classifying_spaces, round_trips, morse, harness);
criterion_main!(benches);
