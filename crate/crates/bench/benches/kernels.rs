use std::hint::black_box;

use cascadelab::cascades::{
    build_window, chromatic_probe, clique_probe, verify_rainbow, ChromaticMode,
};
use cascadelab::decorations::{brute_force_edge, kalkowski_total};
use cascadelab::multiplicative::{balance_profile, build_coloring, SignRule};
use cascadelab::rejmer::rejmer_run;
use cascadelab::seeds::enumerate_seeds;
use cascadelab::sieve::{liouville_segmented, SpfTable};
use cascadelab::DEFAULT_GRID_BUDGET;
use cascadelab_bench::{circulant, ladder};
use criterion::{criterion_group, criterion_main, Criterion};

fn sieves(c: &mut Criterion) {
    c.bench_function("spf_table_1e6", |b| {
        b.iter(|| SpfTable::new(black_box(1_000_000)))
    });
    c.bench_function("liouville_segmented_1e6", |b| {
        b.iter(|| liouville_segmented(black_box(1_000_000)))
    });
    c.bench_function("liouville_profile_1e6", |b| {
        b.iter(|| {
            let f = build_coloring(&SignRule::Liouville, 1_000_000).unwrap();
            balance_profile(&f, 1_000_000).unwrap()
        })
    });
}

fn decorations(c: &mut Criterion) {
    let g = circulant(200, &[1, 3, 7]);
    c.bench_function("kalkowski_circulant_200", |b| {
        b.iter(|| kalkowski_total(black_box(&g), None).unwrap())
    });
    let small = ladder(4);
    c.bench_function("brute_edge_ladder_4", |b| {
        b.iter(|| {
            brute_force_edge(black_box(&small), &[1.0, 2.0, 3.0], DEFAULT_GRID_BUDGET).unwrap()
        })
    });
}

fn sequences(c: &mut Criterion) {
    c.bench_function("rejmer_1e5", |b| {
        b.iter(|| rejmer_run(black_box(100_000)).unwrap())
    });
    c.bench_function("seeds_enum_40", |b| {
        b.iter(|| enumerate_seeds(black_box(40), 30).unwrap())
    });
    c.bench_function("rainbow_p13_1e5", |b| {
        b.iter(|| verify_rainbow(13, black_box(100_000)).unwrap())
    });
}

fn arithmetic_graphs(c: &mut Criterion) {
    let w = build_window(6, 1, 100).unwrap();
    c.bench_function("clique_k6_no7", |b| {
        b.iter(|| clique_probe(black_box(&w), 7))
    });
    let small = build_window(6, 1, 60).unwrap();
    c.bench_function("chromatic_exact_k6_60", |b| {
        b.iter(|| chromatic_probe(black_box(&small), ChromaticMode::Exact, 60, 50_000_000).unwrap())
    });
}

criterion_group!(benches, sieves, decorations, sequences, arithmetic_graphs);
criterion_main!(benches);
