use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pmkit_core::decomposition::{decompose_via_minors, essential_bound};
use pmkit_core::search::{search_excluded, SearchOptions};
use pmkit_core::uniform::{has_uniform_minor, in_class};
use pmkit_core::{ClassSpec, GroundSet, MultisetRankGrid, RankTable};

fn three_element(k: i64) -> RankTable {
    RankTable::from_fn(GroundSet::standard(3), k, |s| {
        [0, k - 1, 2 * k - 3, 3 * k - 6][s.len()]
    })
    .unwrap()
}

fn grid(c: &mut Criterion) {
    let t = three_element(8);
    c.bench_function("grid/eager 3 elements k=8", |b| {
        b.iter(|| MultisetRankGrid::eager(black_box(&t)))
    });
}

fn detection(c: &mut Criterion) {
    let class = ClassSpec::new(3, 7, 8).unwrap();
    let ex = RankTable::doubleton(8, 6, 6, 9).unwrap();
    let member = RankTable::doubleton(8, 7, 8, 14).unwrap();
    c.bench_function("detect/U37 in (6,6,9)", |b| {
        b.iter(|| has_uniform_minor(black_box(&ex), 3, 7))
    });
    c.bench_function("detect/in_class (7,8,14)", |b| {
        b.iter(|| in_class(black_box(&member), &class).unwrap())
    });
    let t = three_element(8);
    c.bench_function("detect/in_class 3 elements k=8", |b| {
        b.iter(|| in_class(black_box(&t), &class).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let t = three_element(8);
    c.bench_function("decompose/essential bound", |b| {
        b.iter(|| essential_bound(black_box(&t)))
    });
    c.bench_function("decompose/via minors m=2", |b| {
        b.iter(|| decompose_via_minors(black_box(&t), 2))
    });
}

fn search(c: &mut Criterion) {
    let class = ClassSpec::new(2, 4, 4).unwrap();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for max_elements in [2, 3] {
        let opts = SearchOptions {
            max_elements,
            ..SearchOptions::default()
        };
        g.bench_function(format!("(2,4,4) up to {max_elements}"), |b| {
            b.iter(|| search_excluded(&class, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, grid, detection, decomposition, search);
criterion_main!(benches);
