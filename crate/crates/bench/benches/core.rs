use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zerotemp_core::planar::{occupancy, sample_mosaic, MosaicShape};
use zerotemp_core::thermo::{tower_potential, transfer_pressure, TransferOptions};
use zerotemp_core::tower::{
    build_tower, forbidden_oracle, forbidden_words, BuildLimits, TowerParams, WordTower,
};
use zerotemp_core::turing::{
    builtin, check_diagram, compile_tileset, head_window, space_time_diagram,
};

fn toy(n: Vec<u64>, np: Vec<u64>) -> WordTower {
    build_tower(&TowerParams::toy(n, np).unwrap(), BuildLimits::default()).unwrap()
}

fn forbidden(c: &mut Criterion) {
    let t = toy(vec![4, 4, 4], vec![4, 4, 4]);
    let mut g = c.benchmark_group("forbidden");
    for n in [6, 9, 12] {
        g.bench_with_input(BenchmarkId::new("junctions", n), &n, |b, &n| {
            b.iter(|| forbidden_words(&t, black_box(n)))
        });
    }
    g.sample_size(10);
    g.bench_function("oracle/9", |b| {
        b.iter(|| forbidden_oracle(&t, black_box(9)))
    });
    g.finish();
}

fn pressure(c: &mut Criterion) {
    let t = toy(vec![4, 4, 4], vec![4, 4, 4]);
    let opts = TransferOptions::default();
    let mut g = c.benchmark_group("pressure");
    // 3^4 states take the dense path, 3^7 the power iteration
    for m in [5, 8] {
        let spec = tower_potential(&t, m, opts).unwrap();
        g.bench_with_input(BenchmarkId::new("tower", m), &spec, |b, spec| {
            b.iter(|| transfer_pressure(spec, black_box(10.0), opts))
        });
    }
    g.finish();
}

fn planar(c: &mut Criterion) {
    let t = toy(vec![4, 8], vec![4, 4]);
    let p = sample_mosaic(
        &t,
        2,
        128,
        MosaicShape::Blocks,
        &mut ChaCha8Rng::seed_from_u64(0),
    )
    .unwrap();
    c.bench_function("occupancy/128", |b| {
        b.iter(|| occupancy(black_box(&p), &t, 2))
    });
}

fn tiles(c: &mut Criterion) {
    let m = builtin("anbn_enum").unwrap();
    let tiles = compile_tileset(&m);
    let d = space_time_diagram(&m, &[], 400, head_window(&m, &[], 400)).unwrap();
    c.bench_function("check_diagram/400", |b| {
        b.iter(|| check_diagram(&tiles, black_box(&d)))
    });
}

criterion_group!(benches, forbidden, pressure, planar, tiles);
criterion_main!(benches);
