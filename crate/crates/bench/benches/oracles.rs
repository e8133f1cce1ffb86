use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tropsing::rational::one;
use tropsing::*;
use tropsing_bench::*;

fn subdivisions(c: &mut Criterion) {
    let cfg = square3();
    let u = generic_heights(cfg.len());
    c.bench_function("regular_subdivision 3x3", |b| {
        b.iter(|| regular_subdivision(black_box(&cfg), black_box(&u)).unwrap())
    });
    c.bench_function("dual_curve 3x3", |b| {
        b.iter(|| dual_curve(black_box(&cfg), black_box(&u)).unwrap())
    });
    let ms = regular_subdivision(&cfg, &u).unwrap();
    c.bench_function("cone_info 3x3", |b| b.iter(|| cone_info(black_box(&cfg), black_box(&ms))));
}

fn matroids(c: &mut Criterion) {
    let cfg = square8();
    let a = coefficient_matrix(&cfg, &one(), &one()).unwrap();
    c.bench_function("gale_dual square8", |b| {
        b.iter(|| gale_dual(black_box(&a), None).unwrap())
    });
    let gd = gale_dual(&a, None).unwrap();
    let m = Matroid::of_gale_dual(&gd);
    c.bench_function("enumerate_flags square8", |b| {
        b.iter(|| m.enumerate_flags(16).unwrap())
    });
    let w = generic_heights(cfg.len());
    c.bench_function("bergman loop-free square8", |b| {
        b.iter(|| bergman_member_loopfree(black_box(&gd), black_box(&w)))
    });
    let oracle = CircuitOracle::new(&a);
    c.bench_function("bergman circuit oracle square8", |b| {
        b.iter(|| oracle.contains(black_box(&w)))
    });
}

fn singular(c: &mut Criterion) {
    let cfg = intro();
    let f = intro_polynomial();
    let u = neg_val_vector(&cfg, &f).unwrap();
    c.bench_function("classify intro", |b| {
        b.iter(|| classify_singularity(black_box(&cfg), black_box(&u)).unwrap())
    });
    let sq = square8();
    let a = coefficient_matrix(&sq, &one(), &one()).unwrap();
    let m = Matroid::of_gale_dual(&gale_dual(&a, None).unwrap());
    let flag = m.enumerate_flags(16).unwrap().remove(0);
    c.bench_function("sample_singular_lift square8", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            sample_singular_lift(&sq, &flag, None, seed).unwrap()
        })
    });
}

criterion_group!(benches, subdivisions, matroids, singular);
criterion_main!(benches);
