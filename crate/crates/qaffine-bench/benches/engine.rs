use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use f256::f256;
use qaffine::fundrep::sample_points;
use qaffine::gln::{build_gln_rep, check_gln_relations, gln_yangian_limit};
use qaffine::limits::yangian::{yangian_quotient_check, QuotientKind};
use qaffine::numerics::{cx, real, SampleSeed};
use qaffine::relations::evaluate_all;
use qaffine::rmatrix::ybe_residual;
use qaffine::{build_rep, catalog_qhat, solve_r, Tolerance};
use qaffine_bench::{frame, sampled_reps};

const H_SEQ: [f64; 3] = [4e-4, 2e-4, 1e-4];

fn representation(c: &mut Criterion) {
    let (params, pts) = sample_points::<f64>(SampleSeed(1), 0, 1, cx(1.2, 0.3), cx(0.7, -0.4)).unwrap();
    c.bench_function("build_rep_f64", |b| b.iter(|| build_rep(black_box(&pts[0]), &params).unwrap()));
    let rep = build_rep(&pts[0], &params).unwrap();
    let catalog = catalog_qhat();
    c.bench_function("relation_catalog_f64", |b| {
        b.iter(|| evaluate_all(black_box(&catalog), &params, &rep, Tolerance::standard(), "bench").unwrap())
    });
}

fn rmatrix(c: &mut Criterion) {
    let tol = Tolerance::standard();
    let reps = sampled_reps::<f64>(2, 3);
    c.bench_function("solve_r_f64", |b| b.iter(|| solve_r(black_box(&reps[0]), &reps[1], tol).unwrap()));
    c.bench_function("ybe_residual_f64", |b| b.iter(|| ybe_residual(&reps[0], &reps[1], &reps[2], tol).unwrap()));
}

fn limits(c: &mut Criterion) {
    let f = frame::<f64>();
    c.bench_function("yangian_quotient_f64", |b| b.iter(|| yangian_quotient_check(QuotientKind::AffineE, black_box(&f), &H_SEQ).unwrap()));
    let fe = frame::<f256>();
    let mut g = c.benchmark_group("extended");
    g.sample_size(10);
    g.bench_function("yangian_quotient_f256", |b| b.iter(|| yangian_quotient_check(QuotientKind::AffineE, black_box(&fe), &H_SEQ).unwrap()));
    g.finish();
}

fn gln(c: &mut Criterion) {
    for n in [3usize, 4, 6] {
        let q = cx(1.3, 0.4);
        let rep = build_gln_rep::<f64>(n, q, cx(0.7, -0.5)).unwrap();
        c.bench_function(&format!("gln_relations_n{n}"), |b| b.iter(|| check_gln_relations(black_box(&rep.gens), q, 1e-12, "bench").unwrap()));
        c.bench_function(&format!("gln_limit_n{n}"), |b| b.iter(|| gln_yangian_limit::<f64>(n, real(0.8), real(-0.5), &H_SEQ).unwrap()));
    }
}

criterion_group!(benches, representation, rmatrix, limits, gln);
criterion_main!(benches);
