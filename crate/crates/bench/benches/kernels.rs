use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use uwrt_bench::bench_roots;
use uwrt_core::frobenius::qth_root;
use uwrt_core::gauss::{gauss_brute, gauss_closed};
use uwrt_core::habiro::q_eval_qbk;
use uwrt_core::wrt::{lens_tau_prime_closed, Evaluator, LensPiece};

fn gauss(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss");
    for r in [12u64, 40] {
        group.bench_with_input(BenchmarkId::new("closed", r), &r, |b, &r| b.iter(|| gauss_closed(black_box(r), 5, 3)));
        group.bench_with_input(BenchmarkId::new("brute", r), &r, |b, &r| b.iter(|| gauss_brute(black_box(r), 5, 3)));
    }
    group.finish();
}

fn lens(c: &mut Criterion) {
    let mut group = c.benchmark_group("lens");
    for xi in bench_roots() {
        let id = format!("{}_{}", xi.theory, xi.r);
        group.bench_function(BenchmarkId::new("closed", &id), |b| b.iter(|| lens_tau_prime_closed(9, 2, 1, black_box(&xi))));
        group.bench_function(BenchmarkId::new("state_sum", &id), |b| {
            b.iter(|| Evaluator::new(&xi).unwrap().tau_lens(black_box(&LensPiece::new(9, 2, 1).unwrap())))
        });
    }
    group.finish();
}

fn habiro(c: &mut Criterion) {
    let xi = bench_roots()[1];
    c.bench_function("qbk_b3_k2", |b| b.iter(|| q_eval_qbk(3, 2, black_box(&xi))));
    c.bench_function("qth_root_7_3_5", |b| b.iter(|| qth_root(black_box(7), 3, 5)));
}

criterion_group!(benches, gauss, lens, habiro);
criterion_main!(benches);
