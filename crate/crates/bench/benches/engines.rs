use std::hint::black_box;

use bailey_core::bailey::{multisum_series, verify_pair, BaileyPair, PairKind};
use bailey_core::catalog::{expand_sides, family_lhs, verify, VerificationConfig};
use bailey_core::qpoch::{qpoch_series, PochSpec};
use bailey_core::rational::rat;
use bailey_core::theta::{rr_rhs_series, SpdtSpec};
use bailey_core::QMonomial;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("euler_product");
    for order in [50usize, 100, 200] {
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| qpoch_series(&PochSpec::infinite(QMonomial::q()), black_box(order)).unwrap())
        });
    }
    g.finish();
    c.bench_function("mod9_product_order40", |b| {
        let spec = SpdtSpec::new(9, &[0, 4], 2, 1).unwrap();
        b.iter(|| rr_rhs_series(black_box(&spec), 40).unwrap())
    });
}

fn multisums(c: &mut Criterion) {
    let mut g = c.benchmark_group("chain_sum");
    g.sample_size(10);
    for (name, kind, k, order) in [
        ("double_k1_o50", PairKind::P47, 1usize, 50usize),
        ("double_k2_o40", PairKind::P47, 2, 40),
        ("triple_k1_o40", PairKind::P57, 1, 40),
    ] {
        let spec = family_lhs(kind, k, &QMonomial::one()).unwrap();
        g.bench_function(name, |b| b.iter(|| multisum_series(black_box(&spec), order).unwrap()));
    }
    g.finish();
}

fn pairs(c: &mut Criterion) {
    let qv = rat(-3, 7);
    let a = QMonomial::from_ratio(5, 4);
    c.bench_function("pair_triple_cap4", |b| {
        let p = BaileyPair::seed(PairKind::P57);
        b.iter(|| verify_pair(black_box(&p), &a, &qv, 4).unwrap())
    });
    c.bench_function("pair_double_cap6", |b| {
        let p = BaileyPair::seed(PairKind::P48);
        b.iter(|| verify_pair(black_box(&p), &a, &qv, 6).unwrap())
    });
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog");
    g.sample_size(10);
    let cfg = VerificationConfig { trials: Some(10), ..VerificationConfig::default() };
    for id in ["EQ-3.5", "KEY-4.5", "THM-2.1"] {
        g.bench_function(id, |b| b.iter(|| verify(black_box(id), &cfg).unwrap()));
    }
    g.bench_function("JTP_sides", |b| b.iter(|| expand_sides("JTP", Some(100)).unwrap()));
    g.finish();
}

criterion_group!(benches, products, multisums, pairs, catalog);
criterion_main!(benches);
