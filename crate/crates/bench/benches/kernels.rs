use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vcinv::group::{Group, GroupKind};
use vcinv::invariants::{build_dickson, build_h, build_phis_and_us, verify_identity, BasisId, IdentityTag, Inv};
use vcinv::ringcalc::{invariant_dimension, verify_free_basis};
use vcinv_bench::{catalog, field, random_matrix};

fn poly(c: &mut Criterion) {
    let mut g = c.benchmark_group("poly");
    for q in [3u64, 5] {
        let cat = catalog(q);
        let (a, b) = (cat.get(Inv::C21).unwrap().clone(), cat.get(Inv::C21s).unwrap().clone());
        g.bench_with_input(BenchmarkId::new("mul_c21_c21s", q), &q, |bench, _| bench.iter(|| black_box(&a * &b)));
        let k = field(q);
        let (dk, pu) = (build_dickson(&k).unwrap(), build_phis_and_us(&k).unwrap());
        g.bench_with_input(BenchmarkId::new("exact_div_h1", q), &q, |bench, _| {
            bench.iter(|| black_box(build_h(&dk, &pu, 1).unwrap()))
        });
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let cat = catalog(5);
    c.bench_function("identity_suite_q5", |b| {
        b.iter(|| IdentityTag::ALL.iter().all(|&t| verify_identity(&cat, t).status.is_pass()))
    });
}

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for (q, n) in [(2u64, 200usize), (9, 120)] {
        let m = random_matrix(q, n, n, 7);
        g.bench_with_input(BenchmarkId::new(format!("q{q}"), n), &n, |b, _| b.iter(|| black_box(m.rref())));
    }
    g.finish();
}

fn ringcalc(c: &mut Criterion) {
    let mut g = c.benchmark_group("ringcalc");
    g.sample_size(10);
    let sl2 = Group::new(GroupKind::SL2, &field(3));
    g.bench_function("invariant_dimension_sl2_q3_d18", |b| b.iter(|| invariant_dimension(&sl2, 18).unwrap()));
    let cat = catalog(3);
    g.bench_function("free_basis_d_q3_d12", |b| b.iter(|| verify_free_basis(&cat, BasisId::D, 12).unwrap()));
    g.finish();
}

criterion_group!(benches, poly, identities, linalg, ringcalc);
criterion_main!(benches);
