use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mtorus_core::{
    coset_representatives, rt_trace_su2, smith_normal_form, z_sqm_su2, z_trace_general_cosets,
    z_trace_su2, Family, IntMatrix, RootSystem, SL2Element,
};

fn lattice(c: &mut Criterion) {
    let m = IntMatrix::from_i64(
        4,
        4,
        &[12, -7, 3, 9, 4, 15, -8, 2, -6, 1, 11, -5, 7, 3, -2, 14],
    );
    c.bench_function("snf_4x4", |b| b.iter(|| smith_normal_form(black_box(&m))));
    let small = IntMatrix::from_i64(3, 3, &[4, 1, 0, -2, 5, 1, 1, 0, 6]);
    c.bench_function("cosets_3x3", |b| b.iter(|| coset_representatives(black_box(&small)).unwrap()));
}

fn su2(c: &mut Criterion) {
    let u = SL2Element::from_i64(7, -3, 5, -2).unwrap();
    let mut g = c.benchmark_group("su2");
    for k in [4, 16, 64] {
        g.bench_with_input(BenchmarkId::new("sqm", k), &k, |b, &k| {
            b.iter(|| z_sqm_su2(black_box(&u), k).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("trace", k), &k, |b, &k| {
            b.iter(|| z_trace_su2(black_box(&u), k, None).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rt", k), &k, |b, &k| {
            b.iter(|| rt_trace_su2(black_box(&u), k).unwrap())
        });
    }
    g.finish();
}

fn general(c: &mut Criterion) {
    let mut g = c.benchmark_group("general_cosets");
    g.sample_size(20);
    for (fam, rank) in [(Family::A, 2), (Family::C, 2)] {
        let rs = RootSystem::build(fam, rank).unwrap();
        g.bench_function(rs.name(), |b| b.iter(|| z_trace_general_cosets(black_box(&rs), 5, 3).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, lattice, su2, general);
criterion_main!(benches);
