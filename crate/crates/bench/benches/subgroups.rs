use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ppn_bench::fixtures;
use ppn_core::powerful::upper_powerfully_central_series;
use ppn_core::Subgroup;

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_subgroups");
    group.sample_size(10);
    for (id, pres) in fixtures() {
        let g = Subgroup::full(&pres);
        group.bench_function(BenchmarkId::from_parameter(&id), |b| {
            b.iter(|| black_box(g.normal_subgroups_within(&g, u128::MAX).unwrap().len()))
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("upper_series");
    for (id, pres) in fixtures() {
        let g = Subgroup::full(&pres);
        group.bench_function(BenchmarkId::from_parameter(&id), |b| {
            b.iter(|| black_box(upper_powerfully_central_series(&g).unwrap().stabilized_at))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice, series);
criterion_main!(benches);
