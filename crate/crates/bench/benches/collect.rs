use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ppn_bench::fixtures;

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply_all_pairs_sample");
    for (id, pres) in fixtures() {
        let elems: Vec<_> = pres
            .elements()
            .step_by((pres.order() as usize / 64).max(1))
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(&id), &elems, |b, elems| {
            b.iter(|| {
                for x in elems {
                    for y in elems {
                        black_box(pres.multiply(x, y));
                    }
                }
            })
        });
    }
    group.finish();
}

fn power_and_order(c: &mut Criterion) {
    let mut group = c.benchmark_group("element_order");
    for (id, pres) in fixtures() {
        let elems: Vec<_> = pres.elements().take(256).collect();
        group.bench_with_input(BenchmarkId::from_parameter(&id), &elems, |b, elems| {
            b.iter(|| elems.iter().map(|x| pres.log_order(x)).sum::<u32>())
        });
    }
    group.finish();
}

criterion_group!(benches, multiply, power_and_order);
criterion_main!(benches);
