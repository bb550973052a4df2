use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use regmap_core::exec::Strategy;
use regmap_core::field::Rationals;
use regmap_core::grassmann::{ClassKind, GrassmannPresentation};
use regmap_core::sampler::{sample_check_regular, ExampleMap};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn sampler_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampler_trials");
    group.sample_size(10);
    let cases = [
        ("vandermonde6", ExampleMap::Vandermonde(6), vec![6]),
        ("sphere5", ExampleMap::SphereOneI(5), vec![3]),
        (
            "direct_sum",
            ExampleMap::DirectSum(vec![ExampleMap::Vandermonde(4), ExampleMap::SphereOneI(3)]),
            vec![4, 3],
        ),
    ];
    for (name, map, sizes) in &cases {
        for (label, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(*name, label), &strategy, |b, &s| {
                b.iter(|| sample_check_regular(black_box(map), sizes, 2000, 7, s).unwrap())
            });
        }
    }
    group.finish();
}

fn grassmann_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("grassmann_construction");
    group.sample_size(10);
    for (k, n) in [(2u32, 8u32), (3, 6)] {
        let trunc = GrassmannPresentation::<Rationals>::truncation_for_height(k, n, ClassKind::Chern, 2);
        for (label, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(format!("G{k}(C{})", n + 1), label), &strategy, |b, &s| {
                b.iter(|| GrassmannPresentation::new(Rationals, ClassKind::Chern, k, n, trunc, s).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sampler_trials, grassmann_construction);
criterion_main!(benches);
