use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wallman_bench::downset_lattice;
use wallman_core::filter::{enumerate_filters, EnumConfig};
use wallman_core::{FilterClass, Strategy};

fn prime_filters(c: &mut Criterion) {
    let config = EnumConfig::default();
    let mut group = c.benchmark_group("prime_filters");
    for points in [4, 6, 8, 10] {
        let lattice = downset_lattice(points, 0xbe7c);
        for (name, strategy) in [("brute", Strategy::Brute), ("fast", Strategy::Fast)] {
            group.bench_with_input(BenchmarkId::new(name, lattice.len()), &lattice, |b, l| {
                b.iter(|| enumerate_filters(l, FilterClass::Prime, strategy, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn ultrafilters(c: &mut Criterion) {
    let config = EnumConfig::default();
    let mut group = c.benchmark_group("ultrafilters");
    for points in [6, 10] {
        let lattice = downset_lattice(points, 0xbe7c);
        for (name, strategy) in [("brute", Strategy::Brute), ("fast", Strategy::Fast)] {
            group.bench_with_input(BenchmarkId::new(name, lattice.len()), &lattice, |b, l| {
                b.iter(|| enumerate_filters(l, FilterClass::Ultra, strategy, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let config = EnumConfig::default();
    let lattice = downset_lattice(4, 3);
    c.bench_function("exhaustive_all_filters", |b| {
        b.iter(|| enumerate_filters(&lattice, FilterClass::All, Strategy::Exhaustive, &config))
    });
}

criterion_group!(benches, prime_filters, ultrafilters, exhaustive);
criterion_main!(benches);
