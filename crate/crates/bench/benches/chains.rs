use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wallman_bench::phi_family;
use wallman_core::certificates::{max_increasing_chain, GulkoOrder};

fn longest_chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("longest_chain");
    for members in [2, 4, 6] {
        let (family, phi) = phi_family(4, members, 0xc4a1);
        let cap = 3 + family.members.len() + 1;
        group.bench_with_input(
            BenchmarkId::from_parameter(members),
            &(family, phi),
            |b, (f, p)| {
                b.iter(|| max_increasing_chain(f, p, 0, cap, GulkoOrder::Membership).unwrap())
            },
        );
    }
    group.finish();
}

criterion_group!(benches, longest_chain);
criterion_main!(benches);
