use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use triad_balance::generate::random_signed_digraph_m;
use triad_balance::metrics::descriptive_stats_with;
use triad_balance::{full_census_with, network_balance_with, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_census");
    group.sample_size(10);
    for (n, m) in [(500, 10_000), (2_000, 100_000)] {
        let g = random_signed_digraph_m(n, m, 0.7, 42);
        for (name, s) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, format!("{n}x{m}")), &g, |b, g| {
                b.iter(|| full_census_with(g, s))
            });
        }
    }
    group.finish();
}

fn balance(c: &mut Criterion) {
    let mut group = c.benchmark_group("network_balance");
    group.sample_size(10);
    for (n, m) in [(500, 10_000), (2_000, 100_000)] {
        let g = random_signed_digraph_m(n, m, 0.7, 42);
        for (name, s) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, format!("{n}x{m}")), &g, |b, g| {
                b.iter(|| network_balance_with(g, s))
            });
        }
    }
    group.finish();
}

fn stats(c: &mut Criterion) {
    let mut group = c.benchmark_group("descriptive_stats");
    group.sample_size(10);
    let g = random_signed_digraph_m(1_000, 20_000, 0.7, 42);
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| descriptive_stats_with(&g, s)));
    }
    group.finish();
}

criterion_group!(benches, census, balance, stats);
criterion_main!(benches);
