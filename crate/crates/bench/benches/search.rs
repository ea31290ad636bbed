use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use entangle_core::{hill_climb, MeasureKind, Objective, Scope, SearchConfig};

fn fixed_budget(c: &mut Criterion) {
    let mut group = c.benchmark_group("hill_climb_2000_iterations");
    group.sample_size(10);
    for (n, scope) in [(4, Scope::Full), (4, Scope::Balanced), (6, Scope::Full), (6, Scope::Balanced)] {
        let cfg = SearchConfig::new(n, Objective::new(MeasureKind::VonNeumann, scope))
            .with_seed(1)
            .with_max_iterations(2000);
        group.bench_function(format!("n{n}_{scope:?}").to_lowercase(), |b| {
            b.iter(|| hill_climb(black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, fixed_budget);
criterion_main!(benches);
