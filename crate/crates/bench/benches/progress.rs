use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lprog::{find_violation, prog_exact_unchecked, prog_lower_bound, Strategy};
use lprog_bench::workload;

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("prog_exact");
    group.sample_size(10);
    for formula in ["F a", "a U b", "F (a & X b)", "F (a & X (b & X (a & b)))"] {
        let w = workload(1, 200, 0.1, Strategy::Dfs, formula);
        group.bench_with_input(BenchmarkId::from_parameter(formula), &w, |b, w| {
            b.iter(|| prog_exact_unchecked(&w.model, &w.search, black_box(&w.formula)).unwrap())
        });
    }
    group.finish();
}

fn lower_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("prog_lower_bound");
    group.sample_size(10);
    for states in [250, 500, 1000, 2000] {
        let w = workload(2, states, 0.2, Strategy::Greedy, "G a");
        group.bench_with_input(BenchmarkId::from_parameter(states), &w, |b, w| {
            b.iter(|| prog_lower_bound(black_box(&w.model), &w.search).unwrap())
        });
    }
    group.finish();
}

fn violation(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_violation");
    group.sample_size(10);
    for formula in ["F a", "G (a | b)", "F (a & X (b & X (a & b)))"] {
        let w = workload(1, 200, 0.1, Strategy::Dfs, formula);
        group.bench_with_input(BenchmarkId::from_parameter(formula), &w, |b, w| {
            b.iter(|| find_violation(&w.model, &w.search, black_box(&w.formula)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exact, lower_bound, violation);
criterion_main!(benches);
