use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrep::fixtures::PaperFixtures;
use qrep::linalg::FieldTag;
use qrep::par::Execution;
use qrep::rep::{is_indecomposable_fp_with, DEFAULT_SEARCH_BUDGET};
use qrep::verify::{mutation_sweep, Mutation};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn idempotent_search(c: &mut Criterion) {
    let fx = PaperFixtures::load();
    let mut group = c.benchmark_group("idempotent_search");
    group.sample_size(10);
    for p in [2, 3] {
        let x = fx.x_alpha.convert(FieldTag::prime(p).unwrap()).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("F{p}")), &x, |b, x| {
                b.iter(|| assert!(is_indecomposable_fp_with(x, DEFAULT_SEARCH_BUDGET, mode).unwrap()))
            });
        }
    }
    group.finish();
}

fn mutation_subset(c: &mut Criterion) {
    let mutations: Vec<Mutation> = Mutation::all(&PaperFixtures::load()).into_iter().step_by(15).collect();
    let mut group = c.benchmark_group("mutation_sweep");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, mutations.len()), |b| {
            b.iter(|| mutation_sweep(FieldTag::prime(2).unwrap(), &mutations, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, idempotent_search, mutation_subset);
criterion_main!(benches);
