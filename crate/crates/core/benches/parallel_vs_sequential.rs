use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use operadlab::braid::{coherence_check, CheckOptions, CoherenceKind};
use operadlab::config::{expand, CoordinateSystem, RationalFunction};
use operadlab::par::{map_collect, Parallelism};
use operadlab::random::rng_for;
use operadlab::tree::Tree;
use rand::Rng;

const MODES: [(&str, Parallelism); 2] = [("parallel", Parallelism::Parallel), ("sequential", Parallelism::Sequential)];

fn coherence(c: &mut Criterion) {
    let mut g = c.benchmark_group("coherence");
    g.sample_size(10);
    for (name, mode) in MODES {
        let opts = CheckOptions { seed: 0, instances: 200, max_leaves: 6, mode };
        g.bench_with_input(BenchmarkId::new("associativity", name), &opts, |b, o| {
            b.iter(|| coherence_check(CoherenceKind::OperadAssociativity, o))
        });
    }
    g.finish();
}

fn expansions(c: &mut Criterion) {
    let mut rng = rng_for(1, 0);
    let jobs: Vec<(Tree, RationalFunction)> = (0..64)
        .map(|_| {
            let r = rng.gen_range(3..=5);
            (Tree::random(r, &mut rng), RationalFunction::random_monomial(r, &mut rng))
        })
        .collect();
    let mut g = c.benchmark_group("expand");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new("order_8", name), |b| {
            b.iter(|| {
                map_collect(mode, &jobs, |(t, f)| {
                    let cs = CoordinateSystem::new(t).unwrap();
                    expand(f, &cs, 8).unwrap().len()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, coherence, expansions);
criterion_main!(benches);
