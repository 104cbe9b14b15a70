//! Parallel vs sequential execution of the two hot batch workloads: modular
//! rank of a batch of sampled graphs, and full experiment trials. With the
//! default `parallel` feature the batched variants fan out over rayon;
//! `map_indexed_seq` is the always-sequential twin.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use corank::exec::{map_indexed, map_indexed_seq};
use corank::generators::{derive_seed, sample_gnp};
use corank::graph::Graph;
use corank::harness::{run_trials, run_trials_seq, ExperimentConfig, Suite};
use corank::linalg::{rank_adjacency, RankMethod};

fn rank_batch(c: &mut Criterion) {
    let graphs: Vec<Graph> = (0..16)
        .map(|t| sample_gnp(150, 4.0 / 150.0, derive_seed(11, t)).unwrap())
        .collect();
    let mut group = c.benchmark_group("modular_rank_batch");
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || graphs.clone(),
            |gs| {
                map_indexed(gs.len(), |i| {
                    rank_adjacency(&gs[i], RankMethod::Modular).unwrap().rank
                })
            },
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || graphs.clone(),
            |gs| {
                map_indexed_seq(gs.len(), |i| {
                    rank_adjacency(&gs[i], RankMethod::Modular).unwrap().rank
                })
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn trial_batch(c: &mut Criterion) {
    let config = ExperimentConfig {
        suite: Suite::RankCharA,
        n: 150,
        c: Some(4.0),
        m: None,
        trials: 16,
        seed: 3,
    };
    let mut group = c.benchmark_group("experiment_trials");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| run_trials(&config)));
    group.bench_function("sequential", |b| b.iter(|| run_trials_seq(&config)));
    group.finish();
}

criterion_group!(benches, rank_batch, trial_batch);
criterion_main!(benches);
