use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use linkdecay_bench::{planted_snapshot, planted_stream};
use linkdecay_core::evaluation::temporal_split;
use linkdecay_core::oracle::check_closed_form;
use linkdecay_core::{
    generate, random_digraph, score_batch, DecayBias, GenConfig, PairSelection, ScoreSpec, TieBreak,
};

fn batch_scoring(c: &mut Criterion) {
    let (g, edges) = planted_snapshot(1);
    let mut group = c.benchmark_group("score_batch");
    for spec in [
        "model=score measure=pa combo=out",
        "model=network measure=adad combo=sym",
        "model=network measure=jacc combo=asym",
    ] {
        let spec: ScoreSpec = spec.parse().unwrap();
        group.bench_function(
            format!("{}/{}/{}", spec.model, spec.measure, spec.combo),
            |b| b.iter(|| score_batch(&g, &edges, spec).unwrap()),
        );
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let g = random_digraph(30, 0.2, 7).unwrap();
    let spec: ScoreSpec = "model=network measure=cn combo=sym".parse().unwrap();
    c.bench_function("check_closed_form/n30/all-pairs", |b| {
        b.iter(|| check_closed_form(&g, spec, PairSelection::AllPairs).unwrap())
    });
}

fn evaluation(c: &mut Criterion) {
    let tel = planted_stream(2);
    let spec: ScoreSpec = "model=score measure=pa combo=out".parse().unwrap();
    c.bench_function("split_and_score", |b| {
        b.iter(|| {
            temporal_split(&tel, 0.75, 2)
                .unwrap()
                .score_with(spec, TieBreak::Lexicographic)
                .unwrap()
        })
    });
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    group.bench_function("default/low_degree", |b| {
        let cfg = GenConfig {
            decay_bias: DecayBias::LowDegree,
            ..GenConfig::with_seed(3)
        };
        b.iter_batched(|| cfg, |cfg| generate(&cfg).unwrap(), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(benches, batch_scoring, oracle, evaluation);
criterion_main!(benches);
