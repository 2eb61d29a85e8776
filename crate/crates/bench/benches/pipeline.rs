use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zxgopt::generate::random_circuit;
use zxgopt::{
    anneal, basic_optimize, extract, match_rules, optimize_subcircuit, preprocess, to_graph, AnnealConfig,
    LookaheadParams,
};
use zxgopt_bench::by_name;

fn bench_extract(c: &mut Criterion) {
    let circ = by_name("barenco_tof_4").unwrap();
    let d = preprocess(&to_graph(&circ));
    c.bench_function("extract/barenco_tof_4", |b| b.iter(|| extract(&d).unwrap()));
    c.bench_function("match_rules/barenco_tof_4", |b| b.iter(|| match_rules(&d)));
}

fn bench_peephole(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let circ = random_circuit(8, 400, &mut rng);
    c.bench_function("basic_optimize/random_8x400", |b| b.iter(|| basic_optimize(&circ)));
}

fn bench_lookahead(c: &mut Criterion) {
    let circ = by_name("tof_3").unwrap();
    let params = LookaheadParams::default();
    c.bench_function("optimize_subcircuit/tof_3", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(1),
            |mut rng| optimize_subcircuit(&circ, &params, &mut rng),
            BatchSize::SmallInput,
        )
    });
}

fn bench_anneal(c: &mut Criterion) {
    let circ = by_name("barenco_tof_3").unwrap();
    let cfg = AnnealConfig {
        max_iters: Some(20),
        ..Default::default()
    };
    let mut g = c.benchmark_group("anneal");
    g.sample_size(10);
    g.bench_function("barenco_tof_3/20_iters", |b| b.iter(|| anneal(&circ, &cfg)));
    g.finish();
}

criterion_group!(benches, bench_extract, bench_peephole, bench_lookahead, bench_anneal);
criterion_main!(benches);
