use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use robsub_bench::{dense_3graph, dense_graph, hypercube, rainbow_graph, sparse_graph, SEED};
use robsub_core::density::{alpha_max_subgraph_exact, alpha_max_subgraph_peel};
use robsub_core::rainbow::{find_rainbow_cycle, find_rainbow_cycle_exact, FinderConfig};
use robsub_core::topo::{face_cycle_pipeline, find_face_cycle_exact, PipelineConfig};

fn extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract");
    for n in [12, 16, 20] {
        let g = dense_graph(n);
        group.bench_with_input(BenchmarkId::new("exact", n), &g, |b, g| {
            b.iter(|| alpha_max_subgraph_exact(black_box(g), 0.25).unwrap())
        });
    }
    for n in [200, 1000] {
        let g = sparse_graph(n);
        group.bench_with_input(BenchmarkId::new("peel", n), &g, |b, g| {
            b.iter(|| alpha_max_subgraph_peel(black_box(g), 0.25).unwrap())
        });
    }
    group.finish();
}

fn rainbow(c: &mut Criterion) {
    let mut group = c.benchmark_group("rainbow_cycle");
    let q = hypercube(5);
    group.bench_function("exact_q5", |b| b.iter(|| find_rainbow_cycle_exact(black_box(&q), q.n(), 10_000_000)));
    let g = rainbow_graph(300, 0.03);
    let cfg = FinderConfig::with_seed(SEED);
    group.bench_function("heuristic_gnp300", |b| b.iter(|| find_rainbow_cycle(black_box(&g), &cfg).unwrap()));
    group.finish();
}

fn face_cycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("face_cycle");
    group.sample_size(20);
    let g = dense_3graph(12, 0.5);
    for ell in [5, 6, 7] {
        group.bench_with_input(BenchmarkId::new("exact", ell), &ell, |b, &ell| {
            b.iter(|| find_face_cycle_exact(black_box(&g), ell, 10_000_000))
        });
    }
    let big = dense_3graph(30, 0.4);
    let cfg = PipelineConfig {
        seed: SEED,
        ..Default::default()
    };
    group.bench_function("pipeline_n30_l8", |b| b.iter(|| face_cycle_pipeline(black_box(&big), 8, &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, extraction, rainbow, face_cycles);
criterion_main!(benches);
