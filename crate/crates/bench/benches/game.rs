use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crowdwise_bench::{chorded_ring, spread_profile, stubborn_every, varied_noise};
use crowdwise_core::instances::{four_agent_network, four_agent_noise};
use crowdwise_core::{
    best_response, classify_profile, limit_matrix, pareto_segment, run, InfluenceNetwork,
    RunConfig, SelfConfidenceProfile,
};

fn bench_network(c: &mut Criterion) {
    let mut group = c.benchmark_group("network");
    for n in [8, 32, 128] {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| chorded_ring(n).matrix().row(i).iter().copied().collect())
            .collect();
        group.bench_with_input(BenchmarkId::new("validate", n), &rows, |b, rows| {
            b.iter(|| InfluenceNetwork::from_rows(black_box(rows)).unwrap())
        });
    }
    group.finish();
}

fn bench_limit_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("limit_matrix");
    for n in [8, 32, 128] {
        let net = chorded_ring(n);
        let interior = spread_profile(n);
        let stubborn = stubborn_every(n, 4);
        group.bench_with_input(BenchmarkId::new("consensus", n), &interior, |b, z| {
            b.iter(|| limit_matrix(&net, black_box(z)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("absorption", n), &stubborn, |b, z| {
            b.iter(|| limit_matrix(&net, black_box(z)).unwrap())
        });
    }
    group.finish();
}

fn bench_best_response(c: &mut Criterion) {
    let mut group = c.benchmark_group("best_response");
    for n in [8, 32, 128] {
        let net = chorded_ring(n);
        let noise = varied_noise(n);
        let interior = spread_profile(n);
        let stubborn = stubborn_every(n, 4);
        group.bench_with_input(BenchmarkId::new("point", n), &interior, |b, z| {
            b.iter(|| best_response(&net, &noise, black_box(z), 1).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("with_stubborn", n), &stubborn, |b, z| {
            b.iter(|| best_response(&net, &noise, black_box(z), 1).unwrap())
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let net = four_agent_network();
    let noise = four_agent_noise();
    let on_segment = pareto_segment(&net, &noise).unwrap().profile(10.0).unwrap();
    let off_segment = SelfConfidenceProfile::uniform(4, 0.5).unwrap();
    c.bench_function("classify/on_segment", |b| {
        b.iter(|| classify_profile(&net, &noise, black_box(&on_segment)).unwrap())
    });
    c.bench_function("classify/off_segment", |b| {
        b.iter(|| classify_profile(&net, &noise, black_box(&off_segment)).unwrap())
    });
}

fn bench_run(c: &mut Criterion) {
    let net = four_agent_network();
    let noise = four_agent_noise();
    let mut group = c.benchmark_group("run");
    for (label, z0) in [
        ("uniform", vec![0.5; 4]),
        ("stubborn", vec![0.9, 1.0, 0.0, 1.0]),
    ] {
        let mut cfg = RunConfig::new(1, SelfConfidenceProfile::new(z0).unwrap());
        cfg.record_every = u64::MAX;
        group.bench_function(label, |b| {
            b.iter(|| run(&net, &noise, black_box(&cfg)).unwrap())
        });
    }
    let n = 32;
    let (big, big_noise) = (chorded_ring(n), varied_noise(n));
    let mut cfg = RunConfig::new(1, spread_profile(n));
    cfg.record_every = u64::MAX;
    group.sample_size(10);
    group.bench_function("ring_32", |b| {
        b.iter(|| run(&big, &big_noise, black_box(&cfg)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_network,
    bench_limit_matrix,
    bench_best_response,
    bench_classify,
    bench_run
);
criterion_main!(benches);
