use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mvbandit_core::experiments::{fig2_instance, Engine};
use mvbandit_core::{run_policy, PolicySpec, RandomStream, StreamingMoments};

fn policies(c: &mut Criterion) {
    let instance = fig2_instance(0.25).unwrap();
    let stream = RandomStream::new(1);
    let mut group = c.benchmark_group("run_policy_T1e4");
    for policy in [
        PolicySpec::mv_ucb(),
        PolicySpec::mv_dsee_model_independent(1.0),
        PolicySpec::mv_dsee_model_specific(),
        PolicySpec::SingleArm { arm: 0 },
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(policy.label()),
            &policy,
            |b, p| b.iter(|| run_policy(&instance, p, black_box(10_000), &stream).unwrap()),
        );
    }
    group.finish();
}

fn moments(c: &mut Criterion) {
    let xs: Vec<f64> = (0..100_000).map(|i| (i as f64 * 0.37).sin()).collect();
    c.bench_function("streaming_moments_1e5", |b| {
        b.iter(|| StreamingMoments::from_slice(black_box(&xs)))
    });
}

fn replications(c: &mut Criterion) {
    let instance = fig2_instance(0.25).unwrap();
    let policy = PolicySpec::mv_ucb();
    let root = RandomStream::new(2);
    let engine = Engine::default();
    c.bench_function("mv_ucb_T1e3_x256_parallel", |b| {
        b.iter(|| {
            mvbandit_core::experiments::run_cell(&instance, &policy, 1_000, 256, &root, &engine)
                .unwrap()
        })
    });
}

criterion_group!(benches, policies, moments, replications);
criterion_main!(benches);
