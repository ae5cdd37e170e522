use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use helium_mixer::drive_mixing::Frame;
use helium_mixer::parallel::Execution;
use helium_mixer::runner::simulate;
use helium_mixer::scenario::{builtin, ResolvedScenario, ScenarioConfig};
use helium_mixer::spectrum::spectrum;

fn short(mut cfg: ScenarioConfig) -> ScenarioConfig {
    cfg.simulation.t_end_ns = Some(100.0);
    cfg.simulation.samples = Some(1001);
    cfg
}

fn xi_sweep() -> Vec<ResolvedScenario> {
    (1..=8)
        .map(|k| {
            let mut cfg = short(builtin("fig1").unwrap());
            cfg.stark[0].xi = Some(0.1 * k as f64);
            cfg.simulation.frames = vec![Frame::StarkRotated];
            cfg.resolve().unwrap()
        })
        .collect()
}

fn sweep(c: &mut Criterion) {
    let jobs = xi_sweep();
    let mut group = c.benchmark_group("xi_sweep");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    exec.map(&jobs, |r| {
                        let traj = simulate(r, &r.frames, Execution::Sequential)
                            .unwrap()
                            .remove(0);
                        spectrum(&traj).unwrap().resolution
                    })
                })
            },
        );
    }
    group.finish();
}

fn frames(c: &mut Criterion) {
    let r = short(builtin("fig1").unwrap()).resolve().unwrap();
    let mut group = c.benchmark_group("three_frames");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| b.iter(|| black_box(simulate(&r, &Frame::ALL, exec).unwrap())),
        );
    }
    group.finish();
}

criterion_group!(benches, sweep, frames);
criterion_main!(benches);
