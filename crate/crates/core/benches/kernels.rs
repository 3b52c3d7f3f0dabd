//! Sequential vs rayon execution of the hot kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockforge::fock::{creator, FockSpace, Statistics};
use fockforge::oneparticle::{LatticeConfig, LatticeModel, OperatorMatrix, DEFAULT_ZERO_TOL};
use fockforge::par::Execution;
use fockforge::physics::{equivalence_sweep, free_energy_trace, SweepMember, ThermoParams, TraceOptions};
use fockforge::sampling::{random_hermitian, random_unitary, random_vector, rng};
use fockforge::secondquant::big_q_with;

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(exec: Execution) -> &'static str {
    match exec {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

fn field_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("creator");
    for n in [8usize, 12] {
        let fock = FockSpace::fermions(n).unwrap();
        let f = random_vector(n, &mut rng(1));
        for exec in MODES {
            group.bench_with_input(BenchmarkId::new(label(exec), n), &n, |b, _| {
                b.iter(|| creator(&fock, black_box(&f), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn unitary_lift(c: &mut Criterion) {
    let mut group = c.benchmark_group("big_q");
    group.sample_size(10);
    for n in [6usize, 8] {
        let fock = FockSpace::fermions(n).unwrap();
        let u = OperatorMatrix::from_matrix(random_unitary(n, &mut rng(2))).unwrap();
        for exec in MODES {
            group.bench_with_input(BenchmarkId::new(label(exec), n), &n, |b, _| {
                b.iter(|| big_q_with(black_box(&u), &fock, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn thermal_trace(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_energy_trace");
    group.sample_size(10);
    let n = 10;
    let h = OperatorMatrix::from_matrix(random_hermitian(n, &mut rng(3))).unwrap();
    let p = ThermoParams::new(1.0, 0.2, Statistics::Fermion).unwrap();
    for exec in MODES {
        let opts = TraceOptions { exec, ..TraceOptions::default() };
        group.bench_function(label(exec), |b| b.iter(|| free_energy_trace(black_box(&h), &p, &opts).unwrap()));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("equivalence_sweep");
    group.sample_size(10);
    let sites = 24;
    let family: Vec<SweepMember> = (0..6)
        .map(|k| {
            let mut config = LatticeConfig::free(LatticeModel::Dirac1d, sites, 1.0, 1.0);
            config.phi = (0..sites).map(|j| 0.05 * k as f64 * (j as f64).sin()).collect();
            SweepMember { label: format!("m{k}"), config }
        })
        .collect();
    for exec in MODES {
        group.bench_function(label(exec), |b| {
            b.iter(|| equivalence_sweep(black_box(&family), DEFAULT_ZERO_TOL, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, field_build, unitary_lift, thermal_trace, sweep);
criterion_main!(benches);
