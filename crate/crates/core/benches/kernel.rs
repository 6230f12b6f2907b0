//! Sequential versus parallel schedules on the three data-parallel loops:
//! the Psi table over all (s, w), the H_{s,w} coefficients over l, and the
//! shells of Cohen's series.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use cuspkernel::kernel::{psi_table, KernelPoint};
use cuspkernel::modforms::hsw_form_with;
use cuspkernel::numerics::cohen_series_with;
use cuspkernel::Exec;

const SCHEDULES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn psi_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi_table_k24_l30");
    for (name, exec) in SCHEDULES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| psi_table(black_box(24), 30, e).unwrap())
        });
    }
    g.finish();
}

fn hsw(c: &mut Criterion) {
    let pt = KernelPoint::new(26, 7, 12).unwrap();
    let mut g = c.benchmark_group("hsw_k26_n60");
    for (name, exec) in SCHEDULES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| hsw_form_with(black_box(&pt), 60, e).unwrap())
        });
    }
    g.finish();
}

fn cohen(c: &mut Criterion) {
    let s = Complex64::from(6.0);
    let z = Complex64::new(0.0, 2.0);
    let mut g = c.benchmark_group("cohen_k12_c100");
    g.sample_size(10);
    for (name, exec) in SCHEDULES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| cohen_series_with(12, black_box(s), z, 100, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, psi_tables, hsw, cohen);
criterion_main!(benches);
