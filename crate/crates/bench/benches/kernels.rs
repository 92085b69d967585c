use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gfsurgery::cliffords::{native_set, rotation_closure, LogicalPauli};
use gfsurgery::code::gross_code;
use gfsurgery::distance::fault_distance_exhaustive;
use gfsurgery::protocol::{build_schedule, ScheduleOptions};
use gfsurgery_bench::rep_system;

fn gf2(c: &mut Criterion) {
    let code = gross_code();
    let stacked = code.hx.stack_rows(&code.hz).unwrap();
    c.bench_function("rank/gross 144x144", |b| b.iter(|| black_box(&stacked).rank()));
    c.bench_function("kernel/gross hx", |b| b.iter(|| black_box(&code.hx).kernel()));
}

fn schedule(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_schedule");
    for n in [3, 5, 7] {
        let m = rep_system(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| build_schedule(m, ScheduleOptions::new(n)).unwrap()));
    }
    g.finish();
}

fn faults(c: &mut Criterion) {
    let g = build_schedule(&rep_system(3), ScheduleOptions::new(3)).unwrap();
    c.bench_function("fault_distance_exhaustive/rep3 R=3", |b| b.iter(|| fault_distance_exhaustive(black_box(&g), 3)));
}

fn closure(c: &mut Criterion) {
    let set = native_set().unwrap();
    // the low 8 qubits of the native rotations keep the run short
    let small: Vec<LogicalPauli> = set.rotations.iter().map(|r| LogicalPauli::new(r.x & 0xff, r.z & 0xff)).filter(|p| !p.is_identity()).collect();
    let mut g = c.benchmark_group("rotation_closure");
    g.sample_size(10);
    g.bench_function("8 qubits", |b| b.iter(|| rotation_closure(8, black_box(&small))));
    g.finish();
}

criterion_group!(benches, gf2, schedule, faults, closure);
criterion_main!(benches);
