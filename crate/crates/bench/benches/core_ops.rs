use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use darboux::{
    build_fock, commutator_matrix, detect_crossings, from_rotation, moduli_tangent_dimension,
    observer_modes, rs_blocks, sample_rotation, vacuum_residual,
};

use darboux_bench::zigzag_path;

fn bench_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_rotation");
    for n in [2usize, 4, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0u64;
            b.iter(|| {
                seed = seed.wrapping_add(1);
                black_box(sample_rotation(n, seed).unwrap())
            });
        });
    }
    group.finish();
}

fn bench_structure_ops(c: &mut Criterion) {
    let rotation = sample_rotation(8, 7).unwrap();
    c.bench_function("from_rotation/n=8", |b| b.iter(|| black_box(from_rotation(&rotation))));
    c.bench_function("rs_blocks/n=8", |b| b.iter(|| black_box(rs_blocks(&rotation))));
    let transform = rs_blocks(&rotation);
    c.bench_function("commutator_matrix/n=8", |b| {
        b.iter(|| black_box(commutator_matrix(&transform)))
    });
}

fn bench_moduli(c: &mut Criterion) {
    let mut group = c.benchmark_group("moduli_tangent_dimension");
    for n in [3usize, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(moduli_tangent_dimension(n).unwrap()));
        });
    }
    group.finish();
}

fn bench_fock(c: &mut Criterion) {
    c.bench_function("build_fock/n=2,cutoff=7", |b| {
        b.iter(|| black_box(build_fock(2, 7).unwrap()))
    });

    let fock = build_fock(2, 7).unwrap();
    let transform = rs_blocks(&sample_rotation(2, 3).unwrap());
    let modes = observer_modes(&fock, &transform).unwrap();
    c.bench_function("vacuum_residual/n=2,cutoff=7", |b| {
        b.iter(|| black_box(vacuum_residual(&fock, &modes).unwrap()))
    });
}

fn bench_cone(c: &mut Criterion) {
    let path = zigzag_path(10_000);
    c.bench_function("detect_crossings/10k", |b| {
        b.iter(|| black_box(detect_crossings(&path, 1e-9).unwrap()))
    });
}

criterion_group!(benches, bench_sampling, bench_structure_ops, bench_moduli, bench_fock, bench_cone);
criterion_main!(benches);
