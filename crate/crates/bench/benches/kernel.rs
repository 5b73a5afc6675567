use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nosig_bench::hermitian_fixtures;
use nosig_core::{sample, CMatrix, Rng64};

fn bench_herm_eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("herm_eig");
    for (matrix, dim) in hermitian_fixtures(&[2, 4, 8, 16], 7).into_iter().zip([2, 4, 8, 16]) {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &matrix, |b, m| {
            b.iter(|| black_box(m).herm_eig().unwrap())
        });
    }
    group.finish();
}

fn bench_trace_norm(c: &mut Criterion) {
    let mut rng = Rng64::new(11);
    let a = sample::random_density(&mut rng, 16);
    let b = sample::random_density(&mut rng, 16);
    let diff = a.mat().sub(b.mat());
    c.bench_function("trace_norm_16", |bench| {
        bench.iter(|| black_box(&diff).trace_norm().unwrap())
    });
}

fn bench_tensor_and_partial_trace(c: &mut Criterion) {
    let mut rng = Rng64::new(13);
    let a = sample::random_hermitian(&mut rng, 4);
    let b = sample::random_hermitian(&mut rng, 4);
    c.bench_function("tensor_4x4", |bench| {
        bench.iter(|| black_box(&a).tensor(black_box(&b)).unwrap())
    });
    let joint = a.tensor(&b).unwrap();
    c.bench_function("partial_trace_16_to_4", |bench| {
        bench.iter(|| black_box(&joint).partial_trace(&[4, 4], 1).unwrap())
    });
    let _ = CMatrix::identity(2);
}

criterion_group!(benches, bench_herm_eig, bench_trace_norm, bench_tensor_and_partial_trace);
criterion_main!(benches);
