use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use supertrace::invtensor::AdjointData;
use supertrace::par::Strategy;
use supertrace::repmod::{dual_module, hom_space_with, kac_module, tensor_module};
use supertrace::rootdata::{build_root_system, Family, Weight};
use supertrace::superlin::Parity;

fn strategies() -> [(&'static str, Strategy); 2] {
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)]
}

fn bench_matmul(c: &mut Criterion) {
    let rs = build_root_system(Family::Sl, 2, 1).unwrap();
    let adj = AdjointData::new(&rs).unwrap();
    let g3 = adj.power(3);
    let x = g3.e(0).matrix().clone();
    let y = g3.f(1).matrix().clone();
    let mut group = c.benchmark_group("matmul g^3");
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| b.iter(|| x.mul_with(&y, s)));
    }
    group.finish();
}

fn bench_hom_space(c: &mut Criterion) {
    let rs = build_root_system(Family::Sl, 2, 1).unwrap();
    let k = kac_module(&rs, &Weight::from_ints(&[1, 1])).unwrap();
    let kk = tensor_module(&k, &dual_module(&k));
    let mut group = c.benchmark_group("End_g(K(1|1)⊗K(1|1)*)");
    group.sample_size(10);
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| b.iter(|| hom_space_with(&kk, &kk, Parity::Even, s)));
    }
    group.finish();
}

fn bench_invariants(c: &mut Criterion) {
    let rs = build_root_system(Family::Sl, 2, 1).unwrap();
    let adj = AdjointData::new(&rs).unwrap();
    let trivial = supertrace::repmod::trivial_module(&rs);
    let g3 = adj.power(3);
    let mut group = c.benchmark_group("invariants of g^3");
    group.sample_size(10);
    for (name, s) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| b.iter(|| hom_space_with(&trivial, &g3, Parity::Even, s)));
    }
    group.finish();
}

criterion_group!(kernels, bench_matmul, bench_hom_space, bench_invariants);
criterion_main!(kernels);
