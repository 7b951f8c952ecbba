use std::f64::consts::TAU;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pmech_core::dwfield::{dw_integrate, legendre, residual_check, FieldSlice, Potential};
use pmech_core::galilean::{inner_product, vacuum_eval, CliffordGridFunction};
use pmech_core::{Axis, Grid, LagrangianSpec, PlanckTuple, Signature};

fn galilean_inner_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("inner_product");
    group.sample_size(10);
    for (label, h) in [("n1", vec![1.0]), ("n2", vec![1.0, 0.5])] {
        let h = PlanckTuple::new(h).unwrap();
        let sig = Signature::euclidean_negative(h.generators());
        let grid = CliffordGridFunction::standard_grid(&h, 8, -4.0, 4.0, 15).unwrap();
        let f = CliffordGridFunction::from_fn(&sig, grid, |g| vacuum_eval(&h, &sig, g)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(label), &f, |bench, f| {
            bench.iter(|| inner_product(&h, black_box(f), black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn dw_march(c: &mut Criterion) {
    let h = legendre(&LagrangianSpec::new(Signature::parse("+1,-1").unwrap(), Potential::mass(1.0))).unwrap();
    let mut group = c.benchmark_group("dw_integrate");
    group.sample_size(10);
    for n in [64, 256] {
        let space = Grid::new(vec![Axis::periodic(0.0, TAU, n).unwrap()]).unwrap();
        let dx = TAU / n as f64;
        let init = FieldSlice::from_fn(space, |x| x[0].cos(), |x| 2f64.sqrt() * x[0].sin());
        let steps = (1.0 / (0.5 * dx)).ceil() as usize;
        group.bench_with_input(BenchmarkId::from_parameter(n), &init, |bench, init| {
            bench.iter(|| dw_integrate(&h, black_box(init), 1.0 / steps as f64, steps).unwrap())
        });
    }
    group.finish();
}

fn dw_residuals(c: &mut Criterion) {
    let h = legendre(&LagrangianSpec::new(Signature::euclidean_negative(2), Potential::mass(1.0))).unwrap();
    let space = Grid::new(vec![Axis::periodic(0.0, TAU, 64).unwrap()]).unwrap();
    let init = FieldSlice::from_fn(space, |x| (2.0 * x[0]).cos(), |_| 0.0);
    let state = dw_integrate(&h, &init, 0.2 / 16.0, 16).unwrap();
    let mut group = c.benchmark_group("residual_check");
    group.sample_size(10);
    group.bench_function("euclidean/64", |bench| bench.iter(|| residual_check(black_box(&state), &h).unwrap()));
    group.finish();
}

criterion_group!(benches, galilean_inner_product, dw_march, dw_residuals);
criterion_main!(benches);
