use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use truthlab::closure::ClassicalModel;
use truthlab::exec::Exec;
use truthlab::scenarios::bundled;
use truthlab::schemas::check_with;
use truthlab::valuation::{enumerate_fixed_points, least_fixed_point};

fn bench(c: &mut Criterion) {
    let sys = bundled("truth_tellers", 1).unwrap();
    let m = ClassicalModel::closure(&sys, &least_fixed_point(&sys).unwrap());
    let mut g = c.benchmark_group("check ckf");
    g.sample_size(10);
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &e| {
            b.iter(|| check_with(&m, "ckf", e).unwrap())
        });
    }
    g.finish();

    let sys = bundled("grounded", 0).unwrap();
    let mut g = c.benchmark_group("enumerate");
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &e| {
            b.iter(|| enumerate_fixed_points(&sys, 8, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
