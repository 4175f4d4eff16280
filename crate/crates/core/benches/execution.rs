use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matspec::gammabeta::{beta_new_extended, GammaBetaParams};
use matspec::par::{self, Execution};
use matspec::verify::{self, CheckOptions};
use matspec::verify::family::{random_commuting_family, SpectrumBox};
use matspec::EvalConfig;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn quadrature(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let f = random_commuting_family(3, 5, SpectrumBox::real(0.8, 1.8), 1).unwrap();
    let m = |k: usize| f.matrix(&format!("M{k}")).unwrap();
    let p = GammaBetaParams { a: m(0), b: m(1).shift_real(1.0), x: m(2), y: m(3).scale_real(0.3), z: Some(m(4)) };
    let mut g = c.benchmark_group("beta_new_extended_3x3");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_execution(mode);
            b.iter(|| beta_new_extended(black_box(&p), &cfg).unwrap())
        });
    }
    g.finish();
    par::set_execution(Execution::Parallel);
}

fn identity_draws(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let case = verify::find_case("form-4.1-vs-4.3").unwrap();
    let opts = CheckOptions { draws: Some(6), ..CheckOptions::default() };
    let mut g = c.benchmark_group("check_identity");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(case.id, name), |b| {
            par::set_execution(mode);
            b.iter(|| verify::check_identity(case, &opts, &cfg).unwrap())
        });
    }
    g.finish();
    par::set_execution(Execution::Parallel);
}

criterion_group!(benches, quadrature, identity_draws);
criterion_main!(benches);
