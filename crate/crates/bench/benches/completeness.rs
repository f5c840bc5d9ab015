use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockres::complete::{discrete_completeness, moment_check, unity_resolution_matrix};
use fockres::fockstate::{pacsc, pasvs, DEFAULT_EPS};
use fockres::overlap::pasvs_overlap;
use fockres::{QuadSettings, SqueezeParam};
use fockres_bench::{circle_params, squeeze_params, weight_families};
use std::hint::black_box;

fn states(c: &mut Criterion) {
    let mut g = c.benchmark_group("states");
    for (name, p) in squeeze_params() {
        g.bench_with_input(BenchmarkId::new("pasvs_m4", name), &p, |b, p| {
            b.iter(|| pasvs(p, 4, DEFAULT_EPS))
        });
    }
    for (name, p) in circle_params() {
        g.bench_with_input(BenchmarkId::new("pacsc_m2", name), &p, |b, p| {
            b.iter(|| pacsc(p, 2, DEFAULT_EPS))
        });
    }
    g.finish();
}

fn overlaps(c: &mut Criterion) {
    let xi = SqueezeParam::from_polar(0.4, 1.0).unwrap();
    let zeta = SqueezeParam::from_polar(0.6, -2.0).unwrap();
    c.bench_function("pasvs_overlap_all_forms", |b| {
        b.iter(|| pasvs_overlap(&xi, black_box(6), &zeta, black_box(8)))
    });
}

fn resolution(c: &mut Criterion) {
    let quad = QuadSettings::default();
    let mut g = c.benchmark_group("resolution");
    g.sample_size(10);
    for (name, w) in weight_families() {
        g.bench_with_input(BenchmarkId::new("moments_k8", name), &w, |b, w| {
            b.iter(|| moment_check(w, 8, &quad))
        });
        g.bench_with_input(BenchmarkId::new("unity_dim12", name), &w, |b, w| {
            b.iter(|| unity_resolution_matrix(w, 12, &quad))
        });
    }
    let p = SqueezeParam::real(0.3).unwrap();
    g.bench_function("discrete_cutoff40", |b| {
        b.iter(|| discrete_completeness(&p, 40, 8))
    });
    g.finish();
}

criterion_group!(benches, states, overlaps, resolution);
criterion_main!(benches);
