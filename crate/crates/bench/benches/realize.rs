use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use oddsphere_bench::families;
use oddsphere_core::realize::{realize_max_odd_cycle, verify_realization};
use oddsphere_core::{catalog, complex_from_nonfaces, CatalogOptions};

fn realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize_max_odd_cycle");
    for m in [5, 7, 9] {
        let certs: Vec<_> = families(m).into_iter().map(|(_, cert)| cert).collect();
        group.bench_with_input(BenchmarkId::from_parameter(m), &certs, |b, certs| {
            b.iter(|| {
                for cert in certs {
                    black_box(realize_max_odd_cycle(cert).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn hull_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull_verification");
    group.sample_size(10);
    for m in [6, 7] {
        let cases: Vec<_> = families(m)
            .into_iter()
            .map(|(f, cert)| {
                let points = realize_max_odd_cycle(&cert).unwrap().points;
                (complex_from_nonfaces(&f), points)
            })
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(m), &cases, |b, cases| {
            b.iter(|| {
                for (complex, points) in cases {
                    verify_realization(complex, points).unwrap();
                }
            })
        });
    }
    group.finish();
}

fn catalog_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog");
    group.sample_size(10);
    for m in [6, 7] {
        group.bench_function(BenchmarkId::from_parameter(m), |b| {
            b.iter(|| catalog(m, CatalogOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, realize, hull_check, catalog_run);
criterion_main!(benches);
