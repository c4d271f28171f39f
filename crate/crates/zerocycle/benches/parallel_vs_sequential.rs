//! Parallel vs sequential comparison of the data-parallel kernels: loop
//! tracking inside monodromy computation and sample evaluation of integrals.
//! Both sides run on the same build; the sequential side forces the fallback
//! path at runtime via `par::run_sequential`.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use zerocycle::abelian::{integral_samples_with, BranchSystem};
use zerocycle::cycles::{trivial_projection_space, ZeroCycle};
use zerocycle::monodromy::monodromy_data;
use zerocycle::par;
use zerocycle::parse::parse_poly;
use zerocycle::poly::ExactPoly;

fn bench_monodromy(c: &mut Criterion) {
    // Morse-generic degree 12: eleven independent loops to track.
    let f = parse_poly("z^12 - 3*z^10 + z^7 + 2*z^3 - 5*z").unwrap();
    let mut group = c.benchmark_group("monodromy_deg12");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| monodromy_data(black_box(&f)).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| par::run_sequential(|| monodromy_data(black_box(&f)).unwrap()))
    });
    group.finish();
}

fn bench_integral_samples(c: &mut Criterion) {
    let f = ExactPoly::monomial(zerocycle::poly::rat(1), 60);
    let basis = trivial_projection_space(60).unwrap();
    let cycle: &ZeroCycle = &basis[0];
    let g = parse_poly("z^2+z^3+z^5").unwrap();
    let branches = BranchSystem::new(&f).unwrap();
    let ts = branches.sample_points(20, 7);
    let mut group = c.benchmark_group("integral_samples_deg60");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| integral_samples_with(black_box(&branches), &g, cycle, &ts).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            par::run_sequential(|| {
                integral_samples_with(black_box(&branches), &g, cycle, &ts).unwrap()
            })
        })
    });
    group.finish();
}

criterion_group!(benches, bench_monodromy, bench_integral_samples);
criterion_main!(benches);
