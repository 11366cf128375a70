use criterion::{black_box, criterion_group, criterion_main, Criterion};
use krc_core::bounds::complexity_interval;
use krc_core::budget::Budget;
use krc_core::builtins;
use krc_core::expansions::gst;
use krc_core::green::green;
use krc_core::pointlikes::aperiodic_pointlikes;
use krc_core::semigroup::FiniteSemigroup;
use krc_core::theta::theta_exact;

fn fixture(name: &str) -> FiniteSemigroup {
    builtins::standard_ts(name, &Budget::default()).unwrap().abstract_semigroup
}

fn green_relations(c: &mut Criterion) {
    let t3 = fixture("T3");
    let sis3 = fixture("SIS3");
    c.bench_function("green/T3", |b| b.iter(|| green(black_box(&t3))));
    c.bench_function("green/SIS3", |b| b.iter(|| green(black_box(&sis3))));
}

fn theta(c: &mut Criterion) {
    let sis2 = fixture("SIS2");
    let budget = Budget::default();
    c.bench_function("theta_exact/SIS2", |b| {
        b.iter(|| theta_exact(black_box(&sis2), &budget).unwrap())
    });
}

fn pointlikes(c: &mut Criterion) {
    let z6 = fixture("Z6");
    let budget = Budget::default();
    c.bench_function("pointlikes/Z6", |b| {
        b.iter(|| aperiodic_pointlikes(black_box(&z6), &budget).unwrap())
    });
}

fn expansion_pipeline(c: &mut Criterion) {
    let t2 = fixture("T2");
    let budget = Budget::default();
    c.bench_function("gst/T2", |b| b.iter(|| gst(black_box(&t2), &budget).unwrap()));
}

fn interval(c: &mut Criterion) {
    let t3 = fixture("T3");
    let budget = Budget::default();
    c.bench_function("complexity_interval/T3", |b| {
        b.iter(|| complexity_interval(black_box(&t3), &budget).unwrap())
    });
}

criterion_group!(benches, green_relations, theta, pointlikes, expansion_pipeline, interval);
criterion_main!(benches);
