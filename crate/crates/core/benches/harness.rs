//! Sequential against rayon execution for the data-parallel scans.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skew_app::harness::gallery::{gallery_ring, resolve_action};
use skew_app::harness::{condition2_holds, is_left_app, theorem3_coherence, Condition2Mode};
use skew_app::monoid::{MonoidKind, OrderedMonoid};
use skew_app::{Exec, Limits, OmegaAction, SeriesRing};

fn modes() -> [(&'static str, Limits); 2] {
    [
        ("sequential", Limits::default().with_exec(Exec::Sequential)),
        ("parallel", Limits::default().with_exec(Exec::Parallel)),
    ]
}

fn series(ring: &str, action: &str) -> SeriesRing {
    let ring = gallery_ring(ring).unwrap();
    let alpha = resolve_action(&ring, action).unwrap();
    let nat = OrderedMonoid::new(MonoidKind::NatAdd);
    SeriesRing::new(OmegaAction::single(&ring, nat, alpha).unwrap())
}

fn condition2(c: &mut Criterion) {
    let mut group = c.benchmark_group("condition2_exhaustive");
    group.sample_size(10);
    for (ring, action) in [("F2^4", "swap"), ("M2F2", "inner:11")] {
        let s = series(ring, action);
        for (mode, limits) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, ring), &s, |b, s| {
                b.iter(|| condition2_holds(s.action(), Condition2Mode::Exhaustive, &limits, 0).unwrap())
            });
        }
    }
    group.finish();
}

fn coherence(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem3_coherence_200");
    group.sample_size(10);
    let s = series("F2^4", "swap");
    for (mode, limits) in modes() {
        group.bench_function(mode, |b| b.iter(|| theorem3_coherence(&s, 200, 1, &limits).unwrap()));
    }
    group.finish();
}

fn left_app(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_left_app");
    let ring = gallery_ring("Z64").unwrap();
    for (mode, limits) in modes() {
        group.bench_function(mode, |b| b.iter(|| is_left_app(&ring, &limits)));
    }
    group.finish();
}

criterion_group!(benches, condition2, coherence, left_app);
criterion_main!(benches);
