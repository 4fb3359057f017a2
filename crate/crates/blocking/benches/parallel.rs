use blocking::dynamics_nn::standup_transitions;
use blocking::identities::inhomogeneous::BalancedSides;
use blocking::kernel::Kernel;
use blocking::observables::{enumerate_particles, particle_weight};
use blocking::par;
use blocking::params::{ratio, ModelParams};
use blocking::qseries::blocking_product;
use blocking::reversibility::{check_detailed_balance, within_cap, CheckMode};
use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::{BigRational, Rational64};
use std::hint::black_box;

fn modes(c: &mut Criterion, name: &str, mut work: impl FnMut()) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for (label, sequential) in [("parallel", false), ("sequential", true)] {
        par::set_sequential(sequential);
        group.bench_function(label, |b| b.iter(&mut work));
    }
    par::set_sequential(false);
    group.finish();
}

fn series(c: &mut Criterion) {
    modes(c, "blocking_product_24", || {
        black_box(blocking_product(24));
    });
    modes(c, "balanced_sides_18", || {
        black_box(BalancedSides::new(18).sector_sum(1));
    });
}

fn balance(c: &mut Criterion) {
    let p = ModelParams::<BigRational>::new(&ratio(1, 4), &ratio(1, 3), Rational64::new(1, 2), 1, Kernel::Linear).unwrap();
    let cap = 9;
    modes(c, "detailed_balance_rank_9", || {
        let report = check_detailed_balance(
            enumerate_particles(cap),
            |w| Ok(within_cap(standup_transitions(w, &p)?, cap, |x| x.rank())),
            |w| Ok(particle_weight(w, &p)?.value),
            CheckMode::Exact,
        )
        .unwrap();
        black_box(report);
    });
}

criterion_group!(benches, series, balance);
criterion_main!(benches);
