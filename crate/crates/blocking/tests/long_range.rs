use blocking::config::ParticleConfiguration;
use blocking::dynamics_lr::{
    kappa_weight, lr_ising_transitions, lr_particle_transitions, natural_transitions, restricted_ising_transitions,
    restricted_particle_transitions,
};
use blocking::dynamics_nn::{ising_transitions, standup_transitions};
use blocking::kernel::{Kernel, LongRangeKernel};
use blocking::observables::{enumerate_particles, enumerate_spin_sector, particle_weight, rank, weight};
use blocking::params::{ratio, ModelParams};
use blocking::reversibility::{build_chain, check_detailed_balance, is_irreducible, stationarity_check, within_cap, CheckMode};
use blocking::standup::{lay_down, stand_up};
use blocking::transition::Move;
use num_rational::{BigRational, Rational64};

type Params = ModelParams<BigRational>;

fn long_range(profile: &[i64]) -> Kernel {
    Kernel::LongRange(LongRangeKernel::new(profile.iter().map(|&g| Rational64::from_integer(g)).collect(), None).unwrap())
}

fn settings() -> Vec<Params> {
    let mut out = Vec::new();
    for n in [-2, 0, 1, 3] {
        for (profile, c) in [(&[1, 1][..], Rational64::new(0, 1)), (&[2, 0, 1][..], Rational64::new(1, 2))] {
            out.push(ModelParams::new(&ratio(1, 2), &ratio(1, 3), c, n, long_range(profile)).unwrap());
        }
    }
    out
}

#[test]
fn long_range_ising_rates_are_reversible() {
    for p in settings() {
        for restricted in [false, true] {
            let cap = 5;
            let report = check_detailed_balance(
                enumerate_spin_sector(p.n, cap),
                |s| {
                    let moves = if restricted { restricted_ising_transitions(s, &p, cap)? } else { lr_ising_transitions(s, &p, cap)? };
                    Ok(within_cap(moves, cap, rank))
                },
                |s| Ok(weight(s, &p)?.value),
                CheckMode::Exact,
            )
            .unwrap();
            assert!(report.passed(), "n={} restricted={restricted}: {:?}", p.n, report.failures.first());
        }
    }
}

#[test]
fn stack_moves_are_the_image_of_spin_exchanges() {
    for p in settings() {
        let cap = 5;
        for restricted in [false, true] {
            for sigma in enumerate_spin_sector(p.n, cap) {
                let omega = stand_up(&sigma, p.n).unwrap();
                let spins = if restricted { restricted_ising_transitions(&sigma, &p, cap) } else { lr_ising_transitions(&sigma, &p, cap) };
                let mut spin_side: Vec<_> = spins
                    .unwrap()
                    .into_iter()
                    .map(|t| {
                        let Move::Swap { plus, minus } = t.descriptor else { unreachable!() };
                        (stand_up(&t.target, p.n).unwrap(), t.rate, plus.abs_diff(minus))
                    })
                    .collect();
                let particles = if restricted { restricted_particle_transitions(&omega, &p, cap) } else { lr_particle_transitions(&omega, &p, cap) };
                let mut particle_side: Vec<_> =
                    particles.unwrap().into_iter().map(|t| (t.target, t.rate, t.descriptor.distance())).collect();
                spin_side.sort_by(|a, b| a.0.cmp(&b.0));
                particle_side.sort_by(|a, b| a.0.cmp(&b.0));
                assert_eq!(spin_side, particle_side, "{omega} in sector {}", p.n);
            }
        }
    }
}

#[test]
fn restricted_moves_are_a_sublist() {
    let p = &settings()[1];
    for omega in enumerate_particles(6) {
        let all = lr_particle_transitions(&omega, p, 6).unwrap();
        for t in restricted_particle_transitions(&omega, p, 6).unwrap() {
            assert!(all.iter().any(|a| a.target == t.target && a.rate == t.rate && a.descriptor == t.descriptor));
        }
    }
}

#[test]
fn stood_up_long_range_rates_are_reversible() {
    for p in settings() {
        let cap = 6;
        let report = check_detailed_balance(
            enumerate_particles(cap),
            |w| lr_particle_transitions(w, &p, cap),
            |w| Ok(particle_weight(w, &p)?.value),
            CheckMode::Exact,
        )
        .unwrap();
        assert!(report.passed(), "n={}: {:?}", p.n, report.failures.first());
        assert!(report.pairs_checked > 100);
    }
}

#[test]
fn nearest_embedding_reproduces_site_rates() {
    let nn = Params::new(&ratio(1, 2), &ratio(1, 3), Rational64::new(0, 1), 0, Kernel::Constant).unwrap();
    let lr = nn.with_kernel(long_range(&[1])).unwrap();
    for omega in enumerate_particles(6) {
        let sigma = lay_down(&omega, 0);
        let mut a: Vec<_> = ising_transitions(&sigma, &nn).unwrap().into_iter().map(|t| (t.target, t.rate)).collect();
        let mut b: Vec<_> = restricted_ising_transitions(&sigma, &lr, 100)
            .unwrap()
            .into_iter()
            .filter(|t| matches!(t.descriptor, Move::Swap { plus, minus } if plus.abs_diff(minus) == 1))
            .map(|t| (t.target, t.rate))
            .collect();
        a.sort_by(|x, y| x.0.window_string().cmp(&y.0.window_string()).then(x.0.start().cmp(&y.0.start())));
        b.sort_by(|x, y| x.0.window_string().cmp(&y.0.window_string()).then(x.0.start().cmp(&y.0.start())));
        assert_eq!(a, b);
        let mut tables: Vec<_> = standup_transitions(&omega, &nn).unwrap().into_iter().map(|t| (t.target, t.rate)).collect();
        let mut stacks: Vec<_> = restricted_particle_transitions(&omega, &lr, 100)
            .unwrap()
            .into_iter()
            .filter(|t| t.descriptor.distance() == 1)
            .map(|t| (t.target, t.rate))
            .collect();
        tables.sort_by(|x, y| x.0.cmp(&y.0));
        stacks.sort_by(|x, y| x.0.cmp(&y.0));
        assert_eq!(tables, stacks);
    }
}

#[test]
fn natural_dynamics_are_reversible_for_kappa() {
    for n in -2..=3 {
        let p = Params::new(&ratio(1, 2), &ratio(1, 3), Rational64::new(2, 3), n, Kernel::Constant).unwrap();
        let cap = 6;
        let report = check_detailed_balance(
            enumerate_particles(cap),
            |w| Ok(natural_transitions(w, &p, cap)),
            |w| Ok(kappa_weight(w, &p)?.value),
            CheckMode::Exact,
        )
        .unwrap();
        assert!(report.passed(), "n={n}: {:?}", report.failures.first());
    }
}

#[test]
fn natural_dynamics_have_zero_residual() {
    let p = Params::new(&ratio(1, 2), &ratio(1, 3), Rational64::new(0, 1), 0, Kernel::Constant).unwrap();
    let residual = stationarity_check(
        enumerate_particles(4),
        |w| Ok(natural_transitions(w, &p, 4)),
        |w| Ok(kappa_weight(w, &p)?.value),
    )
    .unwrap();
    assert!(residual.exact_zero);
    let chain = build_chain(enumerate_particles(4), |w: &ParticleConfiguration| Ok(natural_transitions(w, &p, 4))).unwrap();
    assert!(is_irreducible(&chain));
}

#[test]
fn kappa_of_empty_configuration() {
    for n in -2..=3 {
        let p = Params::new(&ratio(1, 2), &ratio(1, 3), Rational64::new(1, 2), n, Kernel::Constant).unwrap();
        let w = kappa_weight(&ParticleConfiguration::empty(), &p).unwrap();
        assert_eq!(w.value, p.q_pow(n * (n + 1)));
        assert_eq!(w.z_exp, n);
    }
}
