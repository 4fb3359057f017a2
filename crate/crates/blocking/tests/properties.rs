use blocking::combinatorics::frobenius::{from_frobenius, to_frobenius, wright, wright_inverse};
use blocking::config::ParticleConfiguration;
use blocking::dynamics_lr::fc_from_particles;
use blocking::identities::profiles::{side_degree, RunProfile, LEFT_SENTINEL, RIGHT_SENTINEL};
use blocking::identities::runs::{closed_run_sums, direct_run_sums};
use blocking::kernel::Kernel;
use blocking::observables::{conserved_n, field_fc, rank};
use blocking::qseries::{LaurentPoly, TruncatedSeries};
use blocking::standup::{lay_down, stand_up};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

const CAP: usize = 6;

fn partition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..7, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |mut p, (a, b, c)| {
            p.add_term(a, b, BigRational::from_integer(BigInt::from(c)));
            p
        })
    })
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0..=CAP, laurent()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(TruncatedSeries::zero(CAP), |mut s, (d, p)| {
            s.add_at(d, &p);
            s
        })
    })
}

fn profile() -> impl Strategy<Value = RunProfile> {
    (prop::collection::vec(1u32..4, 0..3), prop::collection::vec(1u32..4, 0..3))
        .prop_map(|(l, r)| RunProfile::new(l, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_form_a_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&TruncatedSeries::one(CAP)), a);
    }

    #[test]
    fn geometric_inverse_inverts(t in laurent(), b in 1i64..4) {
        let inv = TruncatedSeries::geometric_inverse(CAP, &t, b).unwrap();
        let factor = TruncatedSeries::binomial(CAP, t.neg(), b as usize);
        prop_assert_eq!(inv.mul(&factor), TruncatedSeries::one(CAP));
    }

    #[test]
    fn standing_up_inverts_laying_down(p in partition(), n in -3i64..=3) {
        let omega = ParticleConfiguration::from_partition(&p);
        let sigma = lay_down(&omega, n);
        prop_assert_eq!(conserved_n(&sigma), n);
        prop_assert_eq!(rank(&sigma), omega.rank());
        prop_assert_eq!(stand_up(&sigma, n).unwrap(), omega);
    }

    #[test]
    fn field_has_two_evaluations(p in partition(), n in -3i64..=3, num in -3i64..=3, den in 1i64..4) {
        let omega = ParticleConfiguration::from_partition(&p);
        let c = Rational64::new(num, den);
        prop_assert_eq!(fc_from_particles(&omega, n, c), field_fc(&lay_down(&omega, n), c).fc);
    }

    #[test]
    fn frobenius_symbols_round_trip(p in partition(), m in -4i64..=4) {
        let fp = to_frobenius(&p);
        prop_assert_eq!(from_frobenius(&fp), p);
        let image = wright(&fp, m);
        prop_assert_eq!(image.k_statistic(), fp.k_statistic());
        prop_assert_eq!(wright_inverse(&image), fp);
    }

    #[test]
    fn side_degree_is_monotone(parts in prop::collection::vec(1u32..5, 1..4), i in 0usize..3) {
        let i = i % parts.len();
        let mut bigger = parts.clone();
        bigger[i] += 1;
        for s in [LEFT_SENTINEL, RIGHT_SENTINEL] {
            prop_assert!(side_degree(&bigger, s) > side_degree(&parts, s));
        }
    }

    #[test]
    fn run_sum_closed_forms(p in profile(), n in -3i64..=3) {
        for kernel in [Kernel::Constant, Kernel::Linear] {
            prop_assert_eq!(closed_run_sums(&kernel, n, &p, 10).unwrap(), direct_run_sums(&kernel, n, &p, 10).unwrap());
        }
    }
}
