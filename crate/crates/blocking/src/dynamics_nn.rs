//! Nearest-neighbour Kawasaki rates on spin configurations and the rates of
//! the stood-up particle process.

use crate::config::{ParticleConfiguration, SpinConfiguration};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::scalar::Scalar;
use crate::standup::SiteLocator;
use crate::transition::{Move, TransitionRecord};
use num_rational::Rational64;

pub type SpinTransition<S> = TransitionRecord<SpinConfiguration, S>;
pub type ParticleTransition<S> = TransitionRecord<ParticleConfiguration, S>;

/// Energy change of exchanging the differing spins at i and i + 1: both
/// neighbouring bonds flip between agreement and disagreement.
pub fn swap_energy_change(sigma: &SpinConfiguration, i: i64, params: &ModelParams<impl Scalar>) -> Rational64 {
    let j = |s| params.kernel.bond(s);
    let flip = |agree: bool, s| if agree { j(s) } else { -j(s) };
    flip(sigma.spin(i - 1) == sigma.spin(i), i - 1) + flip(sigma.spin(i + 1) == sigma.spin(i + 2), i + 1)
}

/// Rate of exchanging the spins at i and i + 1; zero when they agree.
pub fn ising_rate<S: Scalar>(sigma: &SpinConfiguration, i: i64, params: &ModelParams<S>) -> S {
    if sigma.spin(i) == sigma.spin(i + 1) {
        return S::zero();
    }
    let q = if sigma.spin(i + 1) { params.q.clone() } else { params.q_pow(-1) };
    params.down_rate(swap_energy_change(sigma, i, params)) * q
}

/// Every adjacent exchange of differing spins.
pub fn ising_transitions<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>) -> Result<Vec<SpinTransition<S>>> {
    if !params.kernel.is_nearest_neighbour() {
        return Err(Error::Unsupported("nearest-neighbour dynamics need a nearest-neighbour kernel".into()));
    }
    Ok((sigma.first_plus() - 1..=sigma.last_minus())
        .filter(|&i| sigma.spin(i) != sigma.spin(i + 1))
        .map(|i| {
            let (plus, minus) = if sigma.spin(i) { (i, i + 1) } else { (i + 1, i) };
            TransitionRecord {
                source: sigma.clone(),
                target: sigma.swapped(i, i + 1),
                rate: ising_rate(sigma, i, params),
                descriptor: Move::Swap { plus, minus },
            }
        })
        .collect())
}

/// Stood-up transitions with the tabulated bulk and boundary rates.
pub fn standup_transitions<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>) -> Result<Vec<ParticleTransition<S>>> {
    if !params.kernel.is_nearest_neighbour() {
        return Err(Error::Unsupported("the tabulated rates need a nearest-neighbour kernel".into()));
    }
    let j = |s: i64| params.kernel.bond(s);
    let sites = SiteLocator::new(omega, params.n);
    let q = params.q.clone();
    let q_inv = params.q_pow(-1);
    let mut out = Vec::new();
    let mut push = |target: ParticleConfiguration, rate: S, descriptor| {
        out.push(TransitionRecord { source: omega.clone(), target, rate, descriptor });
    };
    let moved = |from: usize, to: usize| {
        let mut occ = omega.occupations().to_vec();
        occ.resize(omega.len().max(from).max(to), 0);
        if from > 0 {
            occ[from - 1] -= 1;
        }
        if to > 0 {
            occ[to - 1] += 1;
        }
        ParticleConfiguration::from_occupations(occ)
    };

    for r in 2..=omega.len() + 1 {
        let s = sites.site(r);
        let (here, right) = (omega.get(r), omega.get(r - 1));
        if here >= 1 {
            let rate = match (here, right) {
                (1, 0) => params.up_rate(j(s + 1) - j(s - 1)),
                (1, _) => params.up_rate(j(s - 1) + j(s + 1)),
                (_, 0) => params.down_rate(j(s - 1) + j(s + 1)),
                _ => params.down_rate(j(s + 1) - j(s - 1)),
            };
            let descriptor = Move::Hop { origin: r, target: r - 1, count: 1, index: 1, distance: 1 };
            push(moved(r, r - 1), rate * q_inv.clone(), descriptor);
        }
        if right >= 1 {
            let rate = match (here, right) {
                (0, 1) => params.down_rate(j(s) - j(sites.site(r - 1))),
                (0, _) => params.down_rate(j(s - 2) + j(s)),
                (_, 1) => params.up_rate(j(s - 2) + j(s)),
                _ => params.up_rate(j(s) - j(s - 2)),
            };
            let descriptor = Move::Hop { origin: r - 1, target: r, count: 1, index: right, distance: 1 };
            push(moved(r - 1, r), rate * q.clone(), descriptor);
        }
    }

    let s1 = sites.site(1);
    let first = omega.get(1);
    if first >= 1 {
        let rate = if first == 1 {
            params.up_rate(j(s1 - 1) + j(s1 + 1))
        } else {
            params.down_rate(j(s1 + 1) - j(s1 - 1))
        };
        let descriptor = Move::BoundaryOut { origin: 1, count: 1, index: 1, distance: 1 };
        push(moved(1, 0), rate * q_inv, descriptor);
    }
    let rate = if first == 0 {
        params.down_rate(j(s1 - 2) + j(s1))
    } else {
        params.up_rate(j(s1) - j(s1 - 2))
    };
    push(moved(0, 1), rate * q, Move::BoundaryIn { target: 1, count: 1, distance: 1 });
    Ok(out)
}

/// Normalises weights over a finite state list.
pub fn conditional_measure<S: Scalar>(weights: &[S]) -> Result<Vec<S>> {
    if weights.is_empty() {
        return Err(Error::EmptyStates);
    }
    let total = weights.iter().cloned().fold(S::zero(), |a, b| a + b);
    Ok(weights.iter().map(|w| w.clone() / total.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Kernel;
    use crate::params::ratio;
    use num_rational::BigRational;

    fn params(u: (i64, i64), q: (i64, i64), kernel: Kernel, n: i64) -> ModelParams<BigRational> {
        ModelParams::new(&ratio(u.0, u.1), &ratio(q.0, q.1), Rational64::from_integer(0), n, kernel).unwrap()
    }

    /// Rate of the swap at (i, i+1) read off the six listed cases.
    fn listed_rate(sigma: &SpinConfiguration, i: i64, p: &ModelParams<BigRational>) -> BigRational {
        let j = |s| p.kernel.bond(s);
        let d_before = (sigma.spin(i - 1) != sigma.spin(i)) as i32 + (sigma.spin(i + 1) != sigma.spin(i + 2)) as i32;
        let left = sigma.spin(i + 1);
        let q = if left { p.q.clone() } else { p.q_pow(-1) };
        let sum = j(i - 1) + j(i + 1);
        let diff = j(i + 1) - j(i - 1);
        let rate = match d_before {
            0 => p.down_rate(sum),
            2 => p.up_rate(sum),
            _ if left => p.up_rate(diff),
            _ => p.down_rate(diff),
        };
        rate * q
    }

    #[test]
    fn worked_rates() {
        let p = params((1, 2), (1, 3), Kernel::Constant, 0);
        let s = SpinConfiguration::parse(0, "--++").unwrap();
        assert_eq!(ising_rate(&s, 1, &p), ratio(1, 15));
        let s = SpinConfiguration::parse(0, "-+--").unwrap();
        assert_eq!(ising_rate(&s, 1, &p), ratio(3, 2));
        let s = SpinConfiguration::parse(0, "-++-").unwrap();
        assert_eq!(ising_rate(&s, 1, &p), ratio(0, 1));
    }

    #[test]
    fn listed_cases_agree_for_constant_coupling() {
        let p = params((1, 2), (1, 3), Kernel::Constant, 0);
        for bits in 0u32..16 {
            let spins: Vec<bool> = (0..4).map(|k| bits >> k & 1 == 1).collect();
            let s = SpinConfiguration::new(0, spins.clone());
            if spins[1] != spins[2] {
                assert_eq!(ising_rate(&s, 1, &p), listed_rate(&s, 1, &p), "{s}");
            }
        }
    }

    #[test]
    fn listed_neutral_case_has_a_sign_slip_for_linear_coupling() {
        let p = params((1, 4), (1, 3), Kernel::Linear, 0);
        let agrees = SpinConfiguration::parse(3, "--+-").unwrap();
        assert_eq!(ising_rate(&agrees, 4, &p), listed_rate(&agrees, 4, &p));
        let slips = SpinConfiguration::parse(3, "+-++").unwrap();
        assert_ne!(ising_rate(&slips, 4, &p), listed_rate(&slips, 4, &p));
    }

    #[test]
    fn constant_coupling_tables_drop_site_dependence() {
        let p = params((1, 2), (1, 3), Kernel::Constant, 0);
        let omega = ParticleConfiguration::from_occupations(vec![0, 1]);
        let moves = standup_transitions(&omega, &p).unwrap();
        let right = moves.iter().find(|t| matches!(t.descriptor, Move::Hop { origin: 2, target: 1, .. })).unwrap();
        assert_eq!(right.rate, ratio(3, 2));
    }

    #[test]
    fn empty_configuration_only_admits_entry() {
        let p = params((1, 4), (1, 3), Kernel::Linear, 2);
        let moves = standup_transitions(&ParticleConfiguration::empty(), &p).unwrap();
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].descriptor, Move::BoundaryIn { target: 1, count: 1, distance: 1 });
        let s1 = 3;
        assert_eq!(moves[0].rate, p.down_rate(Rational64::from_integer(s1 - 2 + s1)) * ratio(1, 3));
    }

    #[test]
    fn normalisation() {
        assert_eq!(conditional_measure(&[ratio(1, 1)]).unwrap(), vec![ratio(1, 1)]);
        assert_eq!(conditional_measure(&[ratio(1, 1), ratio(3, 1)]).unwrap(), vec![ratio(1, 4), ratio(3, 4)]);
        assert!(conditional_measure::<BigRational>(&[]).is_err());
    }
}
