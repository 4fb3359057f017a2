use crate::config::{ParticleConfiguration, SpinConfiguration};
use crate::error::{Error, Result};
use crate::kernel::LongRangeKernel;
use crate::observables::rank;
use crate::params::ModelParams;
use crate::scalar::Scalar;
use crate::standup::SiteLocator;
use crate::transition::{Move, TransitionRecord};
use num_rational::Rational64;

fn finite_kernel<S>(params: &ModelParams<S>) -> Result<&LongRangeKernel> {
    match params.kernel.long_range() {
        Some(k) if k.is_finite_support() => Ok(k),
        Some(_) => Err(Error::Unsupported("long-range dynamics need a finite-support kernel".into())),
        None => Err(Error::Unsupported("long-range dynamics need a long-range kernel".into())),
    }
}

/// Energy change when the +1 at k and the -1 at l exchange:
/// Σ_{i != k, l} σ_i (J(i, k) - J(i, l)).
pub fn lr_energy_change(sigma: &SpinConfiguration, k: i64, l: i64, kernel: &LongRangeKernel) -> Rational64 {
    let reach = kernel.range() as i64;
    (k.min(l) - reach..=k.max(l) + reach)
        .filter(|&i| i != k && i != l)
        .map(|i| (kernel.pair(i, k) - kernel.pair(i, l)) * sigma.spin_value(i))
        .sum()
}

/// Rate of exchanging the +1 at k with the -1 at l.
pub fn lr_ising_rate<S: Scalar>(sigma: &SpinConfiguration, k: i64, l: i64, params: &ModelParams<S>) -> Result<S> {
    let kernel = finite_kernel(params)?;
    if !sigma.spin(k) || sigma.spin(l) {
        return Err(Error::InvalidParams(format!("site {k} must hold +1 and site {l} must hold -1")));
    }
    Ok(params.q_pow(k - l) * params.down_rate(lr_energy_change(sigma, k, l, kernel)))
}

fn exchanges(sigma: &SpinConfiguration, cap: u64, restricted: bool) -> Vec<(i64, i64)> {
    let budget = cap.saturating_sub(rank(sigma)) as i64;
    let mut out = Vec::new();
    for k in sigma.first_plus()..=sigma.last_minus() + budget {
        if !sigma.spin(k) {
            continue;
        }
        for l in sigma.first_plus() - budget..=sigma.last_minus() {
            if sigma.spin(l) || k - l > budget {
                continue;
            }
            if restricted && (k.min(l) + 1..k.max(l)).any(|i| sigma.spin(i)) {
                continue;
            }
            out.push((k, l));
        }
    }
    out
}

fn ising_moves<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>, cap: u64, restricted: bool) -> Result<Vec<TransitionRecord<SpinConfiguration, S>>> {
    let kernel = finite_kernel(params)?;
    Ok(exchanges(sigma, cap, restricted)
        .into_iter()
        .map(|(k, l)| TransitionRecord {
            source: sigma.clone(),
            target: sigma.swapped(k, l),
            rate: params.q_pow(k - l) * params.down_rate(lr_energy_change(sigma, k, l, kernel)),
            descriptor: Move::Swap { plus: k, minus: l },
        })
        .collect())
}

/// Every exchange of a +1 with a -1 whose result ranks at most `cap`.
pub fn lr_ising_transitions<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>, cap: u64) -> Result<Vec<TransitionRecord<SpinConfiguration, S>>> {
    ising_moves(sigma, params, cap, false)
}

/// Exchanges where the -1 meets one of the two +1 spins bounding its run.
pub fn restricted_ising_transitions<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>, cap: u64) -> Result<Vec<TransitionRecord<SpinConfiguration, S>>> {
    ising_moves(sigma, params, cap, true)
}

/// A particle move together with the spin sites it exchanges.
struct StackMove {
    target: ParticleConfiguration,
    plus: i64,
    minus: i64,
    descriptor: Move,
}

/// Moves generated by the stack rules: the -1 spin `m` steps past S_i
/// exchanges with the +1 spin S_a, or a -1 spin `m` steps left of S_1
/// exchanges with S_a.
fn stack_moves(omega: &ParticleConfiguration, n: i64, cap: u64, restricted: bool) -> Vec<StackMove> {
    let sites = SiteLocator::new(omega, n);
    let rank = omega.rank();
    let len = omega.len();
    let w = |r: usize| omega.get(r);
    let padded = |size: usize| {
        let mut v = omega.occupations().to_vec();
        v.resize(size.max(len), 0);
        v
    };
    let mut out = Vec::new();

    for i in 1..=len {
        for m in 1..=w(i) {
            let minus = sites.site(i) + m as i64;
            let right_from = if restricted { i } else { 1 };
            for a in right_from..=i {
                let plus = sites.site(a);
                let distance = (minus - plus) as u64;
                let mut v = padded(i);
                if a == i {
                    if a >= 2 {
                        v[i - 2] += m;
                    }
                } else {
                    if a >= 2 {
                        v[a - 2] = w(a - 1) + w(a) + 1;
                    }
                    for r in a..=i - 2 {
                        v[r - 1] = w(r + 1);
                    }
                    v[i - 2] = m - 1;
                }
                v[i - 1] = w(i) - m;
                let target = ParticleConfiguration::from_occupations(v);
                let descriptor = if a == 1 {
                    Move::BoundaryOut { origin: i, count: m, index: m, distance }
                } else {
                    Move::Hop { origin: i, target: a - 1, count: m, index: m, distance }
                };
                out.push(StackMove { target, plus, minus, descriptor });
            }
            let left_to = if restricted { i + 1 } else { usize::MAX };
            let mut a = i + 1;
            while a <= left_to {
                let plus = sites.site(a);
                let distance = (plus - minus) as u64;
                if rank + distance > cap {
                    break;
                }
                let mut v = padded(a);
                v[i - 1] = m - 1;
                if a == i + 1 {
                    v[a - 1] = w(a) + w(i) - m + 1;
                } else {
                    v[i] = w(i) - m;
                    for r in i + 2..a {
                        v[r - 1] = w(r - 1);
                    }
                    v[a - 1] = w(a - 1) + w(a) + 1;
                }
                let target = ParticleConfiguration::from_occupations(v);
                let descriptor = Move::Hop { origin: i, target: a, count: w(i) - m + 1, index: m, distance };
                out.push(StackMove { target, plus, minus, descriptor });
                a += 1;
            }
        }
    }

    let first = sites.site(1);
    let last_a = if restricted { 1 } else { usize::MAX };
    let mut a = 1;
    while a <= last_a && rank + (sites.site(a) - first + 1) as u64 <= cap {
        let plus = sites.site(a);
        let mut entering = 1u32;
        loop {
            let minus = first - entering as i64;
            let distance = (plus - minus) as u64;
            if rank + distance > cap {
                break;
            }
            let mut v = padded(a);
            if a == 1 {
                v[0] = w(1) + entering;
            } else {
                v[0] = entering - 1;
                for r in 2..a {
                    v[r - 1] = w(r - 1);
                }
                v[a - 1] = w(a - 1) + w(a) + 1;
            }
            let target = ParticleConfiguration::from_occupations(v);
            let descriptor = Move::BoundaryIn { target: a, count: entering, distance };
            out.push(StackMove { target, plus, minus, descriptor });
            entering += 1;
        }
        a += 1;
    }
    out
}

/// Energy change of a stack move from the +1 sites alone; the sum over all
/// sites cancels for translation-invariant kernels.
fn particle_energy_change(sites: &SiteLocator, plus: i64, minus: i64, kernel: &LongRangeKernel) -> Rational64 {
    let reach = plus.max(minus) + kernel.range() as i64;
    let mut total = Rational64::from_integer(0);
    let mut r = 1;
    loop {
        let s = sites.site(r);
        if s > reach {
            break;
        }
        if s != plus {
            total += kernel.pair(s, plus) - kernel.pair(s, minus);
        }
        r += 1;
    }
    total * 2
}

fn particle_moves<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>, cap: u64, restricted: bool) -> Result<Vec<TransitionRecord<ParticleConfiguration, S>>> {
    let kernel = finite_kernel(params)?;
    let sites = SiteLocator::new(omega, params.n);
    Ok(stack_moves(omega, params.n, cap, restricted)
        .into_iter()
        .map(|mv| {
            let de = particle_energy_change(&sites, mv.plus, mv.minus, kernel);
            TransitionRecord {
                source: omega.clone(),
                target: mv.target,
                rate: params.q_pow(mv.plus - mv.minus) * params.down_rate(de),
                descriptor: mv.descriptor,
            }
        })
        .collect())
}

/// Stood-up long-range moves: bulk hops with stack shifts and merges,
/// boundary exits, and boundary entries, truncated at rank `cap`.
pub fn lr_particle_transitions<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>, cap: u64) -> Result<Vec<TransitionRecord<ParticleConfiguration, S>>> {
    particle_moves(omega, params, cap, false)
}

/// Stack tops splitting off to a neighbouring site, plus entries at -1.
pub fn restricted_particle_transitions<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>, cap: u64) -> Result<Vec<TransitionRecord<ParticleConfiguration, S>>> {
    particle_moves(omega, params, cap, true)
}
