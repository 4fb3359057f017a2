use crate::config::{ParticleConfiguration, SpinConfiguration};
use crate::error::{Error, Result};
use crate::observables::field_fc;
use crate::params::{ModelParams, Weight};
use crate::scalar::Scalar;
use crate::standup::{lay_down, stand_up, SiteLocator};
use crate::transition::{Move, TransitionRecord};
use num_rational::Rational64;

/// r_i(ω) = max(ω_{-i}, 1), with r_0 = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengths(Vec<u32>);

impl RunLengths {
    pub fn new(omega: &ParticleConfiguration) -> Self {
        Self(omega.occupations().iter().map(|&w| w.max(1)).collect())
    }

    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 1;
        }
        self.0.get(i - 1).copied().unwrap_or(1)
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&r| r as u64).product()
    }
}

/// Block moves of the natural particle dynamics truncated at rank `cap`.
///
/// Moving k particles from -i to -(i-1) shifts the i-th +1 spin k sites right
/// and runs at q^{-k}/(r_{i-1} r_i); moving them to -(i+1) shifts the
/// (i+1)-th +1 spin left at q^k/(r_i r_{i+1}). Exits and entries at -1 are the
/// i = 1 and i = 0 cases.
pub fn natural_transitions<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>, cap: u64) -> Vec<TransitionRecord<ParticleConfiguration, S>> {
    let runs = RunLengths::new(omega);
    let rank = omega.rank();
    let occ = omega.occupations();
    let rate = |k: u32, up: bool, a: usize, b: usize| {
        let e = if up { k as i64 } else { -(k as i64) };
        params.q_pow(e) / S::from_i64((runs.get(a) * runs.get(b)) as i64)
    };
    let moved = |from: Option<usize>, to: Option<usize>, k: u32| {
        let mut v = occ.to_vec();
        v.resize(occ.len() + 1, 0);
        if let Some(i) = from {
            v[i - 1] -= k;
        }
        if let Some(j) = to {
            v[j - 1] += k;
        }
        ParticleConfiguration::from_occupations(v)
    };
    let mut out = Vec::new();
    for i in 1..=occ.len() {
        let w = occ[i - 1];
        for k in 1..=w {
            let index = w - k + 1;
            let (target, descriptor) = if i == 1 {
                (moved(Some(1), None, k), Move::BoundaryOut { origin: 1, count: k, index, distance: k as u64 })
            } else {
                (moved(Some(i), Some(i - 1), k), Move::Hop { origin: i, target: i - 1, count: k, index, distance: k as u64 })
            };
            out.push(TransitionRecord { source: omega.clone(), target, rate: rate(k, false, i - 1, i), descriptor });
            if rank + k as u64 <= cap {
                out.push(TransitionRecord {
                    source: omega.clone(),
                    target: moved(Some(i), Some(i + 1), k),
                    rate: rate(k, true, i, i + 1),
                    descriptor: Move::Hop { origin: i, target: i + 1, count: k, index, distance: k as u64 },
                });
            }
        }
    }
    for k in 1..=cap.saturating_sub(rank) as u32 {
        out.push(TransitionRecord {
            source: omega.clone(),
            target: moved(None, Some(1), k),
            rate: rate(k, true, 0, 1),
            descriptor: Move::BoundaryIn { target: 1, count: k, distance: k as u64 },
        });
    }
    out
}

/// f_c((T^n)^{-1} ω) as a sum of per-run contributions: -1 spins at sites
/// >= 1 in run r add 2(i - c), +1 spins at sites <= 0 add -2(S_r - c).
pub fn fc_from_particles(omega: &ParticleConfiguration, n: i64, c: Rational64) -> Rational64 {
    let sites = SiteLocator::new(omega, n);
    let int = Rational64::from_integer;
    let first = sites.site(1);
    let mut total = if first >= 2 { int(first - 1) * (int(first) - c * 2) } else { int(0) };
    let top = omega.len().max((-n).max(0) as usize) + 1;
    for r in 1..=top {
        let ri = r as i64;
        let here = sites.suffix(r);
        let beyond = sites.suffix(r + 1);
        if beyond < n + ri {
            let hi = n + ri - beyond;
            let lo = (n + ri + 1 - here).max(1);
            total += int(hi - lo + 1) * (int(hi + lo) - c * 2);
        }
        if here >= n + ri {
            total -= (int(n + ri - here) - c) * 2;
        }
    }
    total
}

/// λ(σ) ∝ q^{f_c(σ)} Π_{i>=1} r_i(σ), with z^N symbolic.
pub fn lambda_weight<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>) -> Result<Weight<S>> {
    let omega = stand_up(sigma, params.n)?;
    let f = field_fc(sigma, params.c);
    Ok(Weight {
        value: params.q_pow(2 * f.f0_half) * S::from_i64(RunLengths::new(&omega).product() as i64),
        z_exp: f.n,
    })
}

/// κ(ω) = λ((T^n)^{-1} ω), evaluated by laying down and by the per-run sum;
/// a disagreement is reported as an inconsistency.
pub fn kappa_weight<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>) -> Result<Weight<S>> {
    let n = params.n;
    let laid = lambda_weight(&lay_down(omega, n), params)?;
    let zero = Rational64::from_integer(0);
    let direct = fc_from_particles(omega, n, zero);
    let from_field = field_fc(&lay_down(omega, n), zero).fc;
    if direct != from_field || fc_from_particles(omega, n, params.c) != field_fc(&lay_down(omega, n), params.c).fc {
        return Err(Error::Inconsistent(format!("f_c of {omega} in sector {n}: runs give {direct}, spins give {from_field}")));
    }
    Ok(laid)
}
