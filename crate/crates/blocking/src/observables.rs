//! Energies, the external-field functional, the conserved quantity, shifts,
//! weights, and truncated enumeration of sectors.

use crate::combinatorics::partitions::partitions_up_to;
use crate::config::{ParticleConfiguration, SpinConfiguration};
use crate::error::{Error, Result};
use crate::kernel::{to_f64, Kernel, LongRangeKernel};
use crate::params::{ModelParams, Weight};
use crate::scalar::{format_ratio, small_to_big, Scalar};
use crate::standup::{lay_down, SiteLocator};
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

/// Number of disagreeing pairs (i, i + d).
fn disagreements_at(sigma: &SpinConfiguration, d: i64) -> i64 {
    (sigma.first_plus() - d..=sigma.last_minus()).filter(|&i| sigma.spin(i) != sigma.spin(i + d)).count() as i64
}

/// H_J(σ), exact. Long-range kernels must have finite support.
pub fn hamiltonian(sigma: &SpinConfiguration, kernel: &Kernel) -> Result<Rational64> {
    match kernel {
        Kernel::LongRange(lr) => {
            if !lr.is_finite_support() {
                return Err(Error::Divergence(
                    "kernels with a tail have no exact energy; use hamiltonian_f64".into(),
                ));
            }
            Ok((1..=lr.range() as u64).map(|d| lr.at(d) * disagreements_at(sigma, d as i64)).sum())
        }
        nn => Ok((sigma.first_plus() - 1..=sigma.last_minus())
            .filter(|&i| sigma.spin(i) != sigma.spin(i + 1))
            .map(|i| nn.bond(i))
            .sum()),
    }
}

/// Sum over d > from of d * tail(d), or a divergence error.
fn tail_energy(lr: &LongRangeKernel, from: u64) -> Result<f64> {
    let Some(t) = lr.tail() else { return Ok(0.0) };
    if t.amplitude == 0.0 {
        return Ok(0.0);
    }
    if t.exponent <= 2.0 {
        return Err(Error::Divergence(format!(
            "pair sum over a blocking configuration needs tail exponent > 2, got {}",
            t.exponent
        )));
    }
    const EXPLICIT: u64 = 100_000;
    let mut sum = 0.0;
    for d in (from + 1..=from + EXPLICIT).rev() {
        sum += t.amplitude * (d as f64).powf(1.0 - t.exponent);
    }
    let edge = (from + EXPLICIT) as f64 + 0.5;
    sum += t.amplitude * edge.powf(2.0 - t.exponent) / (t.exponent - 2.0);
    Ok(sum)
}

/// H_J(σ) in floating point, including long-range tails.
pub fn hamiltonian_f64(sigma: &SpinConfiguration, kernel: &Kernel) -> Result<f64> {
    match kernel {
        Kernel::LongRange(lr) if !lr.is_finite_support() => {
            let span = (sigma.window().len() as u64).max(lr.range() as u64).max(1);
            let near: f64 =
                (1..=span).map(|d| lr.at_f64(d) * disagreements_at(sigma, d as i64) as f64).sum();
            Ok(near + tail_energy(lr, span)?)
        }
        k => hamiltonian(sigma, k).map(to_f64),
    }
}

/// The external-field functional split as f_c = 2 f0_half - 2 c N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldValue {
    pub f0_half: i64,
    pub n: i64,
    pub fc: Rational64,
}

pub fn field_fc(sigma: &SpinConfiguration, c: Rational64) -> FieldValue {
    let mut f0_half = 0;
    let mut n = 0;
    for i in sigma.first_plus().min(1)..=sigma.last_minus().max(0) {
        let plus = sigma.spin(i);
        if i >= 1 && !plus {
            f0_half += i;
            n += 1;
        } else if i <= 0 && plus {
            f0_half -= i;
            n -= 1;
        }
    }
    FieldValue { f0_half, n, fc: Rational64::from_integer(2 * f0_half) - c * (2 * n) }
}

/// N(σ): -1 spins right of 0 minus +1 spins left of 1.
pub fn conserved_n(sigma: &SpinConfiguration) -> i64 {
    field_fc(sigma, Rational64::zero()).n
}

/// Truncation rank f0/2 - n(n+1)/2, which equals Σ r ω_{-r} after standing up.
pub fn rank(sigma: &SpinConfiguration) -> u64 {
    let f = field_fc(sigma, Rational64::zero());
    (f.f0_half - f.n * (f.n + 1) / 2) as u64
}

/// (τ^k σ)_i = σ_{i+k}.
pub fn shift(sigma: &SpinConfiguration, k: i64) -> SpinConfiguration {
    SpinConfiguration::new(sigma.start() - k, sigma.window().to_vec())
}

/// H^{(n)}(σ) = Σ_i (J(i+n) - J(i)) 1{σ_i != σ_{i+1}}.
pub fn shifted_hamiltonian_correction(sigma: &SpinConfiguration, kernel: &Kernel, n: i64) -> Result<Rational64> {
    if !kernel.is_nearest_neighbour() {
        return Err(Error::Unsupported("the shift correction needs a nearest-neighbour kernel".into()));
    }
    Ok((sigma.first_plus() - 1..=sigma.last_minus())
        .filter(|&i| sigma.spin(i) != sigma.spin(i + 1))
        .map(|i| kernel.bond(i + n) - kernel.bond(i))
        .sum())
}

fn u_power<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>) -> Result<S> {
    match &params.kernel {
        Kernel::LongRange(lr) if !lr.is_finite_support() => {
            let h = hamiltonian_f64(sigma, &params.kernel)?;
            params.u.pow_real(h).ok_or_else(|| Error::Unsupported("tail kernels need float mode".into()))
        }
        k => Ok(params.u_pow(hamiltonian(sigma, k)?)),
    }
}

/// u^{H(σ)} q^{f_c(σ)}, stored as u^H Q^{f0/2} with z^N symbolic.
pub fn weight<S: Scalar>(sigma: &SpinConfiguration, params: &ModelParams<S>) -> Result<Weight<S>> {
    let f = field_fc(sigma, params.c);
    Ok(Weight { value: u_power(sigma, params)? * params.q_pow(2 * f.f0_half), z_exp: f.n })
}

/// Energy exponent of the stood-up stationary weight,
/// Σ_j (J(S_j) + J(S_{j+1} - 1)) 1{ω_{-j} > 0} + J(S_1 - 1).
pub fn particle_energy(omega: &ParticleConfiguration, kernel: &Kernel, n: i64) -> Result<Rational64> {
    if !kernel.is_nearest_neighbour() {
        return hamiltonian(&lay_down(omega, n), kernel);
    }
    let sites = SiteLocator::new(omega, n);
    let mut e = kernel.bond(sites.site(1) - 1);
    for j in 1..=omega.len() {
        if omega.get(j) > 0 {
            e += kernel.bond(sites.site(j)) + kernel.bond(sites.site(j + 1) - 1);
        }
    }
    Ok(e)
}

/// Unnormalised stationary weight of the stood-up process in sector n.
pub fn particle_weight<S: Scalar>(omega: &ParticleConfiguration, params: &ModelParams<S>) -> Result<Weight<S>> {
    let u = match &params.kernel {
        Kernel::LongRange(lr) if !lr.is_finite_support() => u_power(&lay_down(omega, params.n), params)?,
        k => params.u_pow(particle_energy(omega, k, params.n)?),
    };
    Ok(Weight { value: u * params.q_pow(2 * omega.rank() as i64), z_exp: 0 })
}

/// All particle configurations with Σ r ω_{-r} <= cap.
pub fn enumerate_particles(cap: u64) -> Vec<ParticleConfiguration> {
    partitions_up_to(cap as u32).iter().map(|p| ParticleConfiguration::from_partition(p)).collect()
}

/// All σ in sector n with rank <= cap, each once.
pub fn enumerate_spin_sector(n: i64, cap: u64) -> Vec<SpinConfiguration> {
    enumerate_particles(cap).iter().map(|w| lay_down(w, n)).collect()
}

/// One JSON line of an enumeration dump.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationRecord {
    pub sector: i64,
    pub rank: u64,
    pub start: i64,
    pub spins: String,
    pub omega: ParticleConfiguration,
    #[serde(rename = "weight_Q_exponent")]
    pub weight_q_exponent: i64,
    pub weight_u_exponent: String,
}

pub fn enumeration_record(omega: &ParticleConfiguration, n: i64, kernel: &Kernel) -> Result<EnumerationRecord> {
    let sigma = lay_down(omega, n);
    let f = field_fc(&sigma, Rational64::zero());
    Ok(EnumerationRecord {
        sector: n,
        rank: omega.rank(),
        start: sigma.start(),
        spins: sigma.window_string(),
        omega: omega.clone(),
        weight_q_exponent: f.f0_half,
        weight_u_exponent: format_ratio(&small_to_big(hamiltonian(&sigma, kernel)?)),
    })
}
