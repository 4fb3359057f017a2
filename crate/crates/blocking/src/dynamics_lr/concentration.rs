//! Partial sums of the summability conditions under which the Ising measure
//! concentrates on blocking configurations. These give numerical evidence,
//! never a proof.

use crate::error::{Error, Result};
use crate::kernel::{to_f64, Kernel, LongRangeKernel};
use crate::params::ModelParams;
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    #[serde(rename = "lemma2.1")]
    NearestNeighbour,
    #[serde(rename = "lemma6.1")]
    LongRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SummableEvidence,
    DivergingEvidence,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub condition: Condition,
    /// Term m combines the site indices 1 - m and m.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Geometric mean of successive term ratios over the last quarter.
    pub decay_ratio: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// 1 / (1 + e^x) without overflow.
fn logistic_tail(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

const EXPLICIT: u64 = 100_000;

/// Σ_d d^power g(d), with the tail beyond the explicit range replaced by its
/// integral.
fn moment(lr: &LongRangeKernel, power: i32) -> Result<f64> {
    let tail = lr.tail().filter(|t| t.amplitude > 0.0);
    let last = if tail.is_some() { EXPLICIT.max(lr.range() as u64) } else { lr.range() as u64 };
    let mut sum: f64 = (1..=last).map(|d| (d as f64).powi(power) * lr.at_f64(d)).sum();
    if let Some(t) = tail {
        let p = t.exponent - power as f64;
        if p <= 1.0 {
            return Err(Error::Divergence(format!("Σ d^{power} g(d) diverges for tail exponent {}", t.exponent)));
        }
        sum += t.amplitude * (last as f64 + 0.5).powf(1.0 - p) / (p - 1.0);
    }
    Ok(sum)
}

fn verdict(terms: &[f64]) -> (Option<f64>, Verdict) {
    let tail = &terms[terms.len() - (terms.len() / 4).max(2).min(terms.len())..];
    let last = *terms.last().unwrap();
    if !last.is_finite() {
        return (None, Verdict::DivergingEvidence);
    }
    if last == 0.0 || last < 1e-300 {
        return (Some(0.0), Verdict::SummableEvidence);
    }
    let ratios: Vec<f64> = tail.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect();
    if ratios.is_empty() {
        return (None, Verdict::Inconclusive);
    }
    let ratio = (ratios.iter().map(|r| r.max(1e-300).ln()).sum::<f64>() / ratios.len() as f64).exp();
    let v = if ratio < 0.95 {
        Verdict::SummableEvidence
    } else if ratio >= 1.0 || last > 1e-3 * terms[0].max(f64::MIN_POSITIVE) {
        Verdict::DivergingEvidence
    } else {
        Verdict::Inconclusive
    };
    (Some(ratio), v)
}

/// Evaluates the first `horizon` combined terms of the summability series for
/// the model's kernel: the nearest-neighbour condition for site-indexed bonds
/// and the long-range condition for pair kernels.
pub fn concentration_report<S: Scalar>(params: &ModelParams<S>, horizon: usize) -> Result<ConcentrationReport> {
    if horizon < 2 {
        return Err(Error::InvalidParams("horizon must be at least 2".into()));
    }
    let ln_q = params.q.to_f64().ln();
    let ln_u = params.u.to_f64().ln();
    let c = to_f64(params.c);
    // e^{βx} = u^{-x}
    let boltz = |x: f64| -x * ln_u;

    let (condition, term): (Condition, Box<dyn Fn(i64) -> f64>) = match &params.kernel {
        Kernel::LongRange(lr) => {
            let straddle = match moment(lr, 1).and_then(|m1| Ok(m1 - moment(lr, 0)?)) {
                Ok(s) => s,
                Err(Error::Divergence(msg)) => {
                    return Ok(ConcentrationReport {
                        condition: Condition::LongRange,
                        terms: Vec::new(),
                        partial_sums: Vec::new(),
                        decay_ratio: None,
                        verdict: Verdict::DivergingEvidence,
                        note: Some(msg),
                    });
                }
                Err(e) => return Err(e),
            };
            let total = moment(lr, 0)?;
            let nearest = lr.at_f64(1);
            let term = move |i: i64| {
                let sign = if i <= 0 { 1.0 } else { -1.0 };
                let denom = log_sum_exp(boltz(total), sign * 2.0 * ln_q + boltz(total));
                let x = sign * 2.0 * (i as f64 - c) * ln_q + boltz(nearest) - denom;
                (boltz(straddle) + logistic_tail(x).ln()).exp()
            };
            (Condition::LongRange, Box::new(term))
        }
        kernel => {
            let kernel = kernel.clone();
            let bond = move |i: i64| to_f64(kernel.bond(i));
            let term = move |i: i64| {
                let sign = if i <= 0 { 1.0 } else { -1.0 };
                let denom = log_sum_exp(boltz(bond(i).abs()), sign * 2.0 * ln_q + boltz(bond(i - 2).abs()));
                let x = sign * 2.0 * (i as f64 - c) * ln_q + boltz(bond(i - 1)) - denom;
                logistic_tail(x)
            };
            (Condition::NearestNeighbour, Box::new(term))
        }
    };

    let terms: Vec<f64> = (1..=horizon as i64).map(|m| term(1 - m) + term(m)).collect();
    let partial_sums = terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let (decay_ratio, verdict) = verdict(&terms);
    Ok(ConcentrationReport { condition, terms, partial_sums, decay_ratio, verdict, note: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{PowerTail, TableKernel};
    use crate::params::ratio;
    use num_rational::Rational64;

    fn params(kernel: Kernel, u: (i64, i64), q: (i64, i64)) -> ModelParams<f64> {
        ModelParams::new(&ratio(u.0, u.1), &ratio(q.0, q.1), Rational64::from_integer(0), 0, kernel).unwrap()
    }

    #[test]
    fn constant_coupling_decays_geometrically() {
        let r = concentration_report(&params(Kernel::Constant, (1, 2), (1, 3)), 40).unwrap();
        assert_eq!(r.verdict, Verdict::SummableEvidence);
        assert_eq!(r.condition, Condition::NearestNeighbour);
        assert!(r.decay_ratio.unwrap() < 0.2);
    }

    #[test]
    fn absolute_value_coupling_is_summable() {
        let v = [5, 3, 1, 3, 5].map(Rational64::from_integer).to_vec();
        let k = Kernel::Table(TableKernel::new(-2, v).unwrap());
        let r = concentration_report(&params(k, (1, 2), (1, 3)), 40).unwrap();
        assert_eq!(r.verdict, Verdict::SummableEvidence);
    }

    #[test]
    fn linear_coupling_bound_fails_below_q() {
        // the left half tends to 1 when u < q
        let r = concentration_report(&params(Kernel::Linear, (1, 4), (1, 3)), 60).unwrap();
        assert_eq!(r.verdict, Verdict::DivergingEvidence);
        assert!((r.terms.last().unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn nearest_embedding_matches_site_condition() {
        let lr = LongRangeKernel::nearest(Rational64::from_integer(1));
        let a = concentration_report(&params(Kernel::LongRange(lr), (1, 2), (1, 3)), 20).unwrap();
        let b = concentration_report(&params(Kernel::Constant, (1, 2), (1, 3)), 20).unwrap();
        for (x, y) in a.terms.iter().zip(&b.terms) {
            assert!((x - y).abs() <= 1e-12 * y.max(1e-300), "{x} {y}");
        }
    }

    #[test]
    fn heavy_tail_is_flagged() {
        let tail = PowerTail { amplitude: 1.0, exponent: 1.5 };
        let lr = LongRangeKernel::new(vec![Rational64::from_integer(1)], Some(tail)).unwrap();
        let p = ModelParams::<f64>::new(&ratio(1, 2), &ratio(1, 3), Rational64::from_integer(0), 0, Kernel::LongRange(lr));
        let r = concentration_report(&p.unwrap(), 20).unwrap();
        assert_eq!(r.verdict, Verdict::DivergingEvidence);
        assert!(r.note.is_some());
    }

    #[test]
    fn cubic_tail_is_summable() {
        let tail = PowerTail { amplitude: 1.0, exponent: 3.0 };
        let lr = LongRangeKernel::new(vec![Rational64::from_integer(1)], Some(tail)).unwrap();
        let p = ModelParams::<f64>::new(&ratio(1, 2), &ratio(1, 3), Rational64::from_integer(0), 0, Kernel::LongRange(lr));
        assert_eq!(concentration_report(&p.unwrap(), 30).unwrap().verdict, Verdict::SummableEvidence);
    }
}
