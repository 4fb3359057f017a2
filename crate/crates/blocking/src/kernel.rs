//! Interaction kernels: nearest-neighbour bond strengths J(i) and
//! translation-invariant long-range pair strengths J(i, j) = g(|i - j|).

use crate::error::{Error, Result};
use crate::scalar::{parse_small_ratio, small_to_big};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// J(i) = 1.
    Constant,
    /// J(i) = i.
    Linear,
    Table(TableKernel),
    LongRange(LongRangeKernel),
}

/// J(start + k) = values[k], extended affinely past both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct TableKernel {
    start: i64,
    values: Vec<Rational64>,
}

impl TableKernel {
    pub fn new(start: i64, values: Vec<Rational64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParams("table kernel needs at least one value".into()));
        }
        Ok(Self { start, values })
    }

    pub fn value(&self, i: i64) -> Rational64 {
        let len = self.values.len() as i64;
        let k = i - self.start;
        if (0..len).contains(&k) {
            return self.values[k as usize];
        }
        if len == 1 {
            return self.values[0];
        }
        if k < 0 {
            let slope = self.values[1] - self.values[0];
            self.values[0] + slope * k
        } else {
            let last = self.values[len as usize - 1];
            let slope = last - self.values[len as usize - 2];
            last + slope * (k - len + 1)
        }
    }

    /// Slopes of the affine extensions (left, right).
    pub fn end_slopes(&self) -> (Rational64, Rational64) {
        let v = &self.values;
        if v.len() == 1 {
            return (Rational64::zero(), Rational64::zero());
        }
        (v[1] - v[0], v[v.len() - 1] - v[v.len() - 2])
    }
}

/// Pair strength g(d) for d = 1..=R from an explicit profile, plus an
/// optional float-only tail g(d) = amplitude * d^(-exponent) for d > R.
#[derive(Debug, Clone, PartialEq)]
pub struct LongRangeKernel {
    profile: Vec<Rational64>,
    tail: Option<PowerTail>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTail {
    pub amplitude: f64,
    pub exponent: f64,
}

impl LongRangeKernel {
    pub fn new(profile: Vec<Rational64>, tail: Option<PowerTail>) -> Result<Self> {
        if profile.iter().any(|g| g.is_negative()) {
            return Err(Error::InvalidParams("pair strengths must be nonnegative".into()));
        }
        if let Some(t) = tail {
            if t.amplitude.is_nan() || t.amplitude < 0.0 || !t.exponent.is_finite() {
                return Err(Error::InvalidParams("tail must have nonnegative amplitude".into()));
            }
        }
        let mut profile = profile;
        while profile.last().is_some_and(|g| g.is_zero()) {
            profile.pop();
        }
        Ok(Self { profile, tail })
    }

    /// J(i, j) = strength when |i - j| = 1, zero otherwise.
    pub fn nearest(strength: Rational64) -> Self {
        Self { profile: vec![strength], tail: None }
    }

    /// Largest distance with a nonzero profile entry.
    pub fn range(&self) -> usize {
        self.profile.len()
    }

    pub fn tail(&self) -> Option<PowerTail> {
        self.tail
    }

    pub fn is_finite_support(&self) -> bool {
        self.tail.is_none_or(|t| t.amplitude == 0.0)
    }

    /// Exact pair strength at distance d; zero beyond the profile.
    pub fn at(&self, d: u64) -> Rational64 {
        if d == 0 || d as usize > self.profile.len() {
            Rational64::zero()
        } else {
            self.profile[d as usize - 1]
        }
    }

    pub fn at_f64(&self, d: u64) -> f64 {
        if d == 0 {
            return 0.0;
        }
        if (d as usize) <= self.profile.len() {
            return to_f64(self.profile[d as usize - 1]);
        }
        match self.tail {
            Some(t) => t.amplitude * (d as f64).powf(-t.exponent),
            None => 0.0,
        }
    }

    pub fn pair(&self, i: i64, j: i64) -> Rational64 {
        self.at(i.abs_diff(j))
    }
}

pub(crate) fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Kernel {
    /// Nearest-neighbour bond strength J(i) for the bond (i, i+1).
    pub fn bond(&self, i: i64) -> Rational64 {
        match self {
            Kernel::Constant => Rational64::from_integer(1),
            Kernel::Linear => Rational64::from_integer(i),
            Kernel::Table(t) => t.value(i),
            Kernel::LongRange(_) => panic!("bond() called on a long-range kernel"),
        }
    }

    pub fn is_nearest_neighbour(&self) -> bool {
        !matches!(self, Kernel::LongRange(_))
    }

    pub fn long_range(&self) -> Option<&LongRangeKernel> {
        match self {
            Kernel::LongRange(k) => Some(k),
            _ => None,
        }
    }

    /// Whether every energy this kernel produces is an integer, which exact
    /// mode needs so that all u-powers stay rational.
    pub fn is_integral(&self) -> bool {
        match self {
            Kernel::Constant | Kernel::Linear => true,
            Kernel::Table(t) => t.values.iter().all(|v| v.is_integer()),
            Kernel::LongRange(k) => {
                k.is_finite_support() && k.profile.iter().all(|v| v.is_integer())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Constant => "constant",
            Kernel::Linear => "linear",
            Kernel::Table(_) => "table",
            Kernel::LongRange(_) => "longrange",
        }
    }
}

/// JSON form of a kernel; rationals are `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum KernelSpec {
    Constant,
    Linear,
    Table {
        start: i64,
        values: Vec<String>,
    },
    #[serde(rename = "longrange")]
    LongRange {
        profile: Vec<String>,
        #[serde(default)]
        tail: Option<PowerTail>,
    },
}

impl KernelSpec {
    pub fn build(&self) -> Result<Kernel> {
        let parse_all = |v: &[String]| v.iter().map(|s| parse_small_ratio(s)).collect::<Result<Vec<_>>>();
        Ok(match self {
            KernelSpec::Constant => Kernel::Constant,
            KernelSpec::Linear => Kernel::Linear,
            KernelSpec::Table { start, values } => {
                Kernel::Table(TableKernel::new(*start, parse_all(values)?)?)
            }
            KernelSpec::LongRange { profile, tail } => {
                Kernel::LongRange(LongRangeKernel::new(parse_all(profile)?, *tail)?)
            }
        })
    }
}

impl From<&Kernel> for KernelSpec {
    fn from(k: &Kernel) -> Self {
        let fmt = |v: &[Rational64]| {
            v.iter().map(|r| crate::scalar::format_ratio(&small_to_big(*r))).collect()
        };
        match k {
            Kernel::Constant => KernelSpec::Constant,
            Kernel::Linear => KernelSpec::Linear,
            Kernel::Table(t) => KernelSpec::Table { start: t.start, values: fmt(&t.values) },
            Kernel::LongRange(l) => KernelSpec::LongRange { profile: fmt(&l.profile), tail: l.tail },
        }
    }
}
