//! The two arithmetic modes: exact big rationals and `f64`.
//!
//! A computation picks one mode through the type parameter `S: Scalar`
//! and stays in it.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn powi(&self, e: i64) -> Self;
    /// Rational power. Exact mode only accepts integral exponents.
    fn pow_rational(&self, e: Rational64) -> Self;
    /// Real power, unavailable in exact mode.
    fn pow_real(&self, e: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    /// Equality in exact mode, relative closeness in float mode.
    fn close(&self, other: &Self, tol: f64) -> bool;
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn powi(&self, e: i64) -> Self {
        num_traits::Pow::pow(self, e as i32)
    }
    fn pow_rational(&self, e: Rational64) -> Self {
        assert!(e.is_integer(), "non-integral exponent {e} in exact mode");
        self.powi(e.to_integer())
    }
    fn pow_real(&self, _e: f64) -> Option<Self> {
        None
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn render(&self) -> String {
        format_ratio(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn powi(&self, e: i64) -> Self {
        f64::powi(*self, e as i32)
    }
    fn pow_rational(&self, e: Rational64) -> Self {
        if e.is_integer() {
            f64::powi(*self, e.to_integer() as i32)
        } else {
            self.powf(*e.numer() as f64 / *e.denom() as f64)
        }
    }
    fn pow_real(&self, e: f64) -> Option<Self> {
        Some(self.powf(e))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn close(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.abs()).max(other.abs());
        (self - other).abs() <= tol * scale
    }
    fn render(&self) -> String {
        format!("{self:e}")
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational \"p/q\", got {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `"p/q"` into a machine-sized rational.
pub fn parse_small_ratio(s: &str) -> Result<Rational64> {
    let r = parse_ratio(s)?;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(p), Some(q)) => Ok(Rational64::new(p, q)),
        _ => Err(Error::Parse(format!("rational {s:?} does not fit in 64 bits"))),
    }
}

pub fn small_to_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn format_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_ratio("1/2").unwrap(), r(1, 2));
        assert_eq!(parse_ratio(" -3 ").unwrap(), r(-3, 1));
        assert_eq!(parse_ratio("4/6").unwrap(), r(2, 3));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn exact_powers_allow_negative_exponents() {
        let h = r(1, 2);
        assert_eq!(Scalar::powi(&h, -3), r(8, 1));
        assert_eq!(h.pow_rational(Rational64::from_integer(2)), r(1, 4));
        assert!(h.pow_real(0.5).is_none());
    }

    #[test]
    fn float_closeness_is_relative() {
        assert!(1e6f64.close(&(1e6 + 1e-4), 1e-9));
        assert!(!1.0f64.close(&1.001, 1e-6));
        assert!((0.25f64).pow_rational(Rational64::new(1, 2)).close(&0.5, 1e-15));
    }
}
