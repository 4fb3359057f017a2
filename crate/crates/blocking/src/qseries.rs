//! Truncated power series in Q whose coefficients are Laurent polynomials in
//! z and y with exact rational coefficients.

use crate::error::{Error, Result};
use crate::par;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

/// Σ c_{a,b} z^a y^b with no stored zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// c z^z_exp y^y_exp.
    pub fn monomial(z_exp: i64, y_exp: i64, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(z_exp, y_exp, c);
        p
    }

    /// z^z_exp y^y_exp.
    pub fn unit(z_exp: i64, y_exp: i64) -> Self {
        Self::monomial(z_exp, y_exp, BigRational::one())
    }

    pub fn z_power(e: i64) -> Self {
        Self::monomial(e, 0, BigRational::one())
    }

    pub fn y_power(e: i64) -> Self {
        Self::monomial(0, e, BigRational::one())
    }

    pub fn add_term(&mut self, z_exp: i64, y_exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((z_exp, y_exp)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(z_exp, y_exp));
        }
    }

    pub fn get(&self, z_exp: i64, y_exp: i64) -> BigRational {
        self.terms.get(&(z_exp, y_exp)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &BigRational)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b, c) in other.iter() {
            self.add_term(a, b, c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.iter() {
            for (a2, b2, c2) in other.iter() {
                out.add_term(a + a2, b + b2, c * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by z^dz y^dy.
    pub fn shift(&self, dz: i64, dy: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((a + dz, b + dy), c.clone())).collect() }
    }

    /// Substitutes y -> y^k.
    pub fn dilate_y(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((a, b * k), c.clone())).collect() }
    }

    /// Replaces y by a rational value; the result has y-exponent 0 only.
    pub fn specialize_y(&self, y: &BigRational) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.iter() {
            out.add_term(a, 0, c * pow(y, b));
        }
        out
    }

    /// Replaces z by a rational value; the result has z-exponent 0 only.
    pub fn specialize_z(&self, z: &BigRational) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.iter() {
            out.add_term(0, b, c * pow(z, a));
        }
        out
    }

    pub fn max_abs_exponent(&self) -> (i64, i64) {
        self.iter().fold((0, 0), |(za, ya), (a, b, _)| (za.max(a.abs()), ya.max(b.abs())))
    }
}

fn pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (a, b) {
                (0, 0) => String::new(),
                (a, 0) => format!("z^{a}"),
                (0, b) => format!("y^{b}"),
                (a, b) => format!("z^{a} y^{b}"),
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c} {mono}")?;
            }
        }
        Ok(())
    }
}

/// Σ_{d=0}^{cap} c_d Q^d. Degrees above the cap are dropped by every
/// operation and never read back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

/// First degree and monomial at which two series differ.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub z_exp: i64,
    pub y_exp: i64,
    pub left: String,
    pub right: String,
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        Self { coeffs: vec![LaurentPoly::zero(); cap + 1] }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, 0, LaurentPoly::one())
    }

    /// p Q^degree, or zero when the degree exceeds the cap.
    pub fn monomial(cap: usize, degree: usize, p: LaurentPoly) -> Self {
        let mut s = Self::zero(cap);
        if degree <= cap {
            s.coeffs[degree] = p;
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &LaurentPoly {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn add_at(&mut self, degree: usize, p: &LaurentPoly) {
        if degree <= self.cap() {
            self.coeffs[degree].add_assign(p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.cap(), other.cap());
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            c.add_assign(o);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            c.add_assign(&o.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap().min(other.cap());
        let mut out = Self::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect() }
    }

    /// Multiplies by Q^d.
    pub fn shift(&self, d: usize) -> Self {
        let mut out = Self::zero(self.cap());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + d <= self.cap() {
                out.coeffs[i + d] = c.clone();
            }
        }
        out
    }

    /// 1 + t Q^b.
    pub fn binomial(cap: usize, t: LaurentPoly, b: usize) -> Self {
        let mut s = Self::one(cap);
        s.add_at(b, &t);
        s
    }

    /// 1 / (1 - t Q^b) = Σ_k t^k Q^{kb}.
    pub fn geometric_inverse(cap: usize, t: &LaurentPoly, b: i64) -> Result<Self> {
        if b <= 0 {
            return Err(Error::NotInvertible(b));
        }
        let b = b as usize;
        let mut out = Self::zero(cap);
        let mut power = LaurentPoly::one();
        let mut d = 0;
        while d <= cap {
            out.coeffs[d] = power.clone();
            power = power.mul(t);
            d += b;
        }
        Ok(out)
    }

    /// Divides in place by 1 - t Q^b.
    pub fn divide_one_minus(&mut self, t: &LaurentPoly, b: usize) {
        assert!(b >= 1, "1 - t*Q^0 has no formal inverse");
        for d in b..=self.cap() {
            if !self.coeffs[d - b].is_zero() {
                let carry = self.coeffs[d - b].mul(t);
                self.coeffs[d].add_assign(&carry);
            }
        }
    }

    /// Product of the factors, multiplied in parallel over contiguous chunks.
    pub fn product(cap: usize, factors: &[Self]) -> Self {
        if factors.len() < 8 {
            return factors.iter().fold(Self::one(cap), |acc, f| acc.mul(f));
        }
        let chunks: Vec<&[Self]> = factors.chunks(factors.len().div_ceil(8)).collect();
        par::map_reduce(
            &chunks,
            || Self::one(cap),
            |chunk| chunk.iter().fold(Self::one(cap), |acc, f| acc.mul(f)),
            |a, b| a.mul(&b),
        )
    }

    pub fn dilate_y(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.dilate_y(k)).collect() }
    }

    pub fn specialize_y(&self, y: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.specialize_y(y)).collect() }
    }

    pub fn specialize_z(&self, z: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.specialize_z(z)).collect() }
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self { coeffs: self.coeffs[..=cap.min(self.cap())].to_vec() }
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        let cap = self.cap().min(other.cap());
        for d in 0..=cap {
            let (a, b) = (&self.coeffs[d], &other.coeffs[d]);
            if a != b {
                let diff = a.sub(b);
                let (z_exp, y_exp, _) = diff.iter().next().unwrap();
                return Some(Mismatch {
                    degree: d,
                    z_exp,
                    y_exp,
                    left: a.get(z_exp, y_exp).to_string(),
                    right: b.get(z_exp, y_exp).to_string(),
                });
            }
        }
        None
    }

    /// Rows `q_degree,z_exp,y_exp,numerator,denominator`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "q_degree,z_exp,y_exp,numerator,denominator")?;
        for (d, c) in self.coeffs.iter().enumerate() {
            for (a, b, v) in c.iter() {
                writeln!(out, "{d},{a},{b},{},{}", v.numer(), v.denom())?;
            }
        }
        Ok(())
    }
}

/// Σ_{m ∈ Z} Q^{m(m+1)/2} z^m.
pub fn theta(cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    let mut m = 0i64;
    while m * (m + 1) / 2 <= cap as i64 {
        let d = (m * (m + 1) / 2) as usize;
        s.add_at(d, &LaurentPoly::z_power(m));
        s.add_at(d, &LaurentPoly::z_power(-m - 1));
        m += 1;
    }
    s
}

/// Π_{i>=1} (1 + (y - 1) Q^i) / (1 - Q^i).
pub fn blocking_product(cap: usize) -> TruncatedSeries {
    let y_minus_one = LaurentPoly::y_power(1).sub(&LaurentPoly::one());
    let factors: Vec<_> = (1..=cap)
        .flat_map(|i| {
            [
                TruncatedSeries::binomial(cap, y_minus_one.clone(), i),
                TruncatedSeries::geometric_inverse(cap, &LaurentPoly::one(), i as i64).unwrap(),
            ]
        })
        .collect();
    TruncatedSeries::product(cap, &factors)
}

/// Π_{i>=1} (1 - Q^i)(1 + z Q^i)(1 + z^{-1} Q^{i-1}).
pub fn triple_product(cap: usize) -> TruncatedSeries {
    let factors: Vec<_> = (1..=cap + 1)
        .flat_map(|i| {
            [
                TruncatedSeries::binomial(cap, LaurentPoly::integer(-1), i),
                TruncatedSeries::binomial(cap, LaurentPoly::z_power(1), i),
                TruncatedSeries::binomial(cap, LaurentPoly::z_power(-1), i - 1),
            ]
        })
        .collect();
    TruncatedSeries::product(cap, &factors)
}
