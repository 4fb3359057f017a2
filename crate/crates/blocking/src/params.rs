use crate::error::{Error, Result};
use crate::kernel::{Kernel, KernelSpec};
use crate::scalar::{format_ratio, parse_ratio, parse_small_ratio, small_to_big, Scalar};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// Model parameters in one arithmetic mode. `u = e^{-beta}`; `c` stays an
/// exact rational in both modes because it only ever enters through the
/// formal variable z = q^{-2c}.
#[derive(Debug, Clone)]
pub struct ModelParams<S> {
    pub u: S,
    pub q: S,
    pub c: Rational64,
    pub n: i64,
    pub kernel: Kernel,
    u_exact: BigRational,
    q_exact: BigRational,
}

impl<S: Scalar> ModelParams<S> {
    pub fn new(u: &BigRational, q: &BigRational, c: Rational64, n: i64, kernel: Kernel) -> Result<Self> {
        if !(Signed::is_positive(q) && q < &<BigRational as One>::one()) {
            return Err(Error::InvalidParams(format!("q = {} must lie in (0, 1)", format_ratio(q))));
        }
        if !(Signed::is_positive(u) && u <= &<BigRational as One>::one()) {
            return Err(Error::InvalidParams(format!("u = {} must lie in (0, 1]", format_ratio(u))));
        }
        if matches!(kernel, Kernel::Linear) && u >= q {
            return Err(Error::InvalidParams("J(i) = i requires u < q".into()));
        }
        if S::EXACT && !kernel.is_integral() {
            return Err(Error::InvalidParams(
                "exact mode needs an integer-valued kernel with finite support".into(),
            ));
        }
        Ok(Self {
            u: S::from_ratio(u),
            q: S::from_ratio(q),
            c,
            n,
            kernel,
            u_exact: u.clone(),
            q_exact: q.clone(),
        })
    }

    /// Same parameters in another arithmetic mode.
    pub fn to_mode<T: Scalar>(&self) -> Result<ModelParams<T>> {
        ModelParams::new(&self.u_exact, &self.q_exact, self.c, self.n, self.kernel.clone())
    }

    pub fn with_n(&self, n: i64) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn with_kernel(&self, kernel: Kernel) -> Result<Self> {
        Self::new(&self.u_exact, &self.q_exact, self.c, self.n, kernel)
    }

    pub fn u_pow(&self, e: Rational64) -> S {
        self.u.pow_rational(e)
    }

    pub fn q_pow(&self, e: i64) -> S {
        self.q.powi(e)
    }

    /// u^e / (1 + u^e), i.e. (1 - tanh(beta e / 2)) / 2.
    pub fn down_rate(&self, e: Rational64) -> S {
        let p = self.u_pow(e);
        p.clone() / (S::one() + p)
    }

    /// 1 / (1 + u^e), i.e. (1 + tanh(beta e / 2)) / 2.
    pub fn up_rate(&self, e: Rational64) -> S {
        S::one() / (S::one() + self.u_pow(e))
    }

    /// z = q^{-2c}, when representable in this mode.
    pub fn z(&self) -> Option<S> {
        let two_c = self.c * 2;
        if two_c.is_integer() {
            Some(self.q.powi(-two_c.to_integer()))
        } else {
            self.q.pow_real(-crate::kernel::to_f64(two_c))
        }
    }

    pub fn spec(&self) -> ParamsSpec {
        ParamsSpec {
            u: format_ratio(&self.u_exact),
            q: format_ratio(&self.q_exact),
            c: format_ratio(&small_to_big(self.c)),
            n: self.n,
            kernel: KernelSpec::from(&self.kernel),
        }
    }
}

/// JSON parameter file: `{"u": "p/q", "q": "p/q", "c": "p/q", "n": int, "kernel": {...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsSpec {
    pub u: String,
    pub q: String,
    #[serde(default = "zero_string")]
    pub c: String,
    #[serde(default)]
    pub n: i64,
    pub kernel: KernelSpec,
}

fn zero_string() -> String {
    "0".into()
}

impl ParamsSpec {
    pub fn build<S: Scalar>(&self) -> Result<ModelParams<S>> {
        ModelParams::new(
            &parse_ratio(&self.u)?,
            &parse_ratio(&self.q)?,
            parse_small_ratio(&self.c)?,
            self.n,
            self.kernel.build()?,
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// An unnormalised measure weight `value * z^{z_exp}` with z = q^{-2c} kept
/// symbolic. Within a sector z_exp is constant, so `value` alone carries all
/// relative information.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight<S> {
    pub value: S,
    pub z_exp: i64,
}

impl<S: Scalar> Weight<S> {
    pub fn resolve(&self, params: &ModelParams<S>) -> Option<S> {
        let z = params.z()?;
        Some(self.value.clone() * z.powi(self.z_exp))
    }
}

/// Convenience constructor for exact rationals in tests and examples.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Default for ParamsSpec {
    fn default() -> Self {
        Self { u: "1/2".into(), q: "1/3".into(), c: "0".into(), n: 0, kernel: KernelSpec::Constant }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::Zero;

    type Exact = ModelParams<BigRational>;

    #[test]
    fn rejects_out_of_range_scalars() {
        let k = Kernel::Constant;
        let c = Rational64::zero();
        assert!(Exact::new(&ratio(1, 2), &ratio(1, 1), c, 0, k.clone()).is_err());
        assert!(Exact::new(&ratio(3, 2), &ratio(1, 3), c, 0, k.clone()).is_err());
        assert!(Exact::new(&ratio(0, 1), &ratio(1, 3), c, 0, k.clone()).is_err());
        assert!(Exact::new(&ratio(1, 1), &ratio(1, 3), c, 0, k).is_ok());
    }

    #[test]
    fn linear_kernel_requires_u_below_q() {
        let c = Rational64::zero();
        assert!(Exact::new(&ratio(1, 2), &ratio(1, 3), c, 0, Kernel::Linear).is_err());
        assert!(Exact::new(&ratio(1, 3), &ratio(1, 3), c, 0, Kernel::Linear).is_err());
        assert!(Exact::new(&ratio(1, 4), &ratio(1, 3), c, 0, Kernel::Linear).is_ok());
    }

    #[test]
    fn rate_helpers_match_tanh_forms() {
        let p = ModelParams::<f64>::new(&ratio(1, 2), &ratio(1, 3), Rational64::zero(), 0, Kernel::Constant).unwrap();
        let beta = 2f64.ln();
        let x = 1.5;
        let down = 0.5 * (1.0 - (beta * x).tanh());
        let up = 0.5 * (1.0 + (beta * x).tanh());
        assert!((p.down_rate(Rational64::from_integer(3)) - down).abs() < 1e-14);
        assert!((p.up_rate(Rational64::from_integer(3)) - up).abs() < 1e-14);
    }

    #[test]
    fn spec_parses_and_converts_modes() {
        let json = r#"{"u":"1/4","q":"1/3","c":"1/2","n":-1,"kernel":{"type":"linear"}}"#;
        let spec = ParamsSpec::from_json(json).unwrap();
        let exact: Exact = spec.build().unwrap();
        assert_eq!(exact.z().unwrap(), ratio(3, 1));
        let float = exact.to_mode::<f64>().unwrap();
        assert!((float.u - 0.25).abs() < 1e-15);
        assert_eq!(exact.spec().c, "1/2");
    }
}
