//! The standing-up bijection between sector n of the spin chain and
//! finitely supported particle configurations.

use crate::config::{ParticleConfiguration, SpinConfiguration};
use crate::error::{Error, Result};
use crate::observables::conserved_n;

/// Caches suffix sums of ω so that S_r = n + r - Σ_{i>=r} ω_{-i} is O(1).
#[derive(Debug, Clone)]
pub struct SiteLocator {
    n: i64,
    suffix: Vec<i64>,
}

impl SiteLocator {
    pub fn new(omega: &ParticleConfiguration, n: i64) -> Self {
        Self { n, suffix: omega.suffix_sums() }
    }

    /// Site of the r-th +1 spin, r >= 1.
    pub fn site(&self, r: usize) -> i64 {
        debug_assert!(r >= 1);
        let tail = self.suffix.get(r).copied().unwrap_or(0);
        self.n + r as i64 - tail
    }

    /// Σ_{i>=r} ω_{-i}.
    pub fn suffix(&self, r: usize) -> i64 {
        self.suffix.get(r).copied().unwrap_or(0)
    }
}

pub fn spin_site(omega: &ParticleConfiguration, n: i64, r: usize) -> i64 {
    SiteLocator::new(omega, n).site(r)
}

/// T^n(σ): ω_{-r} is the number of -1 spins between the r-th and (r+1)-th +1.
pub fn stand_up(sigma: &SpinConfiguration, n: i64) -> Result<ParticleConfiguration> {
    let found = conserved_n(sigma);
    if found != n {
        return Err(Error::SectorMismatch { expected: n, found });
    }
    let mut plus: Vec<i64> = sigma.plus_sites_in_window().collect();
    plus.push(sigma.last_minus() + 1);
    let occ = plus.windows(2).map(|w| (w[1] - w[0] - 1) as u32).collect();
    Ok(ParticleConfiguration::from_occupations(occ))
}

/// (T^n)^{-1}(ω).
pub fn lay_down(omega: &ParticleConfiguration, n: i64) -> SpinConfiguration {
    let sites = SiteLocator::new(omega, n);
    let plus: Vec<i64> = (1..=omega.len() + 1).map(|r| sites.site(r)).collect();
    SpinConfiguration::from_plus_sites(&plus)
}
