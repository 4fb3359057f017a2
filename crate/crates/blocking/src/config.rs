//! Finite encodings of blocking spin configurations and particle
//! configurations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A blocking configuration: spins are -1 left of `start`, +1 past the
/// window, and given explicitly inside it. Canonical windows start with +1
/// and end with -1; an empty window is the step profile whose first +1
/// sits at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinConfiguration {
    start: i64,
    window: Vec<bool>,
}

impl SpinConfiguration {
    /// Builds from spins (`true` = +1) covering `start..start+len`.
    pub fn new(start: i64, spins: Vec<bool>) -> Self {
        canonical(start, spins)
    }

    /// Parses a window string over `{'+', '-'}`.
    pub fn parse(start: i64, window: &str) -> Result<Self> {
        let spins = window
            .chars()
            .map(|ch| match ch {
                '+' => Ok(true),
                '-' => Ok(false),
                _ => Err(Error::Parse(format!("bad spin {ch:?} in {window:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(start, spins))
    }

    /// The step profile with -1 on sites <= n and +1 on sites > n.
    pub fn step_profile(n: i64) -> Self {
        Self { start: n + 1, window: Vec::new() }
    }

    /// Builds from the sorted list of +1 sites up to and including the first
    /// site after which every spin is +1.
    pub fn from_plus_sites(sites: &[i64]) -> Self {
        match (sites.first(), sites.last()) {
            (Some(&a), Some(&b)) => {
                let mut spins = vec![false; (b - a + 1) as usize];
                for &s in sites {
                    spins[(s - a) as usize] = true;
                }
                Self::new(a, spins)
            }
            _ => panic!("at least one +1 site is required"),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn window(&self) -> &[bool] {
        &self.window
    }

    pub fn is_step(&self) -> bool {
        self.window.is_empty()
    }

    /// Site of the leftmost +1 spin.
    pub fn first_plus(&self) -> i64 {
        self.start
    }

    /// Site of the rightmost -1 spin.
    pub fn last_minus(&self) -> i64 {
        self.start + self.window.len() as i64 - 1
    }

    /// `true` for +1.
    pub fn spin(&self, i: i64) -> bool {
        if i < self.start {
            false
        } else {
            let k = (i - self.start) as usize;
            k >= self.window.len() || self.window[k]
        }
    }

    pub fn spin_value(&self, i: i64) -> i64 {
        if self.spin(i) {
            1
        } else {
            -1
        }
    }

    /// Exchanges the spins at sites `i` and `j`.
    pub fn swapped(&self, i: i64, j: i64) -> Self {
        let lo = self.start.min(i).min(j);
        let hi = self.last_minus().max(i).max(j);
        let mut spins: Vec<bool> = (lo..=hi).map(|s| self.spin(s)).collect();
        spins.swap((i - lo) as usize, (j - lo) as usize);
        Self::new(lo, spins)
    }

    /// Sites of +1 spins inside the window, in increasing order.
    pub fn plus_sites_in_window(&self) -> impl Iterator<Item = i64> + '_ {
        self.window.iter().enumerate().filter(|(_, &s)| s).map(move |(k, _)| self.start + k as i64)
    }

    pub fn window_string(&self) -> String {
        self.window.iter().map(|&s| if s { '+' } else { '-' }).collect()
    }
}

impl fmt::Display for SpinConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.window_string())
    }
}

fn canonical(mut start: i64, spins: Vec<bool>) -> SpinConfiguration {
    let lead = spins.iter().take_while(|&&s| !s).count();
    start += lead as i64;
    let mut window = spins[lead..].to_vec();
    while window.last() == Some(&true) {
        window.pop();
    }
    SpinConfiguration { start, window }
}

/// Minimal-window form. Equal configurations have equal canonical forms.
pub fn canonicalize(sigma: &SpinConfiguration) -> SpinConfiguration {
    canonical(sigma.start, sigma.window.clone())
}

/// Finitely supported occupations ω_{-r}, r >= 1, stored densely as
/// `occ[r - 1]` with trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParticleConfiguration {
    occ: Vec<u32>,
}

impl ParticleConfiguration {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `occ[k]` is the number of particles at site -(k + 1).
    pub fn from_occupations(mut occ: Vec<u32>) -> Self {
        while occ.last() == Some(&0) {
            occ.pop();
        }
        Self { occ }
    }

    /// One particle at site -i for every part i.
    pub fn from_partition(parts: &[u32]) -> Self {
        let len = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut occ = vec![0; len];
        for &p in parts {
            if p > 0 {
                occ[p as usize - 1] += 1;
            }
        }
        Self::from_occupations(occ)
    }

    /// Parts in weakly decreasing order.
    pub fn to_partition(&self) -> Vec<u32> {
        let mut parts = Vec::new();
        for (k, &w) in self.occ.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(k as u32 + 1, w as usize));
        }
        parts
    }

    /// ω_{-r}; zero for r = 0 or beyond the support.
    pub fn get(&self, r: usize) -> u32 {
        if r == 0 {
            0
        } else {
            self.occ.get(r - 1).copied().unwrap_or(0)
        }
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occ
    }

    /// Highest occupied index r (0 if empty).
    pub fn len(&self) -> usize {
        self.occ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occ.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.occ.iter().map(|&w| w as u64).sum()
    }

    /// Σ r ω_{-r}.
    pub fn rank(&self) -> u64 {
        self.occ.iter().enumerate().map(|(k, &w)| (k as u64 + 1) * w as u64).sum()
    }

    /// suffix[r] = Σ_{i >= r} ω_{-i} for r in 0..=len+1 (suffix[0] = suffix[1]).
    pub fn suffix_sums(&self) -> Vec<i64> {
        let len = self.occ.len();
        let mut suffix = vec![0i64; len + 2];
        for r in (1..=len).rev() {
            suffix[r] = suffix[r + 1] + self.occ[r - 1] as i64;
        }
        suffix[0] = suffix[1];
        suffix
    }

    pub fn to_map(&self) -> BTreeMap<String, u32> {
        self.occ
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(k, &w)| ((k + 1).to_string(), w))
            .collect()
    }
}

impl fmt::Display for ParticleConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.occ.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for ParticleConfiguration {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParticleConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, u32>::deserialize(d)?;
        let mut occ = Vec::new();
        for (k, w) in map {
            let r: usize = k.parse().map_err(serde::de::Error::custom)?;
            if r == 0 {
                return Err(serde::de::Error::custom("sites are numbered from 1"));
            }
            if occ.len() < r {
                occ.resize(r, 0);
            }
            occ[r - 1] = w;
        }
        Ok(Self::from_occupations(occ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_both_ends() {
        let s = SpinConfiguration::parse(-3, "--+-++").unwrap();
        assert_eq!(s.start(), -1);
        assert_eq!(s.window_string(), "+-");
        let t = SpinConfiguration::parse(0, "+-").unwrap();
        assert_eq!(t.start(), 0);
        assert_eq!(t.window_string(), "+-");
    }

    #[test]
    fn fully_sorted_windows_collapse_to_steps() {
        let s = SpinConfiguration::parse(-2, "---++").unwrap();
        assert_eq!(s, SpinConfiguration::step_profile(0));
        assert!(s.is_step());
        assert!(!s.spin(0));
        assert!(s.spin(1));
    }

    #[test]
    fn step_profile_spins() {
        let s = SpinConfiguration::step_profile(-1);
        assert!(!s.spin(-1));
        assert!(s.spin(0));
        assert_eq!(s.last_minus(), -1);
    }

    #[test]
    fn swap_recanonicalises() {
        let s = SpinConfiguration::step_profile(0);
        let t = s.swapped(0, 1);
        assert_eq!(t.to_string(), "0:+-");
        assert_eq!(t.swapped(0, 1), s);
    }

    #[test]
    fn particle_partition_round_trip() {
        let w = ParticleConfiguration::from_partition(&[4, 2, 2, 1]);
        assert_eq!(w.occupations(), &[1, 2, 0, 1]);
        assert_eq!(w.to_partition(), vec![4, 2, 2, 1]);
        assert_eq!(w.rank(), 9);
        assert_eq!(w.suffix_sums(), vec![4, 4, 3, 1, 1, 0]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"1":1,"2":2,"4":1}"#);
        let back: ParticleConfiguration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
