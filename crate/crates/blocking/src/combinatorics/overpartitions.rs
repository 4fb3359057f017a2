//! Partition statistics weighted by powers of y: distinct part sizes,
//! decorated (over)partitions, and the partial-sum statistic of the
//! inhomogeneous coupling.

use super::partitions::{distinct_sizes, partitions_of, partitions_up_to, Partition};
use crate::qseries::{LaurentPoly, TruncatedSeries};
use std::collections::BTreeMap;

/// Σ_p y^{k(p)} Q^{|p|} over partitions with |p| <= cap.
pub fn partition_gf(cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    for p in partitions_up_to(cap as u32) {
        let size: u32 = p.iter().sum();
        s.add_at(size as usize, &LaurentPoly::y_power(distinct_sizes(&p) as i64));
    }
    s
}

/// Σ_k colours^k a_{n,k}: the first part of each size takes one of `colours`
/// decorations.
pub fn overpartition_counts(n: u32, colours: u64) -> u64 {
    partitions_of(n).iter().map(|p| colours.pow(distinct_sizes(p))).sum()
}

/// Explicit decorated partitions of n: one decoration index per distinct size.
pub fn decorated_partitions(n: u32, colours: u32) -> Vec<(Partition, Vec<u32>)> {
    let mut out = Vec::new();
    for p in partitions_of(n) {
        let k = distinct_sizes(&p) as usize;
        let mut marks = vec![0u32; k];
        loop {
            out.push((p.clone(), marks.clone()));
            let Some(pos) = marks.iter().rposition(|&d| d + 1 < colours) else { break };
            marks[pos] += 1;
            marks[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    out
}

/// Components of the exponent n k + minimal - partial_sums carried by a
/// partition whose multiplicity of part i is z_{-i}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialSumStats {
    /// Number of distinct part sizes.
    pub distinct: u32,
    /// Sum of the distinct part sizes.
    pub minimal: u64,
    /// Σ over occupied i of Σ_{j >= i} z_{-j}.
    pub partial_sums: u64,
}

impl PartialSumStats {
    pub fn exponent(&self, n: i64) -> i64 {
        n * self.distinct as i64 + self.minimal as i64 - self.partial_sums as i64
    }
}

pub fn partial_sum_stats(p: &[u32]) -> PartialSumStats {
    let mut occupation: BTreeMap<u32, u64> = BTreeMap::new();
    for &part in p {
        *occupation.entry(part).or_default() += 1;
    }
    let mut tail = 0;
    let mut stats = PartialSumStats { distinct: 0, minimal: 0, partial_sums: 0 };
    for (&size, &count) in occupation.iter().rev() {
        tail += count;
        stats.distinct += 1;
        stats.minimal += size as u64;
        stats.partial_sums += tail;
    }
    stats
}
