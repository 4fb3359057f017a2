//! Frobenius symbols with offset, Wright's shift bijection and the
//! three-variable generating function they enumerate.

use super::partitions::{conjugate, distinct_sizes, partitions_of, Partition};
use crate::qseries::{LaurentPoly, TruncatedSeries};
use std::fmt;

/// Two strictly decreasing rows of nonnegative integers. Row lengths are
/// explicit; the shorter row is read as padded with leading dashes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobeniusPartition {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl FrobeniusPartition {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Option<Self> {
        let decreasing = |r: &[u32]| r.windows(2).all(|w| w[0] > w[1]);
        (decreasing(&top) && decreasing(&bottom)).then_some(Self { top, bottom })
    }

    pub fn empty() -> Self {
        Self { top: Vec::new(), bottom: Vec::new() }
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    /// s1 - s2.
    pub fn offset(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }

    /// s1 + Σ a_i + Σ b_j.
    pub fn total(&self) -> u64 {
        self.top.len() as u64 + self.top.iter().chain(&self.bottom).map(|&x| x as u64).sum::<u64>()
    }

    /// The displayed statistic 1 + Σ 1{a_i > a_{i+1} + 1} + Σ 1{b_i > b_{i+1} + 1}
    /// + 1{a_{s1} != 0} 1{b_{s2} != 0}, defined when both rows are nonempty.
    pub fn row_statistic(&self) -> Option<u32> {
        let (a, b) = (&self.top, &self.bottom);
        if a.is_empty() || b.is_empty() {
            return None;
        }
        let gaps = |r: &[u32]| r.windows(2).filter(|w| w[0] > w[1] + 1).count() as u32;
        let corner = (*a.last().unwrap() != 0 && *b.last().unwrap() != 0) as u32;
        Some(1 + gaps(a) + gaps(b) + corner)
    }

    /// Number of distinct part sizes of the offset-0 preimage under Wright's
    /// map; agrees with `row_statistic` whenever that is defined.
    pub fn k_statistic(&self) -> u32 {
        match self.row_statistic() {
            Some(k) => k,
            None => distinct_sizes(&from_frobenius(&wright_inverse(self))),
        }
    }
}

impl fmt::Display for FrobeniusPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.top.len().max(self.bottom.len());
        let row = |r: &[u32]| {
            let mut cells = vec!["-".to_string(); width - r.len()];
            cells.extend(r.iter().map(|x| x.to_string()));
            cells.join(" ")
        };
        write!(f, "[{} / {}]", row(&self.top), row(&self.bottom))
    }
}

/// Removes the Durfee diagonal: a_i counts cells right of (i, i), b_i cells below.
pub fn to_frobenius(p: &[u32]) -> FrobeniusPartition {
    let cols = conjugate(p);
    let s = p.iter().enumerate().take_while(|&(i, &x)| x as usize > i).count();
    FrobeniusPartition {
        top: (0..s).map(|i| p[i] - i as u32 - 1).collect(),
        bottom: (0..s).map(|i| cols[i] - i as u32 - 1).collect(),
    }
}

/// Inverse of `to_frobenius` for offset-0 symbols.
pub fn from_frobenius(fp: &FrobeniusPartition) -> Partition {
    assert_eq!(fp.offset(), 0, "offset-0 symbol required");
    let s = fp.top.len();
    let mut parts: Vec<u32> = (0..s).map(|i| fp.top[i] + i as u32 + 1).collect();
    // rows below the diagonal square come from the column lengths
    let below = fp.bottom.iter().enumerate().map(|(j, &b)| b + j as u32 + 1);
    let cols: Vec<u32> = below.collect();
    let depth = cols.first().copied().unwrap_or(0);
    for r in s as u32..depth {
        parts.push(cols.iter().filter(|&&c| c > r).count() as u32);
    }
    parts
}

/// Wright's map FP_0(n) -> FP_m(n + m(m+1)/2): adjoining a staircase of side
/// |m| shifts one row by |m|, keeps the entries of the other row that are at
/// least |m| (shifted down), and turns the rest into the complementary small
/// entries of the first row.
pub fn wright(fp: &FrobeniusPartition, m: i64) -> FrobeniusPartition {
    assert_eq!(fp.offset(), 0, "offset-0 symbol required");
    let (grow, shrink) = if m >= 0 { (&fp.top, &fp.bottom) } else { (&fp.bottom, &fp.top) };
    let k = m.unsigned_abs() as u32;
    let mut grown: Vec<u32> = grow.iter().map(|&x| x + k).collect();
    let taken: Vec<u32> = shrink.iter().filter(|&&b| b < k).map(|&b| k - 1 - b).collect();
    grown.extend((0..k).rev().filter(|x| !taken.contains(x)));
    let kept: Vec<u32> = shrink.iter().filter(|&&b| b >= k).map(|&b| b - k).collect();
    if m >= 0 {
        FrobeniusPartition { top: grown, bottom: kept }
    } else {
        FrobeniusPartition { top: kept, bottom: grown }
    }
}

pub fn wright_inverse(fp: &FrobeniusPartition) -> FrobeniusPartition {
    let m = fp.offset();
    let (grown, kept) = if m >= 0 { (&fp.top, &fp.bottom) } else { (&fp.bottom, &fp.top) };
    let k = m.unsigned_abs() as u32;
    let restored: Vec<u32> = grown.iter().filter(|&&x| x >= k).map(|&x| x - k).collect();
    let small: Vec<u32> = grown.iter().filter(|&&x| x < k).copied().collect();
    let mut other: Vec<u32> = kept.iter().map(|&b| b + k).collect();
    other.extend((0..k).filter(|x| !small.contains(x)).map(|x| k - 1 - x));
    other.sort_unstable_by(|a, b| b.cmp(a));
    if m >= 0 {
        FrobeniusPartition { top: restored, bottom: other }
    } else {
        FrobeniusPartition { top: other, bottom: restored }
    }
}

/// Strictly decreasing rows of nonnegative entries with Σ (x + 1) = total,
/// i.e. partitions of `total` into distinct parts, shifted down by one.
fn rows_with_weight(total: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, below: u32, row: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(row.clone());
            return;
        }
        for part in (1..=remaining.min(below - 1)).rev() {
            row.push(part - 1);
            go(remaining - part, part, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total + 1, &mut Vec::new(), &mut out);
    out
}

/// Every symbol of total n and offset m, by searching row pairs directly.
pub fn frobenius_with_offset(n: u32, m: i64) -> Vec<FrobeniusPartition> {
    let mut out = Vec::new();
    for top_weight in 0..=n {
        let tops = rows_with_weight(top_weight);
        // bottom entries contribute b_j; adding s2 turns them into distinct parts
        for top in &tops {
            let s2 = top.len() as i64 - m;
            if s2 < 0 {
                continue;
            }
            let bottom_weight = (n - top_weight) as i64 + s2;
            for bottom in rows_with_weight(bottom_weight as u32) {
                if bottom.len() as i64 == s2 {
                    out.push(FrobeniusPartition { top: top.clone(), bottom });
                }
            }
        }
    }
    out
}

/// Largest |m| whose staircase m(m+1)/2 fits under the cap, for either sign.
fn offset_range(cap: usize) -> impl Iterator<Item = i64> {
    let limit = (0..).take_while(|&m: &i64| m * (m + 1) / 2 <= cap as i64).last().unwrap_or(0);
    -(limit + 1)..=limit
}

/// Σ a_{n,m,k} Q^n z^m y^k over symbols with n <= cap, enumerated directly.
pub fn fp_gen_function(cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    for m in offset_range(cap) {
        for n in 0..=cap as u32 {
            for fp in frobenius_with_offset(n, m) {
                s.add_at(n as usize, &LaurentPoly::unit(m, fp.k_statistic() as i64));
            }
        }
    }
    s
}

/// The same series built from Wright images of ordinary partitions.
pub fn fp_gen_function_via_wright(cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    for m in offset_range(cap) {
        let lift = (m * (m + 1) / 2) as usize;
        for n in 0..=(cap - lift) as u32 {
            for p in partitions_of(n) {
                let image = wright(&to_frobenius(&p), m);
                debug_assert_eq!(image.total() as usize, n as usize + lift);
                s.add_at(n as usize + lift, &LaurentPoly::unit(m, distinct_sizes(&p) as i64));
            }
        }
    }
    s
}
