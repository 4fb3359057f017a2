//! Run profiles: lengths of the + runs left of the origin and the − runs
//! right of it, with the minimal-degree bounds used to prune enumeration.

use crate::par;
use crate::qseries::{LaurentPoly, TruncatedSeries};
use serde::Serialize;
use std::collections::BTreeMap;

/// Sentinel part before the first left run.
pub const LEFT_SENTINEL: i64 = -1;
/// Sentinel part before the first right run.
pub const RIGHT_SENTINEL: i64 = 0;

/// `left[j-1]` is ℓ_j, the length of the j-th + run counted outward from the
/// origin; `right[j-1]` is m_j for the − runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RunProfile {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl RunProfile {
    /// None if any run is empty.
    pub fn new(left: Vec<u32>, right: Vec<u32>) -> Option<Self> {
        (left.iter().chain(&right).all(|&x| x >= 1)).then_some(Self { left, right })
    }

    pub fn left_total(&self) -> u64 {
        self.left.iter().map(|&x| x as u64).sum()
    }

    pub fn right_total(&self) -> u64 {
        self.right.iter().map(|&x| x as u64).sum()
    }

    /// Lowest Q-degree any term of this profile can reach.
    pub fn min_degree(&self) -> u64 {
        side_degree(&self.left, LEFT_SENTINEL) + side_degree(&self.right, RIGHT_SENTINEL)
    }
}

/// tails[j] = x_{j+1} + ... + x_len, so tails[0] is the total and
/// tails[len] = 0.
pub fn tails(parts: &[u32]) -> Vec<u64> {
    let mut t = vec![0u64; parts.len() + 1];
    for j in (0..parts.len()).rev() {
        t[j] = t[j + 1] + parts[j] as u64;
    }
    t
}

/// Σ_j x_j(x_j-1)/2 + j x_j + x_{j-1}(x_j + ... + x_len), x_0 = sentinel:
/// the Q-degree of a side with every geometric index at zero.
pub fn side_degree(parts: &[u32], sentinel: i64) -> u64 {
    let t = tails(parts);
    let mut total = 0i64;
    for (j, &x) in parts.iter().enumerate() {
        let x = x as i64;
        let prev = if j == 0 { sentinel } else { parts[j - 1] as i64 };
        total += x * (x - 1) / 2 + (j as i64 + 1) * x + prev * t[j] as i64;
    }
    total as u64
}

/// Smallest side degree over compositions with `len` parts: all parts 1.
pub fn min_side_degree(len: usize, sentinel: i64) -> u64 {
    side_degree(&vec![1; len], sentinel)
}

/// Longest side whose all-ones profile fits the budget.
pub fn max_side_len(sentinel: i64, budget: u64) -> usize {
    let mut len = 0;
    while min_side_degree(len + 1, sentinel) <= budget {
        len += 1;
    }
    len
}

/// Every composition with `len` parts and side degree <= budget.
///
/// Parts are chosen from the outermost inward. Regrouping the degree as
/// Σ_j [x_j(x_j-1)/2 + (j+sentinel) x_j + x_j (x_{j+1} + ... + x_len)]
/// makes every chosen part add a nonnegative amount, so partial sums prune.
pub fn side_profiles(len: usize, sentinel: i64, budget: u64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut parts = vec![0u32; len];
    fill(len, sentinel, budget as i64, 0, 0, &mut parts, &mut out);
    out
}

fn fill(j: usize, s: i64, budget: i64, acc: i64, outer: i64, parts: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if j == 0 {
        out.push(parts.to_vec());
        return;
    }
    let coef = j as i64 + s;
    let mut x = 1i64;
    loop {
        let add = x * (x - 1) / 2 + coef * x + x * outer;
        let tail = outer + x;
        let inner: i64 = (1..j as i64).map(|i| i + s + tail).sum();
        if acc + add + inner > budget {
            break;
        }
        parts[j - 1] = x as u32;
        fill(j - 1, s, budget, acc + add, tail, parts, out);
        x += 1;
    }
}

/// Every (length, composition) pair for one side within the budget,
/// including the empty side.
pub fn all_side_profiles(sentinel: i64, budget: u64) -> Vec<Vec<u32>> {
    (0..=max_side_len(sentinel, budget)).flat_map(|len| side_profiles(len, sentinel, budget)).collect()
}

/// prefactor · Q^extra · Π_j (t_j Q^{T_j})^{x_{j-1}+1} / (1 - t_j Q^{T_j})
/// with t_j = y^{step(j)}, T_j = x_j + ... + x_len and x_0 the sentinel.
pub fn side_series<F>(parts: &[u32], sentinel: i64, cap: usize, step: F, prefactor: &LaurentPoly, extra: u64) -> TruncatedSeries
where
    F: Fn(usize) -> i64,
{
    let t = tails(parts);
    let mut degree = extra as i64;
    let mut y_exp = 0i64;
    for j in 1..=parts.len() {
        let prev = if j == 1 { sentinel } else { parts[j - 2] as i64 };
        degree += t[j - 1] as i64 * (prev + 1);
        y_exp += step(j) * (prev + 1);
    }
    debug_assert!(degree >= 0);
    if degree as usize > cap {
        return TruncatedSeries::zero(cap);
    }
    let mut s = TruncatedSeries::monomial(cap, degree as usize, prefactor.shift(0, y_exp));
    for j in 1..=parts.len() {
        s.divide_one_minus(&LaurentPoly::y_power(step(j)), t[j - 1] as usize);
    }
    s
}

/// Σ_j x_j(x_j-1)/2.
pub fn triangle(parts: &[u32]) -> u64 {
    parts.iter().map(|&x| x as u64 * (x as u64 - 1) / 2).sum()
}

/// Σ term(p) over the profiles, in parallel.
pub fn sum_over<F>(profiles: &[Vec<u32>], cap: usize, term: F) -> TruncatedSeries
where
    F: Fn(&[u32]) -> TruncatedSeries + Sync + Send,
{
    par::map_reduce(profiles, || TruncatedSeries::zero(cap), |p| term(p), |a, b| a.add(&b))
}

/// Σ term(p) grouped by (number of parts, total).
pub fn sum_by_shape<F>(profiles: &[Vec<u32>], cap: usize, term: F) -> BTreeMap<(usize, u64), TruncatedSeries>
where
    F: Fn(&[u32]) -> TruncatedSeries + Sync + Send,
{
    par::map_reduce(
        profiles,
        BTreeMap::new,
        |p| BTreeMap::from([((p.len(), p.iter().map(|&x| x as u64).sum()), term(p))]),
        |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert_with(|| TruncatedSeries::zero(cap)).add_assign(&v);
            }
            a
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_bounds() {
        for len in 0..8u64 {
            assert_eq!(min_side_degree(len as usize, LEFT_SENTINEL), len * len.saturating_sub(1));
            assert_eq!(min_side_degree(len as usize, RIGHT_SENTINEL), len * len);
        }
        assert_eq!(max_side_len(LEFT_SENTINEL, 25), 5);
        assert_eq!(max_side_len(RIGHT_SENTINEL, 25), 5);
        assert_eq!(max_side_len(RIGHT_SENTINEL, 24), 4);
    }

    #[test]
    fn pruned_enumeration_is_exact() {
        for s in [LEFT_SENTINEL, RIGHT_SENTINEL] {
            for len in 0..=4usize {
                let budget = 14;
                let fast = side_profiles(len, s, budget);
                let mut slow = Vec::new();
                let mut parts = vec![1u32; len];
                'outer: loop {
                    if side_degree(&parts, s) <= budget {
                        slow.push(parts.clone());
                    }
                    for part in parts.iter_mut() {
                        if *part < 15 {
                            *part += 1;
                            continue 'outer;
                        }
                        *part = 1;
                    }
                    break;
                }
                let mut fast_sorted = fast.clone();
                fast_sorted.sort();
                slow.sort();
                assert_eq!(fast_sorted, slow, "sentinel {s}, len {len}");
            }
        }
    }

    #[test]
    fn degree_grows_with_each_part() {
        let base = vec![2, 1, 3];
        for s in [LEFT_SENTINEL, RIGHT_SENTINEL] {
            for i in 0..base.len() {
                let mut bigger = base.clone();
                bigger[i] += 1;
                assert!(side_degree(&bigger, s) > side_degree(&base, s));
            }
        }
    }

    #[test]
    fn side_series_starts_at_side_degree() {
        for s in [LEFT_SENTINEL, RIGHT_SENTINEL] {
            let parts = [2u32, 1, 3];
            let series = side_series(&parts, s, 40, |_| 0, &LaurentPoly::one(), triangle(&parts));
            let first = series.coeffs().iter().position(|c| !c.is_zero()).unwrap();
            assert_eq!(first as u64, side_degree(&parts, s));
        }
    }

    #[test]
    fn profile_rejects_empty_runs() {
        assert!(RunProfile::new(vec![1, 0], vec![]).is_none());
        let p = RunProfile::new(vec![1, 1], vec![1]).unwrap();
        assert_eq!(p.min_degree(), 2 + 1);
    }
}
