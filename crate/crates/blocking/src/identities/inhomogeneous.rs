//! The linear-coupling sector sum Z_n(Q, y): balanced run profiles against
//! the partial-sum statistic of partitions.

use super::profiles::{all_side_profiles, side_series, sum_by_shape, triangle, LEFT_SENTINEL, RIGHT_SENTINEL};
use crate::combinatorics::overpartitions::partial_sum_stats;
use crate::combinatorics::partitions::partitions_up_to;
use crate::qseries::{LaurentPoly, TruncatedSeries};
use std::collections::BTreeMap;

/// Side sums of a balanced profile, keyed by (runs, total run length).
#[derive(Debug, Clone)]
pub struct BalancedSides {
    cap: usize,
    left: BTreeMap<(usize, u64), TruncatedSeries>,
    right: BTreeMap<(usize, u64), TruncatedSeries>,
}

impl BalancedSides {
    /// Left: Π Q^{ℓ_j(ℓ_j-1)/2} (y^{-(L-j+1)} Q^{T_j})^{ℓ_{j-1}+1} / (1 - y^{-(L-j+1)} Q^{T_j});
    /// right the same with y^{R-j+1}.
    pub fn new(cap: usize) -> Self {
        let side = |sentinel: i64, sign: i64| {
            let profiles: Vec<_> = all_side_profiles(sentinel, cap as u64).into_iter().filter(|p| !p.is_empty()).collect();
            sum_by_shape(&profiles, cap, |p| {
                let len = p.len() as i64;
                side_series(p, sentinel, cap, |j| sign * (len - j as i64 + 1), &LaurentPoly::one(), triangle(p))
            })
        };
        Self { cap, left: side(LEFT_SENTINEL, -1), right: side(RIGHT_SENTINEL, 1) }
    }

    /// Σ_len y^{slope·len} side(len, total).
    fn graded(table: &BTreeMap<(usize, u64), TruncatedSeries>, cap: usize, total: u64, slope: i64) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(cap);
        for (&(len, t), v) in table {
            if t == total {
                s.add_assign(&v.scale(&LaurentPoly::y_power(slope * len as i64)));
            }
        }
        s
    }

    /// 1 + Σ_{L,R>0} y^{nL+(n-1)R} Σ_{Σm=Σℓ} [left][right]
    ///   (y^{-n} + (1 - y^{-n}) y^{R-L} Q^{Σℓ+Σm}).
    pub fn sector_sum(&self, n: i64) -> TruncatedSeries {
        let cap = self.cap;
        let totals: Vec<u64> = self.left.keys().map(|&(_, t)| t).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let y_neg = LaurentPoly::y_power(-n);
        let rest = LaurentPoly::one().sub(&y_neg);
        let mut z = TruncatedSeries::one(cap);
        for s in totals {
            let l_first = Self::graded(&self.left, cap, s, n);
            let r_first = Self::graded(&self.right, cap, s, n - 1);
            z.add_assign(&l_first.mul(&r_first).scale(&y_neg));
            if 2 * s as usize <= cap {
                let l_second = Self::graded(&self.left, cap, s, n - 1);
                let r_second = Self::graded(&self.right, cap, s, n);
                z.add_assign(&l_second.mul(&r_second).shift(2 * s as usize).scale(&rest));
            }
        }
        z
    }
}

/// Z_n(Q, y) from balanced run profiles.
pub fn z_ji(n: i64, cap: usize) -> TruncatedSeries {
    BalancedSides::new(cap).sector_sum(n)
}

/// Σ_p y^{n k(p) + minimal(p) - partial_sums(p)} Q^{|p|} over |p| <= cap.
pub fn z_ji_enumerated(n: i64, cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    for p in partitions_up_to(cap as u32) {
        let size: u32 = p.iter().sum();
        s.add_at(size as usize, &LaurentPoly::y_power(partial_sum_stats(&p).exponent(n)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_profiles_match_partial_sums() {
        let cap = 12;
        let sides = BalancedSides::new(cap);
        for n in -2..=3 {
            assert_eq!(sides.sector_sum(n).first_mismatch(&z_ji_enumerated(n, cap)), None, "n = {n}");
        }
    }

    #[test]
    fn constant_term_is_one() {
        for n in -2..=3 {
            assert_eq!(z_ji(n, 0).coeff(0), &LaurentPoly::one());
        }
    }

    #[test]
    fn single_part_sizes() {
        // Partition (1): k = 1, minimal 1, partial sums 1, so y^n.
        assert_eq!(z_ji(4, 1).coeff(1), &LaurentPoly::y_power(4));
    }
}
