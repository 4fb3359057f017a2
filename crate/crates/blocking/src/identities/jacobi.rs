//! The constant-coupling partition function: run-profile sum, product form
//! and direct configuration enumeration.
//!
//! Series here are in Q = q^2 and z = q^{-2c}. The y-slot carries y = u^2 for
//! the run-profile sum and u = e^{-beta} itself for the Ising partition
//! function, so every exponent stays integral.

use super::profiles::{all_side_profiles, side_series, sum_over, triangle, LEFT_SENTINEL, RIGHT_SENTINEL};
use crate::kernel::Kernel;
use crate::observables::{enumerate_spin_sector, hamiltonian};
use crate::qseries::{blocking_product, triple_product, LaurentPoly, Mismatch, TruncatedSeries};
use crate::error::Result;
use serde::Serialize;

/// Deliberate corruptions of the run-profile sum, for sensitivity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Drops the y^{-1} term of the trailing bracket.
    DropBracketConstant,
    /// Uses 0 instead of -1 for the sentinel before the first left run.
    LeftSentinelZero,
}

/// Per side: Σ_parts w^len Q^{exponent} z^{±Σ parts} Π 1/(1 - Q^{T_j}), and the
/// same sum with an extra Q^{Σ parts}.
fn side_sums(cap: usize, sentinel: i64, z_sign: i64, slot_per_run: i64, used_sentinel: i64) -> (TruncatedSeries, TruncatedSeries) {
    // A larger sentinel only raises degrees, so the true sentinel's
    // enumeration covers the faulty one.
    let profiles = all_side_profiles(sentinel, cap as u64);
    let term = |p: &[u32], with_total: bool| {
        let total: u64 = p.iter().map(|&x| x as u64).sum();
        let pre = LaurentPoly::unit(z_sign * total as i64, slot_per_run * p.len() as i64);
        let extra = triangle(p) + if with_total { total } else { 0 };
        side_series(p, used_sentinel, cap, |_| 0, &pre, extra)
    };
    let plain = sum_over(&profiles, cap, |p| term(p, false));
    let weighted = sum_over(&profiles, cap, |p| term(p, true));
    (plain, weighted)
}

/// Σ_{L,R>=0} w^{L+R} [a · F_L F_R + b · G_L G_R], where F are the side sums
/// and G carry the extra Q^{Σℓ + Σm}.
fn run_profile_sum(cap: usize, slot_per_run: i64, a: &LaurentPoly, b: &LaurentPoly, fault: Fault) -> TruncatedSeries {
    let left_sentinel = if fault == Fault::LeftSentinelZero { 0 } else { LEFT_SENTINEL };
    let (fl, gl) = side_sums(cap, LEFT_SENTINEL, -1, slot_per_run, left_sentinel);
    let (fr, gr) = side_sums(cap, RIGHT_SENTINEL, 1, slot_per_run, RIGHT_SENTINEL);
    let first = if fault == Fault::DropBracketConstant {
        // Only the empty profile keeps its constant term.
        TruncatedSeries::one(cap).scale(a)
    } else {
        fl.mul(&fr).scale(a)
    };
    first.add(&gl.mul(&gr).scale(b))
}

/// Z(Q, z, y) as the sum over run profiles, including the empty profile.
pub fn z_j1(cap: usize) -> TruncatedSeries {
    z_j1_with_fault(cap, Fault::None)
}

pub fn z_j1_with_fault(cap: usize, fault: Fault) -> TruncatedSeries {
    let y_inv = LaurentPoly::y_power(-1);
    let rest = LaurentPoly::one().sub(&y_inv);
    run_profile_sum(cap, 1, &y_inv, &rest, fault)
}

/// Z(Q, z, y) = Π (1 + (y-1)Q^i)(1 + Q^i z)(1 + Q^{i-1} z^{-1}).
pub fn z_j1_product(cap: usize) -> TruncatedSeries {
    triple_product(cap).mul(&blocking_product(cap))
}

/// Z_{beta,q,c} for constant coupling from the run expansion; y-slot is u.
pub fn ising_partition_function(cap: usize) -> TruncatedSeries {
    ising_partition_function_with_fault(cap, Fault::None)
}

pub fn ising_partition_function_with_fault(cap: usize, fault: Fault) -> TruncatedSeries {
    let u_inv = LaurentPoly::y_power(-1);
    let rest = LaurentPoly::y_power(1).sub(&u_inv);
    run_profile_sum(cap, 2, &u_inv, &rest, fault)
}

/// u · Z(Q, z, u^2); y-slot is u.
pub fn ising_product(cap: usize) -> TruncatedSeries {
    z_j1_product(cap).dilate_y(2).scale(&LaurentPoly::y_power(1))
}

/// Σ_σ u^{H(σ)} Q^{f_0(σ)/2} z^{N(σ)} over every configuration with
/// f_0/2 <= cap; y-slot is u.
pub fn ising_enumerated(cap: usize, kernel: &Kernel) -> Result<TruncatedSeries> {
    let mut total = TruncatedSeries::zero(cap);
    for n in sectors_within(cap) {
        total.add_assign(&sector_enumerated(kernel, n, cap)?);
    }
    Ok(total)
}

/// Sectors whose ground state has f_0/2 = n(n+1)/2 <= cap.
pub fn sectors_within(cap: usize) -> Vec<i64> {
    let cap = cap as i64;
    let mut n = 0i64;
    while (n + 1) * (n + 2) / 2 <= cap {
        n += 1;
    }
    (-n - 1..=n).collect()
}

/// Σ over sector n of u^{H} Q^{f_0/2} z^n, up to Q-degree cap; y-slot is u.
pub fn sector_enumerated(kernel: &Kernel, n: i64, cap: usize) -> Result<TruncatedSeries> {
    let ground = (n * (n + 1) / 2) as usize;
    let mut s = TruncatedSeries::zero(cap);
    if ground > cap {
        return Ok(s);
    }
    for sigma in enumerate_spin_sector(n, (cap - ground) as u64) {
        let h = hamiltonian(&sigma, kernel)?;
        debug_assert!(h.is_integer());
        let rank = crate::observables::rank(&sigma) as usize;
        s.add_at(ground + rank, &LaurentPoly::unit(n, *h.numer()));
    }
    Ok(s)
}

/// How the zero-coupling partition function compares with two displayed
/// product forms. The y-slot is dropped (u = 1).
#[derive(Debug, Clone, Serialize)]
pub struct ZeroCouplingReport {
    pub degree: usize,
    /// Π (1 + Q^i z)(1 + Q^{i-1} z^{-1}), i.e. q^{2(i-c)} in the first factor.
    pub minus_c_form_matches: bool,
    pub minus_c_form_mismatch: Option<Mismatch>,
    /// Π (1 + Q^i z^{-1})(1 + Q^{i-1} z^{-1}), i.e. q^{2(i+c)} in the first factor.
    pub plus_c_form_matches: bool,
    pub plus_c_form_mismatch: Option<Mismatch>,
}

fn zero_coupling_product(cap: usize, first_z: i64) -> TruncatedSeries {
    let factors: Vec<_> = (1..=cap + 1)
        .flat_map(|i| {
            [
                TruncatedSeries::binomial(cap, LaurentPoly::z_power(first_z), i),
                TruncatedSeries::binomial(cap, LaurentPoly::z_power(-1), i - 1),
            ]
        })
        .collect();
    TruncatedSeries::product(cap, &factors)
}

/// Enumerates at u = 1 and compares with both sign conventions for c.
pub fn zero_coupling_report(cap: usize) -> Result<ZeroCouplingReport> {
    let one = num_rational::BigRational::from_integer(1.into());
    let enumerated = ising_enumerated(cap, &Kernel::Constant)?.specialize_y(&one);
    let minus = enumerated.first_mismatch(&zero_coupling_product(cap, 1));
    let plus = enumerated.first_mismatch(&zero_coupling_product(cap, -1));
    Ok(ZeroCouplingReport {
        degree: cap,
        minus_c_form_matches: minus.is_none(),
        minus_c_form_mismatch: minus,
        plus_c_form_matches: plus.is_none(),
        plus_c_form_mismatch: plus,
    })
}
