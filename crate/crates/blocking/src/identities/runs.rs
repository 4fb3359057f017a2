//! Placement sums of run profiles and the sector masses built from them.
//!
//! Series are in Q and u = e^{-beta} (carried in the y-slot); sector masses
//! also carry z^n in the z-slot.

use super::jacobi::sector_enumerated;
use super::profiles::{all_side_profiles, side_series, tails, triangle, RunProfile, LEFT_SENTINEL, RIGHT_SENTINEL};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::par;
use crate::qseries::{LaurentPoly, TruncatedSeries};
use std::collections::BTreeMap;

/// Placement sums for one profile in the landscape shifted by n.
///
/// `right_all` places − runs of lengths m_j starting at s_1 >= 1 with gaps
/// s_{j+1} - s_j >= m_j + 1, weighting each by Q^{s_j m_j} u^{J(s_j+n-1) +
/// J(s_j+m_j+n-1)}. `left_all` places + runs ending at r_1 <= 0 with
/// r_{j+1} - r_j <= -ℓ_j - 1, weighting by Q^{-r_j ℓ_j} u^{J(r_j+n) +
/// J(r_j-ℓ_j+n)}. The detached sums keep only placements off the origin
/// bond: s_1 > 1 and r_1 < 0. An empty side sums to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSums {
    pub right_all: TruncatedSeries,
    pub left_all: TruncatedSeries,
    pub right_detached: TruncatedSeries,
    pub left_detached: TruncatedSeries,
}

fn integral_bond(kernel: &Kernel, i: i64) -> Result<i64> {
    let j = kernel.bond(i);
    if !j.is_integer() {
        return Err(Error::Unsupported(format!("non-integer coupling J({i}) = {j}")));
    }
    Ok(*j.numer())
}

/// Σ over positions p_1 >= first, p_{j+1} >= p_j + x_j + 1 of
/// Π Q^{p_j x_j} u^{energy(p_j, x_j)}.
fn placements<E>(parts: &[u32], first: i64, cap: usize, energy: &E) -> Result<TruncatedSeries>
where
    E: Fn(i64, i64) -> Result<i64>,
{
    let mut out = TruncatedSeries::zero(cap);
    place(parts, first, 0, 0, cap as i64, energy, &mut out)?;
    Ok(out)
}

fn place<E>(parts: &[u32], pos: i64, degree: i64, u_exp: i64, cap: i64, energy: &E, out: &mut TruncatedSeries) -> Result<()>
where
    E: Fn(i64, i64) -> Result<i64>,
{
    let Some((&x, rest)) = parts.split_first() else {
        out.add_at(degree as usize, &LaurentPoly::y_power(u_exp));
        return Ok(());
    };
    let x = x as i64;
    let mut p = pos;
    loop {
        // Cheapest completion: every later run packed as tightly as possible.
        let mut least = degree + p * x;
        let mut next = p + x + 1;
        for &y in rest {
            least += next * y as i64;
            next += y as i64 + 1;
        }
        if least > cap {
            return Ok(());
        }
        place(rest, p + x + 1, degree + p * x, u_exp + energy(p, x)?, cap, energy, out)?;
        p += 1;
    }
}

/// Direct truncated summation over placements; any integral
/// nearest-neighbour kernel.
pub fn direct_run_sums(kernel: &Kernel, n: i64, profile: &RunProfile, cap: usize) -> Result<RunSums> {
    if !kernel.is_nearest_neighbour() {
        return Err(Error::Unsupported("run sums need a nearest-neighbour kernel".into()));
    }
    let right = |s: i64, m: i64| Ok(integral_bond(kernel, s + n - 1)? + integral_bond(kernel, s + m + n - 1)?);
    // Left runs are placed at t = -r >= 0.
    let left = |t: i64, l: i64| Ok(integral_bond(kernel, n - t)? + integral_bond(kernel, n - t - l)?);
    Ok(RunSums {
        right_all: placements(&profile.right, 1, cap, &right)?,
        left_all: placements(&profile.left, 0, cap, &left)?,
        right_detached: placements(&profile.right, 2, cap, &right)?,
        left_detached: placements(&profile.left, 1, cap, &left)?,
    })
}

fn total(parts: &[u32]) -> i64 {
    parts.iter().map(|&x| x as i64).sum()
}

/// Closed forms of one side's placement sums: (all, detached).
fn closed_side(kernel: &Kernel, n: i64, parts: &[u32], right: bool, cap: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let len = parts.len() as i64;
    let sum = total(parts);
    let sentinel = if right { RIGHT_SENTINEL } else { LEFT_SENTINEL };
    let (all, detached_u) = match kernel {
        Kernel::Constant => {
            let all = side_series(parts, sentinel, cap, |_| 0, &LaurentPoly::y_power(2 * len), 0);
            (all, 0)
        }
        Kernel::Linear => {
            let (pre, sign) = if right { (2 * len * (n - 1) + sum, 1) } else { (2 * len * n - sum, -1) };
            let all = side_series(parts, sentinel, cap, |j| sign * 2 * (len - j as i64 + 1), &LaurentPoly::y_power(pre), 0);
            (all, if right { 2 * len } else { -2 * len })
        }
        _ => return Err(Error::Unsupported("closed forms need constant or linear coupling".into())),
    };
    let detached = all.shift(sum as usize).scale(&LaurentPoly::y_power(detached_u));
    Ok((all, detached))
}

/// Closed forms for constant and linear coupling.
pub fn closed_run_sums(kernel: &Kernel, n: i64, profile: &RunProfile, cap: usize) -> Result<RunSums> {
    let (right_all, right_detached) = closed_side(kernel, n, &profile.right, true, cap)?;
    let (left_all, left_detached) = closed_side(kernel, n, &profile.left, false, cap)?;
    Ok(RunSums { right_all, left_all, right_detached, left_detached })
}

/// Closed forms, after checking them against direct summation.
pub fn run_sums(kernel: &Kernel, n: i64, profile: &RunProfile, cap: usize) -> Result<RunSums> {
    let closed = closed_run_sums(kernel, n, profile, cap)?;
    let direct = direct_run_sums(kernel, n, profile, cap)?;
    let pairs = [
        ("right_all", &closed.right_all, &direct.right_all),
        ("left_all", &closed.left_all, &direct.left_all),
        ("right_detached", &closed.right_detached, &direct.right_detached),
        ("left_detached", &closed.left_detached, &direct.left_detached),
    ];
    for (name, a, b) in pairs {
        if let Some(m) = a.first_mismatch(b) {
            return Err(Error::Inconsistent(format!(
                "{name} closed form differs from direct sum for {profile:?} at Q^{} z^{} u^{}: {} vs {}",
                m.degree, m.z_exp, m.y_exp, m.left, m.right
            )));
        }
    }
    Ok(closed)
}

/// Σ over one side's profiles of Q^{Σ x(x-1)/2} × (all, detached), keyed by
/// the total run length. The empty side contributes (1, 1) at total 0.
type SideTable = BTreeMap<u64, (TruncatedSeries, TruncatedSeries)>;

fn side_table(kernel: &Kernel, n: i64, right: bool, cap: usize) -> Result<SideTable> {
    let sentinel = if right { RIGHT_SENTINEL } else { LEFT_SENTINEL };
    let profiles = all_side_profiles(sentinel, cap as u64);
    let terms = par::map(&profiles, |p| -> Result<(u64, TruncatedSeries, TruncatedSeries)> {
        let (all, detached) = closed_side(kernel, n, p, right, cap)?;
        let t = triangle(p) as usize;
        Ok((tails(p)[0], all.shift(t), detached.shift(t)))
    });
    let mut table = SideTable::new();
    for term in terms {
        let (key, all, detached) = term?;
        let entry = table.entry(key).or_insert_with(|| (TruncatedSeries::zero(cap), TruncatedSeries::zero(cap)));
        entry.0.add_assign(&all);
        entry.1.add_assign(&detached);
    }
    Ok(table)
}

/// Σ_{Σm - Σℓ = offset} Q^{triangles} (u^{-J} A B + (u^J - u^{-J}) a b), with
/// J the coupling across the origin bond.
fn combine(kernel: &Kernel, n: i64, offset: i64, cap: usize) -> Result<TruncatedSeries> {
    combine_filtered(kernel, n, offset, cap, false)
}

/// With `both_sides`, pairs with an empty side are replaced by the single
/// constant u^J.
fn combine_filtered(kernel: &Kernel, n: i64, offset: i64, cap: usize, both_sides: bool) -> Result<TruncatedSeries> {
    let left = side_table(kernel, n, false, cap)?;
    let right = side_table(kernel, n, true, cap)?;
    let j = integral_bond(kernel, n)?;
    let u_neg = LaurentPoly::y_power(-j);
    let diff = LaurentPoly::y_power(j).sub(&u_neg);
    let mut out = TruncatedSeries::zero(cap);
    if both_sides {
        out.add_at(0, &LaurentPoly::y_power(j));
    }
    for (&l_total, (l_all, l_det)) in &left {
        let r_total = l_total as i64 + offset;
        if r_total < 0 || (both_sides && (l_total == 0 || r_total == 0)) {
            continue;
        }
        if let Some((r_all, r_det)) = right.get(&(r_total as u64)) {
            out.add_assign(&r_all.mul(l_all).scale(&u_neg));
            out.add_assign(&r_det.mul(l_det).scale(&diff));
        }
    }
    Ok(out)
}

fn check_mass_kernel(kernel: &Kernel) -> Result<()> {
    match kernel {
        Kernel::Constant | Kernel::Linear => Ok(()),
        _ => Err(Error::Unsupported("sector masses need constant or linear coupling".into())),
    }
}

/// Z·μ(N = n) summed directly over runs in sector n: profiles with
/// Σm - Σℓ = n, either side possibly empty.
pub fn sector_mass_direct(kernel: &Kernel, n: i64, cap: usize) -> Result<TruncatedSeries> {
    check_mass_kernel(kernel)?;
    Ok(combine(kernel, 0, n, cap)?.scale(&LaurentPoly::z_power(n)))
}

/// Z·μ(N = n) as z^n Q^{n(n+1)/2} times the sector-0 sum weighted by the
/// shifted coupling.
pub fn sector_mass_shifted(kernel: &Kernel, n: i64, cap: usize) -> Result<TruncatedSeries> {
    check_mass_kernel(kernel)?;
    let ground = (n * (n + 1) / 2) as usize;
    if ground > cap {
        return Ok(TruncatedSeries::zero(cap));
    }
    Ok(combine(kernel, n, 0, cap)?.shift(ground).scale(&LaurentPoly::z_power(n)))
}

/// The direct sum, after checking it against the shifted form and against
/// configuration enumeration.
pub fn sector_mass(kernel: &Kernel, n: i64, cap: usize) -> Result<TruncatedSeries> {
    let direct = sector_mass_direct(kernel, n, cap)?;
    let checks = [("shifted form", sector_mass_shifted(kernel, n, cap)?), ("enumeration", sector_enumerated(kernel, n, cap)?)];
    for (name, other) in checks {
        if let Some(m) = direct.first_mismatch(&other) {
            return Err(Error::Inconsistent(format!(
                "sector {n} mass differs from the {name} at Q^{} z^{} u^{}: {} vs {}",
                m.degree, m.z_exp, m.y_exp, m.left, m.right
            )));
        }
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::jacobi::{ising_partition_function, sectors_within};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_profile(rng: &mut ChaCha8Rng) -> RunProfile {
        let mut side = |max_len: usize| (0..rng.gen_range(0..=max_len)).map(|_| rng.gen_range(1..=3)).collect::<Vec<u32>>();
        let left = side(3);
        let right = side(3);
        RunProfile::new(left, right).unwrap()
    }

    #[test]
    fn closed_forms_match_direct_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_profile(&mut rng);
            for kernel in [Kernel::Constant, Kernel::Linear] {
                for n in [-2, 0, 1, 3] {
                    run_sums(&kernel, n, &p, 14).unwrap();
                }
            }
        }
    }

    #[test]
    fn detached_sums_are_shifted_copies() {
        let p = RunProfile::new(vec![2, 1], vec![1, 3]).unwrap();
        let s = direct_run_sums(&Kernel::Constant, 0, &p, 20).unwrap();
        assert_eq!(s.left_detached, s.left_all.shift(3));
        assert_eq!(s.right_detached, s.right_all.shift(4));
        let lin = direct_run_sums(&Kernel::Linear, 1, &p, 20).unwrap();
        assert_eq!(lin.left_detached, lin.left_all.shift(3).scale(&LaurentPoly::y_power(-4)));
        assert_eq!(lin.right_detached, lin.right_all.shift(4).scale(&LaurentPoly::y_power(4)));
    }

    #[test]
    fn single_run_by_hand() {
        // One + run of length 1, linear coupling, n = 0:
        // Σ_t Q^t u^{-2t-1} = u^{-1} / (1 - u^{-2} Q).
        let p = RunProfile::new(vec![1], vec![]).unwrap();
        let s = direct_run_sums(&Kernel::Linear, 0, &p, 5).unwrap();
        for d in 0..=5 {
            assert_eq!(s.left_all.coeff(d), &LaurentPoly::y_power(-2 * d as i64 - 1));
        }
        assert_eq!(s.right_all, TruncatedSeries::one(5));
    }

    #[test]
    fn sector_masses_agree_three_ways() {
        for kernel in [Kernel::Constant, Kernel::Linear] {
            for n in -2..=3 {
                sector_mass(&kernel, n, 9).unwrap();
            }
        }
    }

    #[test]
    fn both_sides_nonempty_only_covers_sector_zero() {
        for kernel in [Kernel::Constant, Kernel::Linear] {
            let restricted = |n: i64| combine_filtered(&kernel, 0, n, 8, true).unwrap().scale(&LaurentPoly::z_power(n));
            assert_eq!(restricted(0), sector_mass_direct(&kernel, 0, 8).unwrap());
            assert_ne!(restricted(1), sector_mass_direct(&kernel, 1, 8).unwrap());
        }
    }

    #[test]
    fn constant_coupling_sectors_are_theta_weighted() {
        let cap = 10;
        let zero = sector_mass(&Kernel::Constant, 0, cap).unwrap();
        for n in -3..=3i64 {
            let ground = (n * (n + 1) / 2) as usize;
            let expected = zero.shift(ground).scale(&LaurentPoly::z_power(n));
            assert_eq!(sector_mass(&Kernel::Constant, n, cap).unwrap(), expected);
        }
    }

    #[test]
    fn sectors_add_up_to_partition_function() {
        let cap = 10;
        let mut total = TruncatedSeries::zero(cap);
        for n in sectors_within(cap) {
            total.add_assign(&sector_mass_direct(&Kernel::Constant, n, cap).unwrap());
        }
        assert_eq!(total.first_mismatch(&ising_partition_function(cap)), None);
    }
}
