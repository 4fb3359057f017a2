//! Brute-force combinatorial oracles.

pub mod partitions;
pub mod frobenius;
pub mod overpartitions;
