//! Detailed-balance and stationarity checks on truncated chains, and an
//! event-driven simulator.

pub mod balance;
pub mod gillespie;
pub mod stationarity;

pub use balance::{build_chain, check_detailed_balance, within_cap, BalanceFailure, BalanceReport, Chain, CheckMode, Edge};
pub use gillespie::{simulate, simulate_with, total_variation, Stop, TrajectoryStats};
pub use stationarity::{is_irreducible, stationarity_check, Residual};
