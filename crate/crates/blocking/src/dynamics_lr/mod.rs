//! Long-range exchange dynamics, their stood-up images, the restricted and
//! natural particle dynamics, and summability diagnostics.

pub mod concentration;
pub mod longrange;
pub mod natural;

pub use concentration::{concentration_report, ConcentrationReport, Condition, Verdict};
pub use longrange::{
    lr_energy_change, lr_ising_rate, lr_ising_transitions, lr_particle_transitions, restricted_ising_transitions,
    restricted_particle_transitions,
};
pub use natural::{fc_from_particles, kappa_weight, lambda_weight, natural_transitions, RunLengths};
