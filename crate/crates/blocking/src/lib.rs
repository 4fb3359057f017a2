pub mod combinatorics;
pub mod config;
pub mod error;
pub mod identities;
pub mod kernel;
pub mod observables;
pub mod params;
pub mod scalar;
pub mod standup;
pub mod dynamics_lr;
pub mod dynamics_nn;
pub mod transition;
pub mod par;
pub mod qseries;
pub mod reversibility;
