//! Run-profile expansions of the partition functions and sector masses,
//! and drivers comparing them with product forms and direct enumeration.

pub mod inhomogeneous;
pub mod jacobi;
pub mod profiles;
pub mod runs;
pub mod verify;
