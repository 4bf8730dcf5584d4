//! Finite-group Gelfand pair computations: permutation groups, character
//! tables, double-coset algebras, zonal spherical functions and Plancherel
//! moments.

pub mod api;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod gelfand;
pub mod group;
pub mod modp;
pub mod oracle;
pub mod pairs;
pub mod partition;
pub mod perm;
pub mod plancherel;
pub mod presets;
pub mod verify;

pub use error::{exit_code, Error, Result};
pub use perm::Permutation;
