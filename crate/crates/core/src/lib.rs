pub mod corr;
pub mod delta;
pub mod error;
pub mod green;
pub mod group;
pub mod identities;
pub mod jordan;
pub mod oracle;
pub mod par;
pub mod parith;
pub mod perm;
pub mod standardness;
pub mod sweep;
pub mod tables;

pub use error::{Error, Result};
pub use parith::Prime;
pub use perm::Permutation;
