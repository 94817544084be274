//! Group-invariant Boolean formulas for the permutation-group word problem,
//! plus exhaustive checkers for the invariant lower-bound machinery.

pub mod build;
pub mod cli;
pub mod error;
pub mod formula;
pub mod fp;
pub mod goursat;
pub mod grid;
pub mod group;
pub mod io;
pub mod params;
pub mod perm;
pub mod report;
pub mod subgroup;
pub mod structure;
pub mod sweep;
pub mod tuple;
pub mod verify;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use group::{Ceilings, FiniteGroup, GroupTable};
pub use perm::Perm;
pub use subgroup::SubgroupHandle;
