//! Permutation arithmetic and finite permutation-group machinery: closure,
//! subgroups, right cosets, stabilizers, coset actions, and cores.

mod group;
mod perm;

pub use group::{core, CosetTable, FiniteGroup, Subgroup};
pub use perm::Permutation;

