//! Finite groups given by Cayley tables, their exact character tables,
//! normal-subgroup lattices, and supercharacter theories.
//!
//! ```
//! use sckit::{catalog, GroupData};
//!
//! let data = GroupData::new(catalog::group("S3").unwrap()).unwrap();
//! assert_eq!(data.table().degrees(), &[1, 1, 2]);
//! ```

pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod automorphism;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod export;
pub mod group;
pub mod io;
pub mod lattice;
pub mod modp;
pub mod perm;
pub mod subgroup;
pub mod theory;

pub use chartab::{character_table, CharacterTable};
pub use classes::{conjugacy_classes, structure_constants, ConjugacyClasses, StructureConstants};
pub use cyclotomic::{Cyclotomic, CyclotomicFraction};
pub use error::{Error, GroupDefect, Result};
pub use group::{cyclic_group, group_direct_product, group_from_cayley, group_from_permutations, Group, GroupConfig};
pub use lattice::{all_normal_subgroups, closure_a, mobius_table, n_circle, MobiusTable, NormalSet};
pub use perm::Permutation;
pub use subgroup::Subgroup;
pub use theory::{GroupData, GroupPartition, IrrPartition, SupercharacterTheory};
