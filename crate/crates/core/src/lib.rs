//! Generalised dicyclic groups, their Cayley graphs, and the automorphism
//! groups of those graphs.
//!
//! The crate builds `R = Dic(A, y, x)`, its Cayley (di)graphs `Cay(R, S)`,
//! computes `Aut(Cay(R, S))` by individualization–refinement, constructs the
//! canonical group `B` that every such graph admits, and runs exhaustive or
//! sampled censuses of connection sets classifying `Aut = B` versus `Aut > B`.

pub mod abelian;
pub mod autgrp;
pub mod canonical;
pub mod cayley;
pub mod census;
pub mod cli;
pub mod dicyclic;
pub mod error;
pub mod perm;

pub use abelian::{AbelianElement, AbelianGroup, Subgroup};
pub use autgrp::{automorphism_group, brute_force_aut, is_automorphism};
pub use canonical::{build_canonical_b, regular_representation, verify_canonical_facts, BKind, CanonicalB};
pub use cayley::{build_cayley, count_inverse_closed, enumerate_inverse_closed, sample_inverse_closed, CayleyGraph, ConnectionSet};
pub use census::{classify, epsilon_bound, run_exhaustive, run_sampled, CensusRecord, CensusSummary, Verdict};
pub use dicyclic::{DicyclicElement, DicyclicGroup};
pub use error::{Error, Result};
pub use perm::{compose, groups_equal, is_subgroup, PermGroup, Permutation};
