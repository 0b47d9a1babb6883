//! Non-spreading witnesses `(X, J)`: direct verification, the block
//! construction for `B ⊴ A`, its instance on `W(T)`, the supplement property
//! `A = B (A ∩ A^tau)`, and orbit counts on cosets.

mod ab;
mod multiset;
mod orbits;
mod supplement;
mod witness;

pub use ab::{ab_lemma_check, diagonal_witness, AbFailure, AbOutcome, AbWitness, DiagonalWitness};
pub use multiset::{Multiset, SparseMultiset};
pub use orbits::{
    orbit_bound_holds, orbit_count_pair, permutation_character, OrbitBound, OrbitCounts,
};
pub use supplement::{
    aut_conjugates_are_inner, supplement_property, two_point_stabilizer_trivial, Scope, ScopeKind,
    SupplementFailure, SupplementReport,
};
pub use witness::{verify_witness, Counterexample, Refutation, Violation, Witness, WitnessCheck};
