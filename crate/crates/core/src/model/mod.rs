//! Finite groups as indexed tables, their subgroups and automorphisms, coset
//! actions, and the diagonal group `W(T)` acting on `Omega = T`.

mod aut;
mod coset;
mod diagonal;
mod subgroup;
mod table;

pub use aut::{
    aut_orbits_on_classes, automorphism_group, AutGroup, Automorphism, DEFAULT_AUT_CAP,
    DEFAULT_SEARCH_LIMIT,
};
pub use coset::{coset_action, CosetAction, CosetSpace};
pub use diagonal::{
    inversion, left_translation, right_translation, DiagonalGroup, GeneratorRole, Side,
    DEFAULT_DIAGONAL_CAP,
};
pub use subgroup::{
    centralizer, derived_subgroup, normal_closure, normal_subgroups, normalizer, sylow_subgroup,
    Subgroup,
};
pub use table::GroupTable;
