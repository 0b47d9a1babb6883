pub mod catalog;
pub mod chartab;
pub mod error;
pub mod model;
pub mod perm;
pub mod spreading;

pub use error::{Error, Result};
pub use perm::{Permutation, PermutationGroup};
