//! Tree-like tableaux, permutation tableaux and non-ambiguous trees.

pub mod abpoly;
pub mod bijection;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod path;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use path::{BorderPath, Cell, Step};
pub use tableau::{NocClass, NonAmbiguousTree, PermutationTableau, StatRecord, TreeLikeTableau};
