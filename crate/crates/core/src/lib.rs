//! Integer polymatroids, their k-natural matroids, and excluded minors for
//! the classes that forbid a uniform matroid and its dual.
//!
//! Rank functions are dense tables indexed by subset bitmask ([`RankTable`]).
//! Everything about the natural matroid goes through the multiset rank grid
//! in [`natural`]; the natural matroid itself is never built except for tiny
//! cross-checks.

pub mod catalog;
pub mod compression;
pub mod decomposition;
pub mod error;
pub mod ground;
pub mod json;
pub mod limits;
pub mod natural;
pub mod poly;
pub mod polytope;
pub mod search;
pub mod subset;
pub mod uniform;
pub mod verify;

pub use error::{Error, Result};
pub use ground::GroundSet;
pub use limits::Limits;
pub use natural::{CloneElement, CountVector, MultisetRankGrid};
pub use poly::{MaxSepMatroid, RankTable};
pub use polytope::RationalPoint;
pub use subset::Subset;
pub use uniform::ClassSpec;
