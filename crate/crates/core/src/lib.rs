//! Exact combinatorics for block-transitive 2-(v,5,λ) designs.
//!
//! The crate provides permutation-group machinery (stabilizer chains, orbits
//! on points and k-subsets, block systems), incidence-structure construction
//! and t-design verification, the imprimitive classification pipeline over an
//! ingested transitive-group catalog, design isomorphism via canonical
//! labeling, and the rank-3 product-action analysis on grids.

pub mod construct;
pub mod design;
pub mod error;
pub mod group;
pub mod imprimitive;
pub mod io;
pub mod iso;
pub mod perm;
pub mod product;
pub mod subsets;

pub use error::{Error, Result};
pub use group::{BlockSystem, PermGroup};
pub use perm::Permutation;
