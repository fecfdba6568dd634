//! Exact Kodaira-dimension computations for manifolds of dimension at most
//! four: low-dimensional manifolds, symplectic 4-manifolds given by a
//! minimal model plus blow-ups, relative dimensions for embedded surfaces,
//! and Lefschetz fibrations.
//!
//! Everything is exact rational arithmetic over integral lattices. The crate
//! is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
mod exceptional;
pub mod four_manifold;
pub mod kod;
pub mod lattice;
pub mod lefschetz;
pub mod low_dim;
pub mod relative;

pub use error::{Error, Result};
pub use four_manifold::{FourManifoldModel, MinimalModelKind, MinusOneSet, OmegaClass};
pub use kod::{KodDim, Sign};
pub use lattice::{ClassVector, IntersectionLattice, Rational};
