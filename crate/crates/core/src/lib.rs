//! Exact computations for finite groups of plane birational maps.
//!
//! The crate is `no_std` (with `alloc`). It provides cyclotomic scalars,
//! homogeneous polynomials and plane rational maps, Picard lattices of blown-up
//! planes with their negative curves and conic bundles, and group actions on
//! those lattices.

#![no_std]

extern crate alloc;

mod cyclo_table;
pub mod error;
mod expr;
mod modp;
pub mod linalg;
pub mod scalar;
pub mod poly;
pub mod group;
pub mod birmap;
pub mod lattice;
pub mod action;

pub use error::{Error, Result};
pub use scalar::CycScalar;
pub use poly::HomPoly;
pub use birmap::{ProjMap, ProjPoint};
pub use lattice::{DivisorClass, SurfaceModel};
