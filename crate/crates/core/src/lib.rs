//! Finite p-rings, their adjoint groups, finite p-groups, derivation rings
//! and exhaustive checks of the bounds relating them.

pub mod abelian;
pub mod adjoint;
pub mod arith;
pub mod corpus;
pub mod error;
pub mod group;
pub mod morphisms;
pub mod report;
pub mod ring;
pub mod runner;
pub mod verify;

pub use error::{Error, Result};
