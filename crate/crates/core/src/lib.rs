//! Computations on solvable Lie algebras with left-invariant metrics.

pub mod derivations;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod lie;
pub mod modification;
pub mod random;

pub use error::{Error, Result};
