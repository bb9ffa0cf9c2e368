//! Finite universes of model traces and the side-condition forcing calculus
//! built on them: adequate sets, the single forcing with its extension,
//! restriction and amalgamation operators, and the product forcing.

pub mod adequacy;
pub mod doc;
pub mod fixtures;
pub mod ordset;
pub mod product;
pub mod single;
pub mod universe;

pub use ordset::{OrdSet, OrdinalValue};
