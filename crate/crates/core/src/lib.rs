//! Exact computer algebra for Fedosov star products on ℝ²ⁿ with polynomial
//! data: the formal Weyl algebra, the Fedosov fixed points, quantum momentum
//! maps, equivalence transformations and equivariant characteristic classes.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod equivalence;
pub mod error;
pub mod fedosov;
pub mod geometry;
pub mod symmetry;
pub mod weyl;

pub use error::{Error, Result};
