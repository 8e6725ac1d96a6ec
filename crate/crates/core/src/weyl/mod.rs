//! The formal Weyl algebra 𝒲⊗Λ on ℝ²ⁿ: elements with validity tracking,
//! the undeformed product μ, the fiberwise product ∘_F and the operators
//! δ, δ*, δ⁻¹ and σ.

pub mod anti;
mod element;
mod ops;
mod product;

pub use element::{DegreeReport, WeylElement, WeylKey, EXACT};
pub use ops::{delta, delta_inv, delta_star, insert_anti, sigma};
pub use product::{mu, WeylAlgebra};
