//! Symplectic and connection data on ℝ²ⁿ: ∇, D, curvature and Lie
//! derivatives on 𝒲⊗Λ, plus exact polynomial de Rham calculus.

mod connection;
mod curvature;
mod data;
mod forms;
mod vector;

pub use connection::lie_weyl;
pub use data::GeometryData;
pub use forms::{FormSeries, PolyForm};
pub use vector::PolyVectorField;
