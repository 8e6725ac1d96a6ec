//! Fedosov's construction: the element r, the derivation 𝔇 with its
//! homotopy, the Fedosov-Taylor series τ and the star product ⋆_Ω; plus an
//! independent Moyal product for comparison.

mod derivation;
mod moyal;
mod setup;
mod star;

pub use moyal::moyal_oracle;
pub use setup::{default_n_deg, forms_to_weyl, FedosovSetup};
