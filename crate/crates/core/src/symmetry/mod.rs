//! Lie algebra actions by symplectic fields, quantum Hamiltonians and
//! quantum momentum maps.

mod action;
mod checks;
mod momentum;


pub use action::{Check, LieAction, ValidationReport};
pub use checks::{cartan_samples, check_deformed_cartan, check_qham_taylor, common_signs, SignedResidual};
pub use momentum::{
    bracket_residuals, classical_momentum_map, contracted_symplectic_series, equivariance_residuals,
    hamiltonian_primitives, hamiltonian_residuals, quantum_hamiltonian, quantum_momentum_map, solve_momentum_map,
    MomentumObstruction, MomentumOutcome, QuantumHamiltonian,
};
