//! Equivariant differential forms in the Cartan model up to degree 3, the
//! relative and characteristic classes, and the vanishing decision with
//! explicit witnesses or infeasibility certificates.

mod cochain;
mod vanishing;

pub use cochain::{
    characteristic_class, check_membership, d_equivariant, project_classes, relative_class, EquivariantCochain,
};
pub use vanishing::{
    compare, decide_vanishing, verify_witness, ClassStatus, ClassVerdict, Comparison, EquivariantEquivalence,
    Obstruction, Stage, Witness,
};

#[cfg(test)]
mod tests;
