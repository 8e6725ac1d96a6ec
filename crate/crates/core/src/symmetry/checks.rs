//! Identities relating the symmetry to the Fedosov data. Each is evaluated
//! with both signs of the i_a(X)r term.

use super::{LieAction, QuantumHamiltonian};
use crate::algebra::{exps_up_to, unit, Poly};
use crate::error::{Error, Result};
use crate::fedosov::FedosovSetup;
use crate::geometry::{lie_weyl, PolyVectorField};
use crate::weyl::{insert_anti, WeylElement, WeylKey, EXACT};

/// Residuals of one identity with +i_a(X)r (`plus`) and −i_a(X)r (`minus`)
/// in the element θ_X⊗1 + ½Dθ_X⊗1 ± i_a(X)r.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedResidual {
    pub label: String,
    pub plus: WeylElement,
    pub minus: WeylElement,
}

impl SignedResidual {
    /// Signs (+1, −1) whose residual vanishes within validity.
    pub fn passing_signs(&self) -> Vec<i8> {
        let mut s = Vec::new();
        if self.plus.vanishes() {
            s.push(1);
        }
        if self.minus.vanishes() {
            s.push(-1);
        }
        s
    }
}

/// Signs passing for every entry.
pub fn common_signs(rs: &[SignedResidual]) -> Vec<i8> {
    [1, -1]
        .into_iter()
        .filter(|s| rs.iter().all(|r| r.passing_signs().contains(s)))
        .collect()
}

/// θ_X⊗1 = (i_Xω)ᵢ yⁱ.
fn theta_sym(setup: &FedosovSetup, x: &PolyVectorField) -> WeylElement {
    let n = setup.dim();
    let theta = setup.geometry().theta(x);
    let mut out = WeylElement::zero(n, EXACT);
    for i in 0..n {
        out.add_term(WeylKey::new(0, unit(i), 0), theta.coeff_of(&[i]));
    }
    out
}

/// θ_X⊗1 + ½Dθ_X⊗1 and i_a(X)r.
fn cartan_parts(setup: &FedosovSetup, x: &PolyVectorField) -> (WeylElement, WeylElement) {
    let th = theta_sym(setup, x);
    let half = crate::algebra::rat(1, 2);
    let base = th.add(&setup.geometry().sym_cov_d(&th).scale(&half));
    (base, insert_anti(x.comps(), setup.r()))
}

/// Sample elements yᵅ⊗dx^A with coefficient 1 or xⁱ, |α| ≤ `sym_degree`,
/// |A| ≤ 1.
pub fn cartan_samples(dim: usize, sym_degree: u32) -> Vec<WeylElement> {
    let mut coeffs = vec![Poly::one()];
    coeffs.extend((0..dim).map(Poly::var));
    let antis: Vec<u32> = std::iter::once(0).chain((0..dim).map(|i| 1u32 << i)).collect();
    let mut out = Vec::new();
    for sym in exps_up_to(dim, sym_degree) {
        for &a in &antis {
            for f in &coeffs {
                out.push(WeylElement::monomial(dim, 0, sym.clone(), a, f.clone()));
            }
        }
    }
    out
}

/// ℒ_X a − (𝔇 i_a(X) + i_a(X)𝔇)a + qad(θ_X⊗1 + ½Dθ_X⊗1 ± i_a(X)r)(a) for each
/// sample a.
pub fn check_deformed_cartan(setup: &FedosovSetup, x: &PolyVectorField, samples: &[WeylElement]) -> Result<Vec<SignedResidual>> {
    if x.dim() != setup.dim() {
        return Err(Error::DimensionMismatch {
            expected: setup.dim(),
            found: x.dim(),
        });
    }
    let alg = setup.geometry().algebra();
    let (base, iar) = cartan_parts(setup, x);
    let mut out = Vec::new();
    for a in samples {
        let lie = lie_weyl(x, a);
        let ia = |b: &WeylElement| insert_anti(x.comps(), b);
        let homotopy = setup.derivation(&ia(a))?.add(&ia(&setup.derivation(a)?));
        let common = lie.sub(&homotopy);
        let res = |sign: i8| -> Result<WeylElement> {
            let h = if sign > 0 { base.add(&iar) } else { base.sub(&iar) };
            Ok(common.add(&alg.qad(&h, a)?))
        };
        out.push(SignedResidual {
            label: a.to_string(),
            plus: res(1)?,
            minus: res(-1)?,
        });
    }
    Ok(out)
}

/// τ(𝐉(ξ)) − (𝐉(ξ) + θ_ξ⊗1 + ½Dθ_ξ⊗1 ± i_a(ξ)r) for each basis ξ. Fails if
/// no sign gives zero for every ξ.
pub fn check_qham_taylor(
    setup: &FedosovSetup,
    action: &LieAction,
    ham: &QuantumHamiltonian,
) -> Result<Vec<SignedResidual>> {
    let mut out = Vec::new();
    for (i, (x, j)) in action.fields().iter().zip(&ham.values).enumerate() {
        let tau = setup.taylor(j)?;
        let (base, iar) = cartan_parts(setup, x);
        let common = tau.sub(&WeylElement::from_nu_series(setup.dim(), j)).sub(&base);
        out.push(SignedResidual {
            label: format!("xi_{}", i + 1),
            plus: common.sub(&iar),
            minus: common.add(&iar),
        });
    }
    if common_signs(&out).is_empty() {
        let bad = out.iter().find(|r| r.passing_signs().is_empty()).unwrap_or(&out[0]);
        return Err(Error::Invalid(format!(
            "Taylor series of the quantum Hamiltonian matches neither sign at {}: residuals {} and {}",
            bad.label, bad.plus, bad.minus
        )));
    }
    Ok(out)
}
