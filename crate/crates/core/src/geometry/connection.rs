//! Covariant derivatives and Lie derivatives on 𝒲⊗Λ.

use super::{GeometryData, PolyVectorField};
use crate::algebra::{exps_bump, exps_get, int, Poly};
use crate::weyl::anti;
use crate::weyl::{WeylElement, WeylKey};

/// Adds the action of a slot endomorphism y^j ↦ Σ_k m(j,k) y^k (and the same
/// on dx^j in the antisymmetric factor) applied to `key`·f.
fn slot_action(
    out: &mut WeylElement,
    dim: usize,
    key: &WeylKey,
    f: &Poly,
    m: &impl Fn(usize, usize) -> Poly,
) {
    for j in 0..dim {
        let e = exps_get(&key.sym, j);
        if e == 0 {
            continue;
        }
        let lowered = exps_bump(&key.sym, j, -1);
        for k in 0..dim {
            let c = m(j, k);
            if c.is_zero() {
                continue;
            }
            let nk = WeylKey::new(key.nu, exps_bump(&lowered, k, 1), key.anti);
            out.add_term(nk, (f * &c).scale(&int(e as i64)));
        }
    }
    for j in anti::indices(key.anti) {
        let (rest, s1) = anti::remove(j, key.anti).expect("index present");
        for k in 0..dim {
            let c = m(j, k);
            if c.is_zero() {
                continue;
            }
            let Some((a, s2)) = anti::push_front(k, rest) else {
                continue;
            };
            let nk = WeylKey::new(key.nu, key.sym.clone(), a);
            out.add_term(nk, (f * &c).scale(&int((s1 * s2) as i64)));
        }
    }
}

impl GeometryData {
    /// ∇_{∂_i} on 𝒲⊗Λ, using ∇_{∂_i} dxʲ = −Γʲ_ik dxᵏ in every slot.
    pub fn cov_deriv(&self, i: usize, a: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero(a.dim(), a.valid());
        let flat = self.is_flat();
        for (k, f) in a.terms() {
            out.add_term(k.clone(), f.deriv(i));
            if !flat {
                slot_action(&mut out, self.dim(), k, f, &|j, l| -self.gamma_upper(j, i, l));
            }
        }
        out
    }

    /// ∇ = (1⊗dxⁱ)∇_{∂_i}.
    pub fn nabla(&self, a: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero(a.dim(), a.valid());
        for i in 0..self.dim() {
            for (k, f) in self.cov_deriv(i, a).terms() {
                if let Some((anti, s)) = anti::push_front(i, k.anti) {
                    out.add_term(WeylKey::new(k.nu, k.sym.clone(), anti), f.scale(&int(s as i64)));
                }
            }
        }
        out
    }

    /// D = (dxⁱ⊗1)∇_{∂_i}.
    pub fn sym_cov_d(&self, a: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero(a.dim(), a.valid() + 1);
        for i in 0..self.dim() {
            for (k, f) in self.cov_deriv(i, a).terms() {
                out.add_term(WeylKey::new(k.nu, exps_bump(&k.sym, i, 1), k.anti), f.clone());
            }
        }
        out
    }

    /// Tensorial Lie derivative ℒ_X: X on coefficients and ℒ_X dxʲ = ∂_k Xʲ dxᵏ
    /// in every slot.
    pub fn lie_weyl(&self, x: &PolyVectorField, a: &WeylElement) -> WeylElement {
        lie_weyl(x, a)
    }
}

/// Tensorial Lie derivative on 𝒲⊗Λ; independent of the connection.
pub fn lie_weyl(x: &PolyVectorField, a: &WeylElement) -> WeylElement {
    let dim = a.dim();
    let jac: Vec<Vec<Poly>> = (0..dim)
        .map(|j| (0..dim).map(|k| x.comp(j).deriv(k)).collect())
        .collect();
    let mut out = WeylElement::zero(dim, a.valid());
    for (k, f) in a.terms() {
        out.add_term(k.clone(), x.apply(f));
        slot_action(&mut out, dim, k, f, &|j, l| jac[j][l].clone());
    }
    out
}
