//! The operators δ, δ*, δ⁻¹, σ and the insertion i_a(X).

use super::anti;
use super::element::{WeylElement, WeylKey, EXACT};
use crate::algebra::{exps_bump, exps_get, int, NuSeries, Poly, Rational};
use crate::error::{Error, Result};

/// δ = (1⊗dxⁱ) i_s(∂_i).
pub fn delta(a: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero(a.dim(), a.valid() - 1);
    for (k, f) in a.terms() {
        for i in 0..a.dim() {
            let e = exps_get(&k.sym, i);
            if e == 0 {
                continue;
            }
            let Some((anti, sign)) = anti::push_front(i, k.anti) else {
                continue;
            };
            let key = WeylKey::new(k.nu, exps_bump(&k.sym, i, -1), anti);
            out.add_term(key, f.scale(&int(sign as i64 * e as i64)));
        }
    }
    out
}

/// δ* = (dxⁱ⊗1) i_a(∂_i).
pub fn delta_star(a: &WeylElement) -> WeylElement {
    delta_star_weighted(a, false)
}

/// δ⁻¹: δ*/(k+ℓ) on terms of symmetric degree k and antisymmetric degree ℓ.
pub fn delta_inv(a: &WeylElement) -> WeylElement {
    delta_star_weighted(a, true)
}

fn delta_star_weighted(a: &WeylElement, normalize: bool) -> WeylElement {
    let mut out = WeylElement::zero(a.dim(), a.valid() + 1);
    for (k, f) in a.terms() {
        let weight = k.degs() + k.dega();
        if weight == 0 {
            continue;
        }
        let f = if normalize {
            f.scale(&Rational::new(1.into(), (weight as i64).into()))
        } else {
            f.clone()
        };
        for i in anti::indices(k.anti) {
            let (anti, sign) = anti::remove(i, k.anti).expect("index present");
            let key = WeylKey::new(k.nu, exps_bump(&k.sym, i, 1), anti);
            out.add_term(key, f.scale(&int(sign as i64)));
        }
    }
    out
}

/// σ: the component of symmetric and antisymmetric degree 0, exact through
/// ν-order ⌊valid/2⌋.
pub fn sigma(a: &WeylElement) -> Result<NuSeries> {
    if a.valid() < 0 {
        return Err(Error::Validity(format!(
            "sigma needs validity >= 0, element is known only through degree {}",
            a.valid()
        )));
    }
    let order = if a.valid() == EXACT {
        NuSeries::EXACT
    } else {
        (a.valid() / 2) as usize
    };
    let mut coeffs: Vec<Poly> = Vec::new();
    for (k, f) in a.terms() {
        if k.degs() == 0 && k.dega() == 0 {
            let n = k.nu as usize;
            if coeffs.len() <= n {
                coeffs.resize(n + 1, Poly::zero());
            }
            coeffs[n] += f;
        }
    }
    Ok(NuSeries::from_coeffs(coeffs, order))
}

/// Insertion i_a(X) of a vector field into the antisymmetric factor.
pub fn insert_anti(x: &[Poly], a: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero(a.dim(), a.valid());
    for (k, f) in a.terms() {
        for i in anti::indices(k.anti) {
            if x[i].is_zero() {
                continue;
            }
            let (anti, sign) = anti::remove(i, k.anti).expect("index present");
            let key = WeylKey::new(k.nu, k.sym.clone(), anti);
            out.add_term(key, (f * &x[i]).scale(&int(sign as i64)));
        }
    }
    out
}
