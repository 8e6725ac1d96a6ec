use std::sync::Arc;

use num_traits::Zero;

use super::{PolyForm, PolyVectorField};
use crate::algebra::{int, solve_linear, Poly, Rational};
use crate::error::{Error, Result};
use crate::weyl::WeylAlgebra;

pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        let b: Vec<Rational> = (0..n).map(|r| if r == c { int(1) } else { int(0) }).collect();
        let x = solve_linear(m, &b, n, &Rational::zero()).ok()?;
        cols.push(x);
    }
    // A x = e_c for every c gives a right inverse; check it is two-sided.
    let inv: Vec<Vec<Rational>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
    for (r, row) in m.iter().enumerate() {
        for c in 0..n {
            let s: Rational = (0..n).map(|k| &row[k] * &inv[k][c]).sum();
            if s != if r == c { int(1) } else { int(0) } {
                return None;
            }
        }
    }
    Some(inv)
}

/// Constant symplectic form ω = ½ ω_ij dxⁱ∧dxʲ together with a torsion-free
/// symplectic connection given by totally symmetric Γ_ijk = ω_il Γˡ_jk.
#[derive(Clone)]
pub struct GeometryData {
    dim: usize,
    omega_lower: Vec<Vec<Rational>>,
    omega_upper: Vec<Vec<Rational>>,
    gamma_lower: Vec<Vec<Vec<Poly>>>,
    gamma_upper: Vec<Vec<Vec<Poly>>>,
    algebra: Arc<WeylAlgebra>,
}

impl std::fmt::Debug for GeometryData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeometryData")
            .field("dim", &self.dim)
            .field("omega_lower", &self.omega_lower)
            .field("gamma_lower", &self.gamma_lower)
            .finish()
    }
}

/// Equal defining data ω_ij and Γ_ijk; derived fields follow.
impl PartialEq for GeometryData {
    fn eq(&self, other: &Self) -> bool {
        self.omega_lower == other.omega_lower && self.gamma_lower == other.gamma_lower
    }
}

impl GeometryData {
    pub fn new(omega_lower: Vec<Vec<Rational>>, gamma_lower: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let dim = omega_lower.len();
        if dim == 0 || dim % 2 != 0 || dim > crate::weyl::anti::MAX_DIM {
            return Err(Error::Invalid(format!("dimension must be even, positive and at most 32, got {dim}")));
        }
        for (i, row) in omega_lower.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Invalid(format!("omega row {} has length {}", i + 1, row.len())));
            }
            for j in 0..dim {
                if row[j] != -omega_lower[j][i].clone() {
                    return Err(Error::Invalid(format!(
                        "omega is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let inv = invert(&omega_lower).ok_or_else(|| Error::Invalid("omega is degenerate".into()))?;
        let omega_upper: Vec<Vec<Rational>> =
            inv.iter().map(|row| row.iter().map(|x| -x.clone()).collect()).collect();
        if gamma_lower.len() != dim
            || gamma_lower.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::Invalid("gamma must be a dim x dim x dim array".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let g = &gamma_lower[i][j][k];
                    if g != &gamma_lower[j][i][k] || g != &gamma_lower[i][k][j] {
                        return Err(Error::Invalid(format!(
                            "gamma is not totally symmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let mut gamma_upper = vec![vec![vec![Poly::zero(); dim]; dim]; dim];
        for (l, gl) in gamma_upper.iter_mut().enumerate() {
            for (j, glj) in gl.iter_mut().enumerate() {
                for (k, g) in glj.iter_mut().enumerate() {
                    for (i, gi) in gamma_lower.iter().enumerate() {
                        if !inv[l][i].is_zero() {
                            *g += &gi[j][k].scale(&inv[l][i]);
                        }
                    }
                }
            }
        }
        let algebra = Arc::new(WeylAlgebra::new(omega_upper.clone()));
        Ok(Self {
            dim,
            omega_lower,
            omega_upper,
            gamma_lower,
            gamma_upper,
            algebra,
        })
    }

    pub fn flat(omega_lower: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = omega_lower.len();
        Self::new(omega_lower, vec![vec![vec![Poly::zero(); dim]; dim]; dim])
    }

    /// Darboux form ω = Σ dxⁱ ∧ dx^{i+n}.
    pub fn standard_omega(dim: usize) -> Vec<Vec<Rational>> {
        let n = dim / 2;
        let mut w = vec![vec![int(0); dim]; dim];
        for i in 0..n {
            w[i][i + n] = int(1);
            w[i + n][i] = int(-1);
        }
        w
    }

    pub fn standard_flat(dim: usize) -> Self {
        Self::flat(Self::standard_omega(dim)).expect("standard form is symplectic")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_lower(&self) -> &[Vec<Rational>] {
        &self.omega_lower
    }

    pub fn omega_upper(&self) -> &[Vec<Rational>] {
        &self.omega_upper
    }

    pub fn gamma_lower(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.gamma_lower[i][j][k]
    }

    /// Γˡ_jk.
    pub fn gamma_upper(&self, l: usize, j: usize, k: usize) -> &Poly {
        &self.gamma_upper[l][j][k]
    }

    pub fn is_flat(&self) -> bool {
        self.gamma_lower.iter().flatten().flatten().all(Poly::is_zero)
    }

    pub fn algebra(&self) -> &WeylAlgebra {
        &self.algebra
    }

    /// ω as a 2-form.
    pub fn omega_form(&self) -> PolyForm {
        let mut w = PolyForm::zero(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !self.omega_lower[i][j].is_zero() {
                    w = w.add(&PolyForm::monomial(self.dim, &[i, j], Poly::constant(self.omega_lower[i][j].clone())));
                }
            }
        }
        w
    }

    /// Poisson bracket {f, g} = ω^{ij} ∂_i f ∂_j g.
    pub fn poisson(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in 0..self.dim {
            let fi = f.deriv(i);
            if fi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let w = &self.omega_upper[i][j];
                if !w.is_zero() {
                    out += &(&fi * &g.deriv(j)).scale(w);
                }
            }
        }
        out
    }

    /// θ_X = i_X ω.
    pub fn theta(&self, x: &PolyVectorField) -> PolyForm {
        self.omega_form().contract(x)
    }

    /// Symplecticity test d(i_X ω) = 0.
    pub fn is_symplectic_field(&self, x: &PolyVectorField) -> bool {
        self.theta(x).d().is_zero()
    }

    /// Xᵢ-components of the Hamiltonian field X_f with i_{X_f}ω = df.
    pub fn hamiltonian_field(&self, f: &Poly) -> PolyVectorField {
        // ω_ij Xⁱ = ∂_j f  ⇒  Xⁱ = ω^{ij} ∂_j f  since ω^{ik}ω_{jk} = δ
        let comps = (0..self.dim)
            .map(|i| {
                let mut c = Poly::zero();
                for j in 0..self.dim {
                    if !self.omega_upper[i][j].is_zero() {
                        c += &f.deriv(j).scale(&self.omega_upper[i][j]);
                    }
                }
                c
            })
            .collect();
        PolyVectorField::new(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_convention() {
        let g = GeometryData::standard_flat(2);
        assert_eq!(g.omega_upper()[0][1], int(1));
        assert_eq!(g.poisson(&Poly::var(0), &Poly::var(1)), Poly::one());
        for i in 0..2 {
            for j in 0..2 {
                let s: Rational = (0..2).map(|k| &g.omega_upper()[i][k] * &g.omega_lower()[j][k]).sum();
                assert_eq!(s, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn hamiltonian_field_contracts_to_differential() {
        let g = GeometryData::standard_flat(4);
        let f = &(&Poly::var(0) * &Poly::var(3)) + &Poly::var(1).pow(2);
        let x = g.hamiltonian_field(&f);
        assert_eq!(g.theta(&x), PolyForm::function(4, f).d());
    }

    #[test]
    fn rejects_bad_input() {
        let mut w = GeometryData::standard_omega(2);
        w[0][1] = int(2);
        assert!(GeometryData::flat(w).is_err());
        let w = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert!(GeometryData::flat(w).is_err());
        let mut gamma = vec![vec![vec![Poly::zero(); 2]; 2]; 2];
        gamma[0][0][1] = Poly::one();
        assert!(GeometryData::new(GeometryData::standard_omega(2), gamma).is_err());
    }
}
