use num_traits::Zero;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::geometry::{GeometryData, PolyVectorField};

/// A Lie algebra 𝔤 with basis ξ₁…ξ_m, structure constants
/// [ξᵢ, ξⱼ] = cᵏᵢⱼ ξₖ, acting by polynomial symplectic fields X_ξ with
/// [X_ξ, X_η] = −X_{[ξ,η]}.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAction {
    /// `structure[i][j][k]` = cᵏᵢⱼ.
    structure: Vec<Vec<Vec<Rational>>>,
    fields: Vec<PolyVectorField>,
    j0: Option<Vec<Poly>>,
}

/// Outcome of one structural check; `witness` names the failing pair or
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, failure: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: failure.is_none(),
            witness: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl LieAction {
    pub fn new(structure: Vec<Vec<Vec<Rational>>>, fields: Vec<PolyVectorField>, j0: Option<Vec<Poly>>) -> Result<Self> {
        let m = fields.len();
        if structure.len() != m || structure.iter().any(|s| s.len() != m || s.iter().any(|c| c.len() != m)) {
            return Err(Error::Invalid(format!("structure constants must be a {m} x {m} x {m} array")));
        }
        if let Some(j) = &j0 {
            if j.len() != m {
                return Err(Error::Invalid(format!("J0 has {} entries for {m} basis elements", j.len())));
            }
        }
        let dims: Vec<usize> = fields.iter().map(PolyVectorField::dim).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Invalid("vector fields of different dimensions".into()));
        }
        Ok(Self { structure, fields, j0 })
    }

    /// Abelian algebra acting by the given fields.
    pub fn abelian(fields: Vec<PolyVectorField>) -> Self {
        let m = fields.len();
        let zero = vec![vec![vec![Rational::zero(); m]; m]; m];
        Self::new(zero, fields, None).expect("shapes agree")
    }

    pub fn trivial() -> Self {
        Self::abelian(Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &PolyVectorField {
        &self.fields[i]
    }

    pub fn j0(&self) -> Option<&[Poly]> {
        self.j0.as_deref()
    }

    pub fn with_j0(mut self, j0: Vec<Poly>) -> Self {
        self.j0 = Some(j0);
        self
    }

    /// cᵏᵢⱼ.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// v([ξᵢ, ξⱼ]) = Σₖ cᵏᵢⱼ v(ξₖ) for a 𝔤-linear ν-series valued map.
    pub fn on_bracket(&self, i: usize, j: usize, values: &[crate::algebra::NuSeries], order: usize) -> crate::algebra::NuSeries {
        let mut acc = crate::algebra::NuSeries::zero(order);
        for (k, v) in values.iter().enumerate() {
            let c = self.c(i, j, k);
            if !c.is_zero() {
                acc = acc.add(&v.scale(c));
            }
        }
        acc
    }

    /// X_{[ξᵢ, ξⱼ]}.
    pub fn bracket_field(&self, i: usize, j: usize, dim: usize) -> PolyVectorField {
        let mut acc = PolyVectorField::zero(dim);
        for k in 0..self.dim() {
            let c = self.c(i, j, k);
            if !c.is_zero() {
                acc = acc.add(&self.fields[k].scale(c));
            }
        }
        acc
    }

    /// Antisymmetry and Jacobi identity of c, the anti-homomorphism property
    /// and symplecticity of every field.
    pub fn validate(&self, geometry: &GeometryData) -> ValidationReport {
        let m = self.dim();
        let n = geometry.dim();
        let mut checks = Vec::new();

        let dim_fail = self
            .fields
            .iter()
            .position(|x| x.dim() != n)
            .map(|i| format!("X_{} has {} components, expected {n}", i + 1, self.fields[i].dim()));
        checks.push(Check::new("field dimension", dim_fail.clone()));
        if dim_fail.is_some() {
            return ValidationReport { checks };
        }

        let mut anti = None;
        'a: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if self.c(i, j, k) != &-self.c(j, i, k).clone() {
                        anti = Some(format!("(xi_{}, xi_{})", i + 1, j + 1));
                        break 'a;
                    }
                }
            }
        }
        checks.push(Check::new("antisymmetry", anti));

        let mut jacobi = None;
        'j: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for t in 0..m {
                        // [[ξi,ξj],ξk] + cyclic, component t
                        let mut s = Rational::zero();
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            for l in 0..m {
                                s += self.c(a, b, l) * self.c(l, c, t);
                            }
                        }
                        if !s.is_zero() {
                            jacobi = Some(format!("(xi_{}, xi_{}, xi_{})", i + 1, j + 1, k + 1));
                            break 'j;
                        }
                    }
                }
            }
        }
        checks.push(Check::new("jacobi", jacobi));

        let mut hom = None;
        'h: for i in 0..m {
            for j in i + 1..m {
                let lhs = self.fields[i].bracket(&self.fields[j]);
                let rhs = self.bracket_field(i, j, n).scale(&Rational::from_integer((-1).into()));
                if lhs != rhs {
                    hom = Some(format!("(xi_{}, xi_{})", i + 1, j + 1));
                    break 'h;
                }
            }
        }
        checks.push(Check::new("anti-homomorphism", hom));

        let sympl = (0..m)
            .find(|&i| !geometry.is_symplectic_field(&self.fields[i]))
            .map(|i| format!("xi_{}: d(i_X omega) = {}", i + 1, geometry.theta(&self.fields[i]).d()));
        checks.push(Check::new("symplectic", sympl));

        ValidationReport { checks }
    }

    pub fn require_valid(&self, geometry: &GeometryData) -> Result<()> {
        let report = self.validate(geometry);
        match report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Invalid(format!(
                "action fails {} check at {}",
                c.name,
                c.witness.as_deref().unwrap_or("?")
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_translation_pass() {
        let g = GeometryData::standard_flat(2);
        let rot = PolyVectorField::new(vec![-Poly::var(1), Poly::var(0)]);
        assert!(LieAction::abelian(vec![rot]).validate(&g).passed());
        let tr = PolyVectorField::coordinate(2, 0);
        assert!(LieAction::abelian(vec![tr]).validate(&g).passed());
    }

    #[test]
    fn dilation_is_not_symplectic() {
        let g = GeometryData::standard_flat(2);
        let x = PolyVectorField::new(vec![Poly::var(0), Poly::zero()]);
        let report = LieAction::abelian(vec![x]).validate(&g);
        assert_eq!(report.first_failure().unwrap().name, "symplectic");
    }
}
