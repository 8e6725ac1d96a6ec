use std::collections::BTreeMap;
use std::fmt;

use super::PolyVectorField;
use crate::algebra::{exps_bump, exps_degree, int, Poly, Rational};
use crate::error::{Error, Result};
use crate::weyl::anti::{self, Anti};

/// Polynomial differential form Σ f_I dx^I on ℝ²ⁿ (mixed degrees allowed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    dim: usize,
    terms: BTreeMap<Anti, Poly>,
}

impl PolyForm {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(dim: usize, f: Poly) -> Self {
        let mut a = Self::zero(dim);
        a.add_term(0, f);
        a
    }

    /// f dx^{i₁} ∧ … ∧ dx^{i_k} for 0-based indices in any order.
    pub fn monomial(dim: usize, idx: &[usize], f: Poly) -> Self {
        let mut a = Self::zero(dim);
        if let Some((mask, sign)) = anti::from_indices(idx) {
            a.add_term(mask, f.scale(&int(sign as i64)));
        }
        a
    }

    /// Σ cᵢ dxⁱ.
    pub fn one_form(comps: &[Poly]) -> Self {
        let mut a = Self::zero(comps.len());
        for (i, c) in comps.iter().enumerate() {
            a.add_term(1 << i, c.clone());
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, anti: Anti, f: Poly) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(anti).or_default();
        *e += &f;
        if e.is_zero() {
            self.terms.remove(&anti);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Anti, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, anti: Anti) -> Poly {
        self.terms.get(&anti).cloned().unwrap_or_default()
    }

    /// Coefficient of dx^{i₁}∧…∧dx^{i_k} for increasing 0-based indices.
    pub fn coeff_of(&self, idx: &[usize]) -> Poly {
        match anti::from_indices(idx) {
            Some((mask, sign)) => self.coeff(mask).scale(&int(sign as i64)),
            None => Poly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Components of exterior degree `j`.
    pub fn degree_part(&self, j: u32) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| anti::degree(**a) == j)
                .map(|(a, f)| (*a, f.clone()))
                .collect(),
        }
    }

    pub fn is_of_degree(&self, j: u32) -> bool {
        self.terms.keys().all(|a| anti::degree(*a) == j)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, f) in &other.terms {
            out.add_term(*a, f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            out.add_term(*a, f.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, g: &Poly) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            out.add_term(*a, f * g);
        }
        out
    }

    pub fn map_coeffs(&self, m: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            out.add_term(*a, m(f));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((ab, sign)) = anti::wedge(*a, *b) {
                    out.add_term(ab, (f * g).scale(&int(sign as i64)));
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            for i in 0..self.dim {
                let Some((b, sign)) = anti::push_front(i, *a) else {
                    continue;
                };
                out.add_term(b, f.deriv(i).scale(&int(sign as i64)));
            }
        }
        out
    }

    /// Insertion i_X into the first argument.
    pub fn contract(&self, x: &PolyVectorField) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            for i in anti::indices(*a) {
                if x.comp(i).is_zero() {
                    continue;
                }
                let (b, sign) = anti::remove(i, *a).expect("index present");
                out.add_term(b, (f * x.comp(i)).scale(&int(sign as i64)));
            }
        }
        out
    }

    /// ℒ_X = d i_X + i_X d.
    pub fn lie(&self, x: &PolyVectorField) -> Self {
        self.contract(x).d().add(&self.d().contract(x))
    }

    /// Radial-homotopy primitive of a closed form without 0-form part:
    /// x^β dx^I ↦ x^β/(|β|+|I|) · i_E dx^I with E = xⁱ∂_i. One-forms get
    /// primitives vanishing at the origin.
    pub fn poincare_primitive(&self) -> Result<Self> {
        if !self.degree_part(0).is_zero() {
            return Err(Error::Invalid("primitive of a 0-form requested".into()));
        }
        if !self.d().is_zero() {
            return Err(Error::NotClosed(format!("d({self}) = {}", self.d())));
        }
        let mut out = Self::zero(self.dim);
        for (a, f) in &self.terms {
            let j = anti::degree(*a);
            for (e, c) in f.terms() {
                let weight = exps_degree(e) + j;
                let c = c / int(weight as i64);
                for i in anti::indices(*a) {
                    let (b, sign) = anti::remove(i, *a).expect("index present");
                    out.add_term(
                        b,
                        Poly::monomial(exps_bump(e, i, 1), &c * int(sign as i64)),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Components keyed by 1-based comma-separated index lists in
    /// lexicographic order, e.g. `"1,2"`; the 0-form component has key `""`.
    pub fn to_map(&self) -> Vec<(String, String)> {
        let mut keys: Vec<Anti> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| anti::cmp(*a, *b));
        keys.into_iter()
            .map(|a| {
                let k: Vec<String> = anti::indices(a).map(|i| (i + 1).to_string()).collect();
                (k.join(","), self.terms[&a].to_string())
            })
            .collect()
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .to_map()
            .into_iter()
            .map(|(k, p)| {
                if k.is_empty() {
                    format!("({p})")
                } else {
                    let wedge: Vec<String> = k.split(',').map(|i| format!("dx{i}")).collect();
                    format!("({p})*{}", wedge.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// ν-series of forms Σ ν^k α_k known through ν^order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormSeries {
    dim: usize,
    order: usize,
    coeffs: Vec<PolyForm>,
}

impl FormSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(dim: usize, mut coeffs: Vec<PolyForm>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        while coeffs.last().is_some_and(PolyForm::is_zero) {
            coeffs.pop();
        }
        Self { dim, order, coeffs }
    }

    /// α · ν^k.
    pub fn monomial(alpha: PolyForm, k: usize, order: usize) -> Self {
        let dim = alpha.dim();
        let mut coeffs = vec![PolyForm::zero(dim); k];
        coeffs.push(alpha);
        Self::from_coeffs(dim, coeffs, order)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> PolyForm {
        self.coeffs.get(k).cloned().unwrap_or_else(|| PolyForm::zero(self.dim))
    }

    pub fn coeffs(&self) -> &[PolyForm] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.dim, self.coeffs.clone(), order)
    }

    pub fn map(&self, f: impl Fn(&PolyForm) -> PolyForm) -> Self {
        Self::from_coeffs(self.dim, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Self::from_coeffs(self.dim, coeffs, self.order.min(other.order))
    }

    pub fn neg(&self) -> Self {
        self.map(PolyForm::neg)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn d(&self) -> Self {
        self.map(PolyForm::d)
    }

    pub fn contract(&self, x: &PolyVectorField) -> Self {
        self.map(|a| a.contract(x))
    }

    pub fn lie(&self, x: &PolyVectorField) -> Self {
        self.map(|a| a.lie(x))
    }

    pub fn is_of_degree(&self, j: u32) -> bool {
        self.coeffs.iter().all(|a| a.is_of_degree(j))
    }

    /// Lowest ν-power with a nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    pub fn poincare_primitive(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(PolyForm::poincare_primitive)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(self.dim, coeffs, self.order))
    }

    /// Degree-0 coefficients as a ν-series of functions.
    pub fn to_functions(&self) -> crate::algebra::NuSeries {
        crate::algebra::NuSeries::from_coeffs(
            self.coeffs.iter().map(|a| a.coeff(0)).collect(),
            self.order,
        )
    }

    pub fn from_functions(dim: usize, s: &crate::algebra::NuSeries) -> Self {
        Self::from_coeffs(
            dim,
            s.coeffs().iter().map(|f| PolyForm::function(dim, f.clone())).collect(),
            s.order(),
        )
    }
}

impl fmt::Display for FormSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| match k {
                0 => format!("{a}"),
                1 => format!("nu*[{a}]"),
                _ => format!("nu^{k}*[{a}]"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn d_and_contraction() {
        let a = PolyForm::monomial(2, &[1], Poly::var(0));
        assert_eq!(a.d(), PolyForm::monomial(2, &[0, 1], Poly::one()));
        let area = PolyForm::monomial(2, &[0, 1], Poly::one());
        let x = PolyVectorField::coordinate(2, 0);
        assert_eq!(area.contract(&x), PolyForm::monomial(2, &[1], Poly::one()));
    }

    #[test]
    fn radial_primitives() {
        let area = PolyForm::monomial(2, &[0, 1], Poly::one());
        let expected = PolyForm::monomial(2, &[1], Poly::var(0).scale(&rat(1, 2)))
            .add(&PolyForm::monomial(2, &[0], Poly::var(1).scale(&rat(-1, 2))));
        assert_eq!(area.poincare_primitive().unwrap(), expected);
        let dx1 = PolyForm::monomial(2, &[0], Poly::one());
        assert_eq!(dx1.poincare_primitive().unwrap(), PolyForm::function(2, Poly::var(0)));
        let not_closed = PolyForm::monomial(2, &[1], Poly::var(0).pow(2));
        assert!(matches!(not_closed.poincare_primitive(), Err(Error::NotClosed(_))));
    }
}
