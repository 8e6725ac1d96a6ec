use std::fmt;

use crate::algebra::Poly;

/// Polynomial vector field Xⁱ ∂_i on ℝ²ⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(comps: Vec<Poly>) -> Self {
        Self { comps }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Poly::zero(); dim])
    }

    /// The coordinate field ∂_i (0-based).
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[i] = Poly::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// X(f) = Xⁱ ∂_i f.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (i, x) in self.comps.iter().enumerate() {
            if !x.is_zero() {
                out += &(x * &f.deriv(i));
            }
        }
        out
    }

    /// Lie bracket [X, Y]ⁱ = X(Yⁱ) − Y(Xⁱ).
    pub fn bracket(&self, other: &Self) -> Self {
        Self::new(
            (0..self.dim())
                .map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i]))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &crate::algebra::Rational) -> Self {
        Self::new(self.comps.iter().map(|a| a.scale(c)).collect())
    }

    /// True if every component is affine, so that the flow is linear up to
    /// translation.
    pub fn is_affine(&self) -> bool {
        self.comps.iter().all(|c| c.degree().is_none_or(|d| d <= 1))
    }

    /// True if every component is homogeneous linear.
    pub fn is_linear(&self) -> bool {
        self.comps
            .iter()
            .all(|c| c.terms().all(|(e, _)| crate::algebra::exps_degree(e) == 1))
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*d/dx{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
