use std::fmt;

use super::{Poly, Rational};

/// Formal series Σ ν^k f_k with polynomial coefficients, known exactly
/// through ν^order. Coefficients above `order` are unknown, not zero;
/// [`NuSeries::EXACT`] marks a series known to all orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NuSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl NuSeries {
    pub const EXACT: usize = 1 << 28;

    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: Poly, order: usize) -> Self {
        Self::from_coeffs(vec![p], order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_poly(Poly::constant(c), order)
    }

    /// Coefficients past `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        let mut s = Self { order, coeffs };
        s.trim();
        s
    }

    /// `p · ν^k`.
    pub fn monomial(p: Poly, k: usize, order: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.push(p);
        Self::from_coeffs(coeffs, order)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Poly {
        assert!(
            k <= self.order,
            "coefficient of nu^{k} requested but series is only known through nu^{}",
            self.order
        );
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest ν-power with nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order.min(self.order))
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_default();
                match other.coeffs.get(k) {
                    Some(b) => &a + b,
                    None => a,
                }
            })
            .collect();
        Self::from_coeffs(coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect(), self.order)
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|q| q * p).collect(), self.order)
    }

    /// Cauchy product, exact through the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(order + 1);
        let mut coeffs = vec![Poly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Self::from_coeffs(coeffs, order)
    }

    /// Multiplication by ν^k.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs, self.order + k)
    }

    /// Division by ν; `None` if the ν⁰ coefficient is nonzero.
    pub fn div_nu(&self) -> Option<Self> {
        if self.order == 0 {
            return Some(Self::zero(0)).filter(|_| self.is_zero());
        }
        if !self.coeff(0).is_zero() {
            return None;
        }
        Some(Self::from_coeffs(
            self.coeffs.iter().skip(1).cloned().collect(),
            self.order - 1,
        ))
    }

    /// Applies a coefficientwise linear map.
    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect(), self.order)
    }

    /// Coefficient equality through the common order.
    pub fn eq_through(&self, other: &Self, order: usize) -> bool {
        (0..=order).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl fmt::Debug for NuSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NuSeries({self} + O(nu^{}))", self.order + 1)
    }
}

/// Renders in the ν-series input grammar, e.g. `x1 + nu*(x2) + nu^2*(1/2)`.
impl fmt::Display for NuSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{p}"),
                1 => format!("nu*({p})"),
                _ => format!("nu^{k}*({p})"),
            });
        }
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
    fn product_truncates() {
        let a = NuSeries::from_coeffs(vec![Poly::one(), Poly::var(0)], 2);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(1), Poly::var(0).scale(&rat(2, 1)));
        assert_eq!(sq.coeff(2), Poly::var(0).pow(2));
        let short = a.truncate(1).mul(&a);
        assert_eq!(short.order(), 1);
    }

    #[test]
    fn div_nu_requires_vanishing_constant_order() {
        let a = NuSeries::from_coeffs(vec![Poly::zero(), Poly::var(1)], 3);
        let q = a.div_nu().unwrap();
        assert_eq!(q.coeff(0), Poly::var(1));
        assert_eq!(q.order(), 2);
        assert!(NuSeries::from_poly(Poly::one(), 3).div_nu().is_none());
    }
}
