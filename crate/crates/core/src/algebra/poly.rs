use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{fmt_rational, int, Rational};

/// Exponent multi-index with trailing zeros stripped, so that `[1]` and
/// `[1, 0]` denote the same monomial and compare equal.
pub type Exps = SmallVec<[u8; 8]>;

pub fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub fn exps_get(e: &Exps, i: usize) -> u8 {
    e.get(i).copied().unwrap_or(0)
}

pub fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let n = a.len().max(b.len());
    let mut out: Exps = SmallVec::with_capacity(n);
    for i in 0..n {
        out.push(exps_get(a, i) + exps_get(b, i));
    }
    out
}

/// Adds `delta` to slot `i`; the caller guarantees the result is nonnegative.
pub fn exps_bump(e: &Exps, i: usize, delta: i32) -> Exps {
    let mut out = e.clone();
    if out.len() <= i {
        out.resize(i + 1, 0);
    }
    out[i] = (out[i] as i32 + delta) as u8;
    trim(out)
}

pub fn exps_degree(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

pub fn unit_exps(i: usize) -> Exps {
    let mut e: Exps = SmallVec::from_elem(0, i + 1);
    e[i] = 1;
    e
}

/// All exponent vectors in `dim` variables of total degree ≤ `max_deg`, in
/// increasing degree.
pub fn exps_up_to(dim: usize, max_deg: u32) -> Vec<Exps> {
    fn rec(dim: usize, i: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Exps>) {
        if i == dim {
            out.push(trim(SmallVec::from_slice(cur)));
            return;
        }
        for e in 0..=left {
            cur.push(e as u8);
            rec(dim, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, 0, max_deg, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (exps_degree(e), std::cmp::Reverse(e.clone())));
    out
}

/// Sparse multivariate polynomial over ℚ in x1, x2, …; zero coefficients are
/// never stored. Variables are 0-based internally and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exps::new(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The coordinate function x_{i+1}.
    pub fn var(i: usize) -> Self {
        Self::monomial(unit_exps(i), Rational::one())
    }

    pub fn monomial(exps: Exps, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(exps), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &Exps) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exps::new())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(exps_degree).max()
    }

    /// Number of variables actually occurring (highest index + 1).
    pub fn var_span(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, exps: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = exps_get(e, i);
            if k > 0 {
                out.add_term(exps_bump(e, i, -1), c * int(k as i64));
            }
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (exps_bump(e, i, 1), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| exps_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Monomials x^β with |β| ≤ max_deg, constants first.
    pub fn monomials_up_to(dim: usize, max_deg: u32) -> Vec<Poly> {
        exps_up_to(dim, max_deg)
            .into_iter()
            .map(|e| Poly::monomial(e, Rational::one()))
            .collect()
    }

    /// Value at the origin.
    pub fn at_origin(&self) -> Rational {
        self.constant_term()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Canonical rendering in the input grammar, terms in descending
/// lexicographic order of exponents.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_empty() {
                factors.push(fmt_rational(&mag));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(exps_add(ea, eb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn trailing_zero_exponents_are_canonical() {
        let a = Poly::monomial(SmallVec::from_slice(&[1, 0, 0]), rat(1, 1));
        assert_eq!(a, Poly::var(0));
    }

    #[test]
    fn display_orders_descending() {
        let p = &(&Poly::var(0) * &Poly::var(1)) + &Poly::constant(rat(3, 2));
        assert_eq!(p.to_string(), "x1*x2 + 3/2");
        let q = &Poly::var(1) - &Poly::var(0).pow(2);
        assert_eq!(q.to_string(), "-x1^2 + x2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Poly::monomials_up_to(2, 4).len(), 15);
        assert_eq!(Poly::monomials_up_to(2, 1), vec![Poly::one(), Poly::var(0), Poly::var(1)]);
    }

    #[test]
    fn derivative_and_degree() {
        let p = Poly::var(0).pow(3).scale(&rat(1, 3));
        assert_eq!(p.deriv(0), Poly::var(0).pow(2));
        assert_eq!(p.deriv(1), Poly::zero());
        assert_eq!(p.degree(), Some(3));
        assert_eq!(Poly::zero().degree(), None);
    }
}
