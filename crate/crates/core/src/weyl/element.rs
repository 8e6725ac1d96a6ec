use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::anti::{self, Anti};
use crate::algebra::{exps_degree, Exps, Filtered, NuSeries, Poly, Rational};
use crate::error::{Error, Result};

/// Validity of an element known to all degrees.
pub const EXACT: i64 = 1 << 40;

pub(crate) fn norm_valid(v: i64) -> i64 {
    if v >= EXACT / 2 {
        EXACT
    } else {
        v
    }
}

/// Basis label ν^nu · y^sym ⊗ dx^anti, where y^i stands for the symmetric
/// generator dxⁱ ⊗ 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylKey {
    pub nu: u32,
    pub sym: Exps,
    pub anti: Anti,
}

impl WeylKey {
    pub fn new(nu: u32, sym: Exps, anti: Anti) -> Self {
        Self {
            nu,
            sym: crate::algebra::trim_exps(sym),
            anti,
        }
    }

    pub fn degs(&self) -> u32 {
        exps_degree(&self.sym)
    }

    pub fn dega(&self) -> u32 {
        anti::degree(self.anti)
    }

    /// Total degree degs + 2·deg_ν.
    pub fn total(&self) -> i64 {
        self.degs() as i64 + 2 * self.nu as i64
    }
}

impl Ord for WeylKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nu
            .cmp(&other.nu)
            .then_with(|| self.sym.cmp(&other.sym))
            .then_with(|| anti::cmp(self.anti, other.anti))
    }
}

impl PartialOrd for WeylKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of 𝒲⊗Λ with polynomial coefficients. Terms of total degree above
/// `valid` are unknown and never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    dim: usize,
    terms: BTreeMap<WeylKey, Poly>,
    valid: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degs_max: u32,
    pub dega_max: u32,
    pub degnu_max: u32,
    /// `None` for the zero element.
    pub deg_min: Option<i64>,
}

impl WeylElement {
    pub fn zero(dim: usize, valid: i64) -> Self {
        assert!(dim <= anti::MAX_DIM, "dimension {dim} exceeds {}", anti::MAX_DIM);
        Self {
            dim,
            terms: BTreeMap::new(),
            valid: norm_valid(valid),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::from_poly(dim, Poly::one())
    }

    /// f ⊗ 1, known exactly.
    pub fn from_poly(dim: usize, f: Poly) -> Self {
        let mut a = Self::zero(dim, EXACT);
        a.add_term(WeylKey::new(0, Exps::new(), 0), f);
        a
    }

    /// Σ ν^k f_k ⊗ 1; a series exact through ν^K is known through Deg 2K+1.
    pub fn from_nu_series(dim: usize, s: &NuSeries) -> Self {
        let valid = if s.order() >= NuSeries::EXACT {
            EXACT
        } else {
            2 * s.order() as i64 + 1
        };
        let mut a = Self::zero(dim, valid);
        for (k, f) in s.coeffs().iter().enumerate() {
            a.add_term(WeylKey::new(k as u32, Exps::new(), 0), f.clone());
        }
        a
    }

    /// The symmetric generator dxⁱ ⊗ 1 (0-based i).
    pub fn sym_gen(dim: usize, i: usize) -> Self {
        Self::monomial(dim, 0, crate::algebra::unit(i), 0, Poly::one())
    }

    /// The antisymmetric generator 1 ⊗ dxⁱ (0-based i).
    pub fn anti_gen(dim: usize, i: usize) -> Self {
        Self::monomial(dim, 0, Exps::new(), 1 << i, Poly::one())
    }

    pub fn monomial(dim: usize, nu: u32, sym: Exps, anti: Anti, f: Poly) -> Self {
        let mut a = Self::zero(dim, EXACT);
        a.add_term(WeylKey::new(nu, sym, anti), f);
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valid(&self) -> i64 {
        self.valid
    }

    pub fn is_exact(&self) -> bool {
        self.valid == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, key: &WeylKey) -> Poly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Adds `f` at `key`, silently discarding terms beyond validity.
    pub fn add_term(&mut self, key: WeylKey, f: Poly) {
        if f.is_zero() || key.total() > self.valid {
            return;
        }
        debug_assert!(
            key.sym.len() <= self.dim && (self.dim == 32 || key.anti >> self.dim == 0),
            "index out of range"
        );
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lowers the validity horizon, dropping terms beyond it.
    pub fn with_valid(mut self, valid: i64) -> Self {
        let valid = norm_valid(valid);
        if valid < self.valid {
            self.valid = valid;
            self.terms.retain(|k, _| k.total() <= valid);
        }
        self
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let valid = self.valid.min(other.valid);
        let mut out = self.clone().with_valid(valid);
        for (k, f) in &other.terms {
            out.add_term(k.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, f)| (k.clone(), -f)).collect(),
            valid: self.valid,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.valid);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect(),
            valid: self.valid,
        }
    }

    /// Applies a linear map to every coefficient polynomial.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(self.dim, self.valid);
        for (k, p) in &self.terms {
            out.add_term(k.clone(), f(p));
        }
        out
    }

    /// Multiplication by ν^k.
    pub fn nu_shift(&self, k: u32) -> Self {
        let mut out = Self::zero(self.dim, self.valid + 2 * k as i64);
        for (key, f) in &self.terms {
            out.add_term(WeylKey::new(key.nu + k, key.sym.clone(), key.anti), f.clone());
        }
        out
    }

    /// Division by ν; fails if a ν⁰ term is present.
    pub fn div_nu(&self) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.valid - 2);
        for (key, f) in &self.terms {
            if key.nu == 0 {
                return Err(Error::NotDivisibleByNu(format!(
                    "term with sym {:?}, anti {:?}",
                    key.sym.as_slice(),
                    anti::indices(key.anti).collect::<Vec<_>>()
                )));
            }
            out.add_term(WeylKey::new(key.nu - 1, key.sym.clone(), key.anti), f.clone());
        }
        Ok(out)
    }

    /// Keeps the terms selected by `pred`; validity is unchanged.
    pub fn filter(&self, pred: impl Fn(&WeylKey) -> bool) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, f)| (k.clone(), f.clone()))
                .collect(),
            valid: self.valid,
        }
    }

    pub fn dega_part(&self, l: u32) -> Self {
        self.filter(|k| k.dega() == l)
    }

    pub fn total_part(&self, d: i64) -> Self {
        self.filter(|k| k.total() == d)
    }

    pub fn degree_report(&self) -> DegreeReport {
        let mut r = DegreeReport {
            degs_max: 0,
            dega_max: 0,
            degnu_max: 0,
            deg_min: None,
        };
        for k in self.terms.keys() {
            r.degs_max = r.degs_max.max(k.degs());
            r.dega_max = r.dega_max.max(k.dega());
            r.degnu_max = r.degnu_max.max(k.nu);
            r.deg_min = Some(r.deg_min.map_or(k.total(), |d: i64| d.min(k.total())));
        }
        r
    }

    /// Lowest total degree that may carry a nonzero component.
    pub fn low(&self) -> i64 {
        self.terms
            .keys()
            .map(WeylKey::total)
            .min()
            .unwrap_or(i64::MAX)
            .min(self.valid + 1)
    }

    /// Like [`low`](Self::low) but only over terms with symmetric degree ≥ 1,
    /// which are the only ones seen by graded commutators.
    pub fn low_sym(&self) -> i64 {
        self.terms
            .keys()
            .filter(|k| k.degs() > 0)
            .map(WeylKey::total)
            .min()
            .unwrap_or(i64::MAX)
            .min(self.valid + 1)
    }

    /// Equality of all components known in both elements.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let v = self.valid.min(other.valid);
        self.clone().with_valid(v).terms == other.clone().with_valid(v).terms
    }

    /// Zero within the validity horizon.
    pub fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Filtered for WeylElement {
    fn low(&self) -> i64 {
        WeylElement::low(self)
    }
    fn valid(&self) -> i64 {
        self.valid
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        WeylElement::add(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        WeylElement::scale(self, c)
    }
}

fn render_key(k: &WeylKey) -> String {
    let mut parts = Vec::new();
    if k.sym.iter().any(|&e| e > 0) {
        let mut gens = Vec::new();
        for (i, &e) in k.sym.iter().enumerate() {
            for _ in 0..e {
                gens.push(format!("dx{}", i + 1));
            }
        }
        parts.push(format!("s[{}]", gens.join(",")));
    }
    if k.anti != 0 {
        let gens: Vec<String> = anti::indices(k.anti).map(|i| format!("dx{}", i + 1)).collect();
        parts.push(format!("a[{}]", gens.join(",")));
    }
    parts.join(" * ")
}

/// Terms in key order, e.g. `nu^1 * (3/2*x1) * s[dx1,dx1] * a[dx2]`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(k, p)| {
                let mut s = String::new();
                if k.nu > 0 {
                    s.push_str(&format!("nu^{} * ", k.nu));
                }
                s.push_str(&format!("({p})"));
                let basis = render_key(k);
                if !basis.is_empty() {
                    s.push_str(" * ");
                    s.push_str(&basis);
                }
                s
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid == EXACT {
            write!(f, "WeylElement[{self}]")
        } else {
            write!(f, "WeylElement[{self} + O(Deg {})]", self.valid + 1)
        }
    }
}
