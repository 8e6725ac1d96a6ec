use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::anti;
use super::element::{norm_valid, WeylElement, WeylKey};
use crate::algebra::{exps_add, exps_bump, exps_get, factorial, int, Exps, Rational};
use crate::error::{Error, Result};

/// Contractions of two y-monomials: entry m lists the monomials of
/// (1/2)^m/m! · (ω^{ij} ∂_i ⊗ ∂_j)^m (y^a ⊗ y^b), to be multiplied by ν^m.
type Kernel = Arc<Vec<Vec<(Exps, Rational)>>>;

/// The fiberwise algebra (𝒲⊗Λ, ∘_F) for a constant symplectic matrix.
pub struct WeylAlgebra {
    dim: usize,
    omega_upper: Vec<Vec<Rational>>,
    cache: Mutex<HashMap<(Exps, Exps), Kernel>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    All,
    /// Twice the odd-m contractions: the graded commutator.
    Commutator,
}

impl WeylAlgebra {
    /// `omega_upper` is ω^{ij} with ω^{ik}ω_{jk} = δ^i_j.
    pub fn new(omega_upper: Vec<Vec<Rational>>) -> Self {
        let dim = omega_upper.len();
        Self {
            dim,
            omega_upper,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_upper(&self) -> &[Vec<Rational>] {
        &self.omega_upper
    }

    fn kernel(&self, ea: &Exps, eb: &Exps) -> Kernel {
        let key = (ea.clone(), eb.clone());
        if let Some(k) = self.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return k.clone();
        }
        let mut levels = Vec::new();
        let mut current: HashMap<(Exps, Exps), Rational> = HashMap::new();
        current.insert(key.clone(), int(1));
        let mut m = 0;
        while !current.is_empty() {
            let norm = (factorial(m) * int(1i64 << m)).recip();
            let mut level: HashMap<Exps, Rational> = HashMap::new();
            for ((a, b), c) in &current {
                *level.entry(exps_add(a, b)).or_insert_with(Rational::zero) += c * &norm;
            }
            let mut level: Vec<(Exps, Rational)> = level.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            level.sort();
            levels.push(level);
            let mut next: HashMap<(Exps, Exps), Rational> = HashMap::new();
            for ((a, b), c) in &current {
                for i in 0..self.dim {
                    let ai = exps_get(a, i);
                    if ai == 0 {
                        continue;
                    }
                    for j in 0..self.dim {
                        let bj = exps_get(b, j);
                        let w = &self.omega_upper[i][j];
                        if bj == 0 || w.is_zero() {
                            continue;
                        }
                        let coef = c * w * int(ai as i64 * bj as i64);
                        *next
                            .entry((exps_bump(a, i, -1), exps_bump(b, j, -1)))
                            .or_insert_with(Rational::zero) += coef;
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            current = next;
            m += 1;
        }
        let k = Arc::new(levels);
        self.cache
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(key, k.clone());
        k
    }

    fn check(&self, a: &WeylElement, b: &WeylElement) -> Result<()> {
        for x in [a, b] {
            if x.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: x.dim(),
                });
            }
        }
        Ok(())
    }

    fn expand(&self, a: &WeylElement, b: &WeylElement, valid: i64, part: Part) -> WeylElement {
        let mut out = WeylElement::zero(self.dim, valid);
        for (ka, fa) in a.terms() {
            for (kb, fb) in b.terms() {
                if ka.total() + kb.total() > valid {
                    continue;
                }
                if part == Part::Commutator && (ka.degs() == 0 || kb.degs() == 0) {
                    continue;
                }
                let Some((anti, sign)) = anti::wedge(ka.anti, kb.anti) else {
                    continue;
                };
                let coeff = fa * fb;
                if coeff.is_zero() {
                    continue;
                }
                let kernel = self.kernel(&ka.sym, &kb.sym);
                for (m, level) in kernel.iter().enumerate() {
                    let factor = match part {
                        Part::All => int(sign as i64),
                        Part::Commutator if m % 2 == 1 => int(2 * sign as i64),
                        Part::Commutator => continue,
                    };
                    let nu = ka.nu + kb.nu + m as u32;
                    for (sym, c) in level {
                        out.add_term(WeylKey::new(nu, sym.clone(), anti), coeff.scale(&(c * &factor)));
                    }
                }
            }
        }
        out
    }

    /// a ∘_F b.
    pub fn product(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        self.check(a, b)?;
        let valid = norm_valid((a.valid() + b.low()).min(b.valid() + a.low()));
        Ok(self.expand(a, b, valid, Part::All))
    }

    /// Graded commutator [a, b] = a∘_F b − (−1)^{dega a · dega b} b∘_F a.
    pub fn commutator(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        self.check(a, b)?;
        let valid = norm_valid((a.valid() + b.low_sym()).min(b.valid() + a.low_sym()));
        Ok(self.expand(a, b, valid, Part::Commutator))
    }

    /// qad(a)b = (1/ν)[a, b].
    pub fn qad(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        self.commutator(a, b)?.div_nu()
    }
}

/// The undeformed product μ: symmetric product in y and wedge product in dx.
pub fn mu(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.check_dim(b)?;
    let valid = norm_valid((a.valid() + b.low()).min(b.valid() + a.low()));
    let mut out = WeylElement::zero(a.dim(), valid);
    for (ka, fa) in a.terms() {
        for (kb, fb) in b.terms() {
            let Some((anti, sign)) = anti::wedge(ka.anti, kb.anti) else {
                continue;
            };
            let key = WeylKey::new(ka.nu + kb.nu, exps_add(&ka.sym, &kb.sym), anti);
            out.add_term(key, (fa * fb).scale(&int(sign as i64)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, unit, Poly};
    use smallvec::smallvec;

    fn std_algebra() -> WeylAlgebra {
        WeylAlgebra::new(vec![vec![int(0), int(1)], vec![int(-1), int(0)]])
    }

    #[test]
    fn generators() {
        let w = std_algebra();
        let y1 = WeylElement::sym_gen(2, 0);
        let y2 = WeylElement::sym_gen(2, 1);
        let p = w.product(&y1, &y2).unwrap();
        let mut expected = WeylElement::monomial(2, 0, smallvec![1, 1], 0, Poly::one());
        expected.add_term(WeylKey::new(1, Exps::new(), 0), Poly::constant(rat(1, 2)));
        assert_eq!(p, expected);
        let c = w.commutator(&y1, &y2).unwrap();
        assert_eq!(c, WeylElement::monomial(2, 1, Exps::new(), 0, Poly::one()));
        assert_eq!(w.qad(&y1, &y2).unwrap(), WeylElement::one(2));
    }

    #[test]
    fn mu_graded_signs() {
        let e1 = WeylElement::anti_gen(2, 0);
        let e2 = WeylElement::anti_gen(2, 1);
        assert!(mu(&e1, &e1).unwrap().is_zero());
        assert_eq!(mu(&e1, &e2).unwrap(), mu(&e2, &e1).unwrap().neg());
        let y1 = WeylElement::sym_gen(2, 0);
        let y2 = WeylElement::sym_gen(2, 1);
        assert_eq!(
            mu(&y1, &y2).unwrap(),
            WeylElement::monomial(2, 0, smallvec![1, 1], 0, Poly::one())
        );
    }

    #[test]
    fn unit_and_validity() {
        let w = std_algebra();
        let a = WeylElement::monomial(2, 1, unit(1), 0b1, Poly::var(0)).with_valid(6);
        assert_eq!(w.product(&WeylElement::one(2), &a).unwrap(), a);
        let b = WeylElement::sym_gen(2, 0).with_valid(4);
        assert_eq!(w.product(&a, &b).unwrap().valid(), 7);
    }
}
