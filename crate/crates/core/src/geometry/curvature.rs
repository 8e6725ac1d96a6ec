use num_traits::Zero;

use super::GeometryData;
use crate::algebra::{exps_add, rat, solve_linear, unit, Exps, Poly};
use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylKey, EXACT};

impl GeometryData {
    /// ∇² as an operator.
    pub fn nabla_squared(&self, a: &WeylElement) -> WeylElement {
        self.nabla(&self.nabla(a))
    }

    /// The curvature element R ∈ 𝒲²⊗Λ² with ∇² = −qad(R), obtained by solving
    /// that identity on the generators yᵐ.
    pub fn curvature(&self) -> Result<WeylElement> {
        let n = self.dim();
        let mut sym_basis: Vec<Exps> = Vec::new();
        for i in 0..n {
            for j in i..n {
                sym_basis.push(exps_add(&unit(i), &unit(j)));
            }
        }
        let anti_basis: Vec<u32> = (0..n)
            .flat_map(|k| (k + 1..n).map(move |l| (1u32 << k) | (1u32 << l)))
            .collect();
        let unknowns: Vec<WeylKey> = sym_basis
            .iter()
            .flat_map(|s| anti_basis.iter().map(move |&a| WeylKey::new(0, s.clone(), a)))
            .collect();

        // Rows: (generator m, output key); columns: unknown coefficients.
        let mut row_index: std::collections::BTreeMap<(usize, WeylKey), usize> = Default::default();
        let mut rows: Vec<Vec<crate::algebra::Rational>> = Vec::new();
        let mut rhs: Vec<Poly> = Vec::new();
        let mut row_for = |m: usize, key: WeylKey, rows: &mut Vec<Vec<_>>, rhs: &mut Vec<Poly>| {
            *row_index.entry((m, key)).or_insert_with(|| {
                rows.push(vec![crate::algebra::int(0); unknowns.len()]);
                rhs.push(Poly::zero());
                rows.len() - 1
            })
        };
        // Entries of A are constants: qad of a constant-coefficient basis
        // element; the unknown polynomial coefficients multiply them.
        let mut columns: Vec<Vec<(usize, WeylKey, crate::algebra::Rational)>> = Vec::new();
        for key in &unknowns {
            let basis = WeylElement::monomial(n, 0, key.sym.clone(), key.anti, Poly::one());
            let mut col = Vec::new();
            for m in 0..n {
                let q = self.algebra().qad(&basis, &WeylElement::sym_gen(n, m))?;
                for (k, f) in q.terms() {
                    if !f.is_constant() {
                        return Err(Error::Invalid("non-constant structure constant in curvature system".into()));
                    }
                    // −qad(R) = ∇²
                    col.push((m, k.clone(), -f.constant_term()));
                }
            }
            columns.push(col);
        }
        for m in 0..n {
            let target = self.nabla_squared(&WeylElement::sym_gen(n, m));
            for (k, f) in target.terms() {
                let r = row_for(m, k.clone(), &mut rows, &mut rhs);
                rhs[r] += f;
            }
        }
        for (c, col) in columns.iter().enumerate() {
            for (m, k, v) in col {
                let r = row_for(*m, k.clone(), &mut rows, &mut rhs);
                rows[r][c] += v;
            }
        }
        let sol = solve_linear(&rows, &rhs, unknowns.len(), &Poly::zero()).map_err(|e| {
            Error::Invalid(format!(
                "curvature identity has no solution (residual {})",
                e.residual
            ))
        })?;
        let mut r = WeylElement::zero(n, EXACT);
        for (key, f) in unknowns.into_iter().zip(sol) {
            r.add_term(key, f);
        }
        Ok(r)
    }

    /// Riemann tensor Rᵗ_jkl = ∂_kΓᵗ_lj − ∂_lΓᵗ_kj + Γᵗ_ks Γˢ_lj − Γᵗ_ls Γˢ_kj.
    pub fn riemann(&self, t: usize, j: usize, k: usize, l: usize) -> Poly {
        let n = self.dim();
        let mut out = &self.gamma_upper(t, l, j).deriv(k) - &self.gamma_upper(t, k, j).deriv(l);
        for s in 0..n {
            out += &(self.gamma_upper(t, k, s) * self.gamma_upper(s, l, j));
            out -= &(self.gamma_upper(t, l, s) * self.gamma_upper(s, k, j));
        }
        out
    }

    /// Curvature element from the Riemann tensor,
    /// R = ¼ ω_it Rᵗ_jkl yⁱyʲ dxᵏ∧dxˡ.
    pub fn curvature_from_riemann(&self) -> WeylElement {
        let n = self.dim();
        let mut r = WeylElement::zero(n, EXACT);
        for k in 0..n {
            for l in 0..n {
                if k == l {
                    continue;
                }
                let Some((anti, sign)) = crate::weyl::anti::from_indices(&[k, l]) else {
                    continue;
                };
                for t in 0..n {
                    for j in 0..n {
                        let rt = self.riemann(t, j, k, l);
                        if rt.is_zero() {
                            continue;
                        }
                        for i in 0..n {
                            let w = &self.omega_lower()[i][t];
                            if w.is_zero() {
                                continue;
                            }
                            let c = w * rat(sign as i64, 4);
                            r.add_term(WeylKey::new(0, exps_add(&unit(i), &unit(j)), anti), rt.scale(&c));
                        }
                    }
                }
            }
        }
        r
    }
}
