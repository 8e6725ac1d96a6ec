//! Equivalences T_C = σ∘𝒜_h∘τ between Fedosov star products ⋆_Ω and
//! ⋆_{Ω−dC}, invariant self-equivalences and the transport of quantum
//! Hamiltonians.

use crate::algebra::{bernoulli, factorial, series_compose_operator, NuSeries, Rational};
use crate::error::{Error, Result};
use crate::fedosov::{forms_to_weyl, FedosovSetup};
use crate::geometry::{lie_weyl, FormSeries};
use crate::symmetry::{LieAction, QuantumHamiltonian};
use crate::weyl::{delta_inv, sigma, WeylElement, WeylKey, EXACT};

#[cfg(test)]
mod tests;

/// C⊗1: a ν-series of 1-forms placed in the symmetric factor, Cᵢ yⁱ.
pub fn one_forms_to_sym(c: &FormSeries) -> WeylElement {
    let valid = if c.order() >= NuSeries::EXACT {
        EXACT
    } else {
        2 * c.order() as i64 + 2
    };
    let mut out = WeylElement::zero(c.dim(), valid);
    for (k, form) in c.coeffs().iter().enumerate() {
        for i in 0..c.dim() {
            out.add_term(WeylKey::new(k as u32, crate::algebra::unit(i), 0), form.coeff_of(&[i]));
        }
    }
    out
}

fn exp_coeff(k: usize) -> Rational {
    factorial(k).recip()
}

fn bernoulli_coeff(k: usize) -> Rational {
    bernoulli(k) / factorial(k)
}

/// Source and target Fedosov data with Ω′ = Ω − dC and the element h.
#[derive(Clone, Debug)]
pub struct Equivalence {
    source: FedosovSetup,
    target: FedosovSetup,
    c: FormSeries,
    h: WeylElement,
}

impl Equivalence {
    /// Builds the target Ω′ = Ω − dC over the same geometry and solves h.
    pub fn new(source: FedosovSetup, c: FormSeries) -> Result<Self> {
        Self::check_c(&source, &c)?;
        let omega = source.omega().sub(&c.d());
        let target = FedosovSetup::new(source.geometry().clone(), omega, source.n_deg())?;
        Self::between(source, target, c)
    }

    /// Uses a given target; requires dC = Ω − Ω′ exactly.
    pub fn between(source: FedosovSetup, target: FedosovSetup, c: FormSeries) -> Result<Self> {
        Self::check_c(&source, &c)?;
        if source.geometry() != target.geometry() {
            return Err(Error::Invalid("source and target use different geometry data".into()));
        }
        let diff = source.omega().sub(target.omega());
        let order = diff.order().min(c.order());
        if c.d().with_order(order) != diff.with_order(order) {
            return Err(Error::NotClosed(format!(
                "dC = {} differs from Omega - Omega' = {diff}",
                c.d()
            )));
        }
        let mut eq = Self {
            h: WeylElement::zero(source.dim(), 0),
            source,
            target,
            c,
        };
        eq.h = eq.solve_h()?;
        Ok(eq)
    }

    fn check_c(source: &FedosovSetup, c: &FormSeries) -> Result<()> {
        if c.dim() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: c.dim(),
            });
        }
        if !c.is_of_degree(1) {
            return Err(Error::Invalid("C must be a series of 1-forms".into()));
        }
        if !c.coeff(0).is_zero() {
            return Err(Error::NuZeroTerm("C must start at nu^1".into()));
        }
        Ok(())
    }

    pub fn source(&self) -> &FedosovSetup {
        &self.source
    }

    pub fn target(&self) -> &FedosovSetup {
        &self.target
    }

    pub fn c(&self) -> &FormSeries {
        &self.c
    }

    pub fn h(&self) -> &WeylElement {
        &self.h
    }

    /// [qad(h)/(exp qad(h) − id)](a) as a Bernoulli series.
    pub fn bernoulli_operator(&self, h: &WeylElement, a: &WeylElement) -> Result<WeylElement> {
        let alg = self.source.geometry().algebra();
        series_compose_operator(bernoulli_coeff, |b| alg.qad(h, b), a)
    }

    /// C⊗1 + δ⁻¹(∇h − qad(r)h − [qad(h)/(exp qad(h) − id)](r′ − r)).
    pub fn h_map(&self, h: &WeylElement) -> Result<WeylElement> {
        let g = self.source.geometry();
        let alg = g.algebra();
        let dr = self.target.r().sub(self.source.r());
        let inner = g
            .nabla(h)
            .sub(&alg.qad(self.source.r(), h)?)
            .sub(&self.bernoulli_operator(h, &dr)?);
        Ok(one_forms_to_sym(&self.c).add(&delta_inv(&inner)))
    }

    fn solve_h(&self) -> Result<WeylElement> {
        let n_deg = self.source.n_deg();
        // h has total degree ≥ 3
        let mut h = WeylElement::zero(self.source.dim(), 2);
        while h.valid() < n_deg {
            let next = self.h_map(&h)?;
            if next.valid() <= h.valid() || !next.agrees_with(&h) {
                return Err(Error::NonContracting(format!(
                    "h-iteration stalled at total degree {}",
                    h.valid()
                )));
            }
            h = next;
        }
        Ok(h.with_valid(n_deg))
    }

    /// h − (fixed-point map)(h); zero within validity.
    pub fn h_residual(&self) -> Result<WeylElement> {
        Ok(self.h.sub(&self.h_map(&self.h)?))
    }

    /// 𝔇h + 1⊗C − [qad(h)/(exp qad(h) − id)](r′ − r); zero within validity.
    pub fn derivation_residual(&self) -> Result<WeylElement> {
        let dr = self.target.r().sub(self.source.r());
        Ok(self
            .source
            .derivation(&self.h)?
            .add(&forms_to_weyl(&self.c))
            .sub(&self.bernoulli_operator(&self.h, &dr)?))
    }

    /// 𝒜_h = exp(qad h).
    pub fn automorphism(&self, a: &WeylElement) -> Result<WeylElement> {
        let alg = self.source.geometry().algebra();
        series_compose_operator(exp_coeff, |b| alg.qad(&self.h, b), a)
    }

    /// 𝒜_{−h} = 𝒜_h⁻¹.
    pub fn automorphism_inverse(&self, a: &WeylElement) -> Result<WeylElement> {
        let alg = self.source.geometry().algebra();
        let minus = self.h.neg();
        series_compose_operator(exp_coeff, |b| alg.qad(&minus, b), a)
    }

    /// 𝔇′a − 𝒜_h 𝔇 𝒜_{−h} a.
    pub fn intertwining_residual(&self, a: &WeylElement) -> Result<WeylElement> {
        let lhs = self.target.derivation(a)?;
        let rhs = self.automorphism(&self.source.derivation(&self.automorphism_inverse(a)?)?)?;
        Ok(lhs.sub(&rhs))
    }

    /// T_C f = σ(𝒜_h τ(f)), exact through ν^order.
    pub fn apply(&self, f: &NuSeries, order: usize) -> Result<NuSeries> {
        let t = self.source.taylor(&f.truncate(order))?;
        let s = sigma(&self.automorphism(&t)?)?;
        if s.order() < order {
            return Err(Error::Validity(format!(
                "T_C known only through nu^{} with N_Deg = {}, nu^{order} requested",
                s.order(),
                self.source.n_deg()
            )));
        }
        Ok(s.truncate(order))
    }

    /// 𝐉(ξ) + i_ξC − T_C𝐉(ξ) per basis ξ; zero when Ω and C are invariant.
    pub fn key_identity_residual(&self, action: &LieAction, ham: &QuantumHamiltonian) -> Result<Vec<NuSeries>> {
        let order = ham.order().min(self.c.order());
        action
            .fields()
            .iter()
            .zip(&ham.values)
            .map(|(x, j)| {
                let ic = self.c.contract(x).to_functions();
                let tj = self.apply(j, order)?;
                Ok(j.truncate(order).add(&ic).sub(&tj).truncate(order))
            })
            .collect()
    }

    /// ℒ_ξ h per basis ξ; all zero for invariant data.
    pub fn h_invariance(&self, action: &LieAction) -> Vec<WeylElement> {
        action.fields().iter().map(|x| lie_weyl(x, &self.h)).collect()
    }
}

/// A(f) = exp{(1/ν)ad_⋆(t)}(f) through ν^order, for t ∈ νPoly⟦ν⟧.
pub fn self_equivalence(setup: &FedosovSetup, t: &NuSeries, f: &NuSeries, order: usize) -> Result<NuSeries> {
    if !t.coeff(0).is_zero() {
        return Err(Error::NuZeroTerm("self-equivalence generator must start at nu^1".into()));
    }
    let mut acc = f.truncate(order);
    let mut term = acc.clone();
    // each application raises the ν-order by at least one
    for k in 1..=order {
        term = setup.star_qcommutator(t, &term, order)?.scale(&Rational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}
