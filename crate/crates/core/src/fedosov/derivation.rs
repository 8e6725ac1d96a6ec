use crate::algebra::{int, series_compose_operator, NuSeries};
use crate::error::{Error, Result};
use crate::geometry::PolyForm;
use crate::weyl::{delta, delta_inv, WeylElement, WeylKey};

use super::FedosovSetup;

impl FedosovSetup {
    /// ∇ − qad(r).
    fn nabla_minus_qad_r(&self, a: &WeylElement) -> Result<WeylElement> {
        let q = self.geometry().algebra().qad(self.r(), a)?;
        Ok(self.geometry().nabla(a).sub(&q))
    }

    /// 𝔇 = −δ + ∇ − qad(r).
    pub fn derivation(&self, a: &WeylElement) -> Result<WeylElement> {
        Ok(self.nabla_minus_qad_r(a)?.sub(&delta(a)))
    }

    /// 𝔇⁻¹a = −δ⁻¹ Σₖ Lᵏ a with L = [δ⁻¹, ∇ − qad(r)], for a without
    /// antisymmetric degree 0 component.
    pub fn dinv(&self, a: &WeylElement) -> Result<WeylElement> {
        if a.terms().any(|(k, _)| k.dega() == 0) {
            return Err(Error::ZeroFormDegree("Fedosov homotopy".into()));
        }
        let l = |b: &WeylElement| -> Result<WeylElement> {
            let x = delta_inv(&self.nabla_minus_qad_r(b)?);
            let y = self.nabla_minus_qad_r(&delta_inv(b))?;
            Ok(x.add(&y))
        };
        let sum = series_compose_operator(|_| int(1), l, a)?;
        Ok(delta_inv(&sum).neg())
    }

    /// Fedosov-Taylor series τ(f) = f − 𝔇⁻¹(1⊗df).
    pub fn taylor(&self, f: &NuSeries) -> Result<WeylElement> {
        let dim = self.dim();
        let base = WeylElement::from_nu_series(dim, f);
        let mut df = WeylElement::zero(dim, base.valid());
        for (k, c) in f.coeffs().iter().enumerate() {
            for (anti, g) in PolyForm::function(dim, c.clone()).d().terms() {
                df.add_term(WeylKey::new(k as u32, Default::default(), *anti), g.clone());
            }
        }
        if df.is_zero() {
            return Ok(base);
        }
        Ok(base.sub(&self.dinv(&df)?))
    }
}
