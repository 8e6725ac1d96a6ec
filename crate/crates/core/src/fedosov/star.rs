use crate::algebra::NuSeries;
use crate::error::{Error, Result};
use crate::weyl::sigma;

use super::FedosovSetup;

impl FedosovSetup {
    /// f ⋆_Ω g = σ(τ(f) ∘_F τ(g)), exact through ν^order.
    pub fn star(&self, f: &NuSeries, g: &NuSeries, order: usize) -> Result<NuSeries> {
        let tf = self.taylor(&f.truncate(order))?;
        let tg = self.taylor(&g.truncate(order))?;
        let p = self.geometry().algebra().product(&tf, &tg)?;
        let s = sigma(&p)?;
        if s.order() < order {
            return Err(Error::Validity(format!(
                "star product known only through nu^{} with N_Deg = {}, nu^{order} requested (N_Deg >= {} needed)",
                s.order(),
                self.n_deg(),
                2 * order
            )));
        }
        Ok(s.truncate(order))
    }

    /// (1/ν)(f⋆g − g⋆f) = σ(qad(τf)(τg)), exact through ν^order. Inputs are
    /// needed only through ν^order: a ν^(order+1) coefficient contributes from
    /// ν^(order+1) on, so it is taken as zero.
    pub fn star_qcommutator(&self, f: &NuSeries, g: &NuSeries, order: usize) -> Result<NuSeries> {
        let pad = |v: &NuSeries| NuSeries::from_coeffs(v.truncate(order).coeffs().to_vec(), order + 1);
        let tf = self.taylor(&pad(f))?;
        let tg = self.taylor(&pad(g))?;
        let q = self.geometry().algebra().qad(&tf, &tg)?;
        let s = sigma(&q)?;
        if s.order() < order {
            return Err(Error::Validity(format!(
                "star commutator known only through nu^{} with N_Deg = {}, nu^{order} requested",
                s.order(),
                self.n_deg()
            )));
        }
        Ok(s.truncate(order))
    }
}
