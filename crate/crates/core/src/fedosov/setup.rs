use crate::algebra::{rat, NuSeries};
use crate::error::{Error, Result};
use crate::geometry::{FormSeries, GeometryData};
use crate::weyl::{delta_inv, WeylElement, WeylKey, EXACT};

/// Embeds a ν-series of forms as 1 ⊗ Ω in 𝒲⊗Λ.
pub fn forms_to_weyl(s: &FormSeries) -> WeylElement {
    let valid = if s.order() >= NuSeries::EXACT {
        EXACT
    } else {
        2 * s.order() as i64 + 1
    };
    let mut out = WeylElement::zero(s.dim(), valid);
    for (k, form) in s.coeffs().iter().enumerate() {
        for (anti, f) in form.terms() {
            out.add_term(WeylKey::new(k as u32, Default::default(), *anti), f.clone());
        }
    }
    out
}

/// Geometry, the series Ω ∈ νZ²(M)⟦ν⟧ and the solved Fedosov element r,
/// all known through total degree `n_deg`.
#[derive(Clone, Debug)]
pub struct FedosovSetup {
    geometry: GeometryData,
    omega: FormSeries,
    curvature: WeylElement,
    r: WeylElement,
    n_deg: i64,
}

/// Default truncation for ν-order K: the star product through ν^K needs
/// Deg 2K, and (1/ν)-commutator checks through ν^K need one more ν-order.
pub fn default_n_deg(order: usize) -> i64 {
    2 * order as i64 + 2
}

impl FedosovSetup {
    pub fn new(geometry: GeometryData, omega: FormSeries, n_deg: i64) -> Result<Self> {
        if omega.dim() != geometry.dim() {
            return Err(Error::DimensionMismatch {
                expected: geometry.dim(),
                found: omega.dim(),
            });
        }
        if !omega.is_of_degree(2) {
            return Err(Error::Invalid("Omega must be a series of 2-forms".into()));
        }
        if !omega.coeff(0).is_zero() {
            return Err(Error::NuZeroTerm("Omega must start at nu^1".into()));
        }
        if !omega.d().is_zero() {
            return Err(Error::NotClosed(format!("Omega-closedness: d(Omega) = {}", omega.d())));
        }
        if n_deg < 2 {
            return Err(Error::Invalid(format!("N_Deg must be at least 2, got {n_deg}")));
        }
        let curvature = geometry.curvature()?;
        let mut s = Self {
            geometry,
            omega,
            curvature,
            r: WeylElement::zero(0, 0),
            n_deg,
        };
        s.r = s.solve_r()?;
        Ok(s)
    }

    pub fn flat(dim: usize, n_deg: i64) -> Self {
        let g = GeometryData::standard_flat(dim);
        Self::new(g, FormSeries::zero(dim, NuSeries::EXACT), n_deg).expect("flat data is valid")
    }

    pub fn geometry(&self) -> &GeometryData {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn omega(&self) -> &FormSeries {
        &self.omega
    }

    pub fn curvature(&self) -> &WeylElement {
        &self.curvature
    }

    pub fn r(&self) -> &WeylElement {
        &self.r
    }

    pub fn n_deg(&self) -> i64 {
        self.n_deg
    }

    /// Right-hand side δ⁻¹(∇r − (1/ν) r∘_F r + R + 1⊗Ω) of the r-recursion.
    pub fn r_map(&self, r: &WeylElement) -> Result<WeylElement> {
        let alg = self.geometry.algebra();
        // r is odd, so r∘r = ½[r, r] and the division by ν is exact.
        let sq = alg.qad(r, r)?.scale(&rat(1, 2));
        let inner = self
            .geometry
            .nabla(r)
            .sub(&sq)
            .add(&self.curvature)
            .add(&forms_to_weyl(&self.omega));
        Ok(delta_inv(&inner))
    }

    /// Fixed point of the r-recursion, one total degree per iteration.
    fn solve_r(&self) -> Result<WeylElement> {
        let mut r = WeylElement::zero(self.dim(), 1);
        while r.valid() < self.n_deg {
            let next = self.r_map(&r)?;
            if next.valid() <= r.valid() || !next.agrees_with(&r) {
                return Err(Error::NonContracting(format!(
                    "r-iteration stalled at total degree {}",
                    r.valid()
                )));
            }
            r = next;
        }
        Ok(r.with_valid(self.n_deg))
    }

    /// r − δ⁻¹(∇r − (1/ν) r∘_F r + R + 1⊗Ω), zero within validity.
    pub fn r_residual(&self) -> Result<WeylElement> {
        Ok(self.r.sub(&self.r_map(&self.r)?))
    }
}
