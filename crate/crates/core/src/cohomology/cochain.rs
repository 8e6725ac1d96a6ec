use std::fmt;

use crate::error::{Error, Result};
use crate::fedosov::FedosovSetup;
use crate::geometry::FormSeries;
use crate::symmetry::{Check, LieAction, QuantumHamiltonian, ValidationReport};

/// An element of ⊕_{2i+j=k} Symⁱ𝔤* ⊗ Ωʲ with i ∈ {0, 1}: a ν-series of
/// k-forms plus, per basis element ξ, a ν-series of (k−2)-forms α(ξ).
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantCochain {
    degree: u32,
    form_part: FormSeries,
    lin_part: Vec<FormSeries>,
}

impl EquivariantCochain {
    pub fn new(degree: u32, form_part: FormSeries, lin_part: Vec<FormSeries>) -> Result<Self> {
        if degree > 3 {
            return Err(Error::Unsupported(format!("cochains of degree {degree} (at most 3)")));
        }
        if !form_part.is_of_degree(degree) {
            return Err(Error::Invalid(format!("form part is not of exterior degree {degree}")));
        }
        if degree < 2 && lin_part.iter().any(|a| !a.is_zero()) {
            return Err(Error::Invalid(format!("degree {degree} cochains have no Sym1 component")));
        }
        if degree >= 2 && lin_part.iter().any(|a| !a.is_of_degree(degree - 2)) {
            return Err(Error::Invalid(format!("Sym1 component is not of exterior degree {}", degree - 2)));
        }
        if lin_part.iter().any(|a| a.dim() != form_part.dim()) {
            return Err(Error::DimensionMismatch {
                expected: form_part.dim(),
                found: lin_part.iter().map(FormSeries::dim).find(|&d| d != form_part.dim()).unwrap_or(0),
            });
        }
        Ok(Self {
            degree,
            form_part,
            lin_part,
        })
    }

    pub fn zero(dim: usize, degree: u32, m: usize, order: usize) -> Self {
        Self {
            degree,
            form_part: FormSeries::zero(dim, order),
            lin_part: vec![FormSeries::zero(dim, order); if degree >= 2 { m } else { 0 }],
        }
    }

    /// An invariant form regarded as a cochain with no Sym¹ component.
    pub fn from_form(form: FormSeries, degree: u32, m: usize) -> Result<Self> {
        let lin = if degree >= 2 {
            vec![FormSeries::zero(form.dim(), form.order()); m]
        } else {
            Vec::new()
        };
        Self::new(degree, form, lin)
    }

    /// Degree-2 cochain form − (values as functions).
    pub fn from_form_and_functions(form: FormSeries, minus_lin: &[crate::algebra::NuSeries]) -> Result<Self> {
        let dim = form.dim();
        let lin = minus_lin
            .iter()
            .map(|j| FormSeries::from_functions(dim, &j.neg()))
            .collect();
        Self::new(2, form, lin)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.form_part.dim()
    }

    pub fn form_part(&self) -> &FormSeries {
        &self.form_part
    }

    pub fn lin_part(&self) -> &[FormSeries] {
        &self.lin_part
    }

    /// The ν-order through which every component is known.
    pub fn order(&self) -> usize {
        self.lin_part
            .iter()
            .map(FormSeries::order)
            .fold(self.form_part.order(), usize::min)
    }

    pub fn is_zero(&self) -> bool {
        self.form_part.is_zero() && self.lin_part.iter().all(FormSeries::is_zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self {
            degree: self.degree,
            form_part: self.form_part.with_order(order),
            lin_part: self.lin_part.iter().map(|a| a.with_order(order)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&FormSeries, &FormSeries) -> FormSeries) -> Result<Self> {
        if self.degree != other.degree || self.lin_part.len() != other.lin_part.len() {
            return Err(Error::Invalid("cochains of different degree or Lie algebra dimension".into()));
        }
        Ok(Self {
            degree: self.degree,
            form_part: f(&self.form_part, &other.form_part),
            lin_part: self.lin_part.iter().zip(&other.lin_part).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, FormSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, FormSeries::sub)
    }
}

impl fmt::Display for EquivariantCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form: {}", self.form_part)?;
        for (i, a) in self.lin_part.iter().enumerate() {
            write!(f, "; xi_{}: {a}", i + 1)?;
        }
        Ok(())
    }
}

/// (d_𝔤α)(ξ) = d(α(ξ)) + i_ξ α(ξ), for α of degree ≤ 2.
pub fn d_equivariant(alpha: &EquivariantCochain, action: &LieAction) -> Result<EquivariantCochain> {
    if alpha.degree > 2 {
        return Err(Error::Unsupported(format!(
            "d_g of a degree {} cochain (output degree at most 3)",
            alpha.degree
        )));
    }
    let m = action.dim();
    if alpha.degree >= 2 && alpha.lin_part.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: alpha.lin_part.len(),
        });
    }
    let form = alpha.form_part.d();
    let lin = if alpha.degree + 1 >= 2 {
        (0..m)
            .map(|i| {
                let x = action.field(i);
                let contracted = alpha.form_part.contract(x);
                match alpha.lin_part.get(i) {
                    Some(a) => a.d().add(&contracted),
                    None => contracted,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    EquivariantCochain::new(alpha.degree + 1, form, lin)
}

/// Invariance ℒ_ξ(form part) = 0 and equivariance α([ξ,η]) = −ℒ_ξα(η).
pub fn check_membership(alpha: &EquivariantCochain, action: &LieAction) -> ValidationReport {
    let m = action.dim();
    let invariant = (0..m).find_map(|i| {
        let l = alpha.form_part.lie(action.field(i));
        (!l.is_zero()).then(|| format!("xi_{}: L_xi(form part) = {l}", i + 1))
    });
    let mut checks = vec![Check::new("invariance", invariant)];
    if !alpha.lin_part.is_empty() {
        let order = alpha.order();
        let mut failure = None;
        'outer: for i in 0..m {
            for j in 0..m {
                let mut bracket = FormSeries::zero(alpha.dim(), order);
                for (k, a) in alpha.lin_part.iter().enumerate() {
                    bracket = bracket.add(&a.scale(action.c(i, j, k)));
                }
                let rhs = alpha.lin_part[j].lie(action.field(i)).neg();
                if bracket.with_order(order) != rhs.with_order(order) {
                    failure = Some(format!("(xi_{}, xi_{})", i + 1, j + 1));
                    break 'outer;
                }
            }
        }
        checks.push(Check::new("equivariance", failure));
    }
    ValidationReport { checks }
}

/// Representative (ω + Ω) − 𝐉 of ν·c_𝔤(⋆_Ω, 𝐉).
pub fn characteristic_class(setup: &FedosovSetup, ham: &QuantumHamiltonian) -> Result<EquivariantCochain> {
    if !ham.is_momentum_map {
        return Err(Error::NoQuantumMomentumMap(
            "the characteristic class needs a quantum momentum map".into(),
        ));
    }
    let order = ham.order().min(setup.omega().order());
    let omega = FormSeries::monomial(setup.geometry().omega_form(), 0, order);
    let form = omega.add(&setup.omega().with_order(order));
    let values: Vec<_> = ham.values.iter().map(|v| v.truncate(order)).collect();
    EquivariantCochain::from_form_and_functions(form, &values)
}

/// (Ω_B − 𝐉_B) − (Ω_A − 𝐉_A), required to be d_𝔤-closed.
pub fn relative_class(
    a: (&FedosovSetup, &QuantumHamiltonian),
    b: (&FedosovSetup, &QuantumHamiltonian),
    action: &LieAction,
) -> Result<EquivariantCochain> {
    let (sa, ja) = a;
    let (sb, jb) = b;
    if ja.values.len() != action.dim() || jb.values.len() != action.dim() {
        return Err(Error::DimensionMismatch {
            expected: action.dim(),
            found: ja.values.len().max(jb.values.len()),
        });
    }
    if ja.classical() != jb.classical() {
        return Err(Error::Invalid("the two quantum momentum maps deform different J0".into()));
    }
    let order = [ja.order(), jb.order(), sa.omega().order(), sb.omega().order()]
        .into_iter()
        .min()
        .unwrap_or(0);
    let form = sb.omega().sub(sa.omega()).with_order(order);
    let diff: Vec<_> = ja
        .values
        .iter()
        .zip(&jb.values)
        .map(|(x, y)| y.sub(x).truncate(order))
        .collect();
    let alpha = EquivariantCochain::from_form_and_functions(form, &diff)?;
    let d = d_equivariant(&alpha, action)?;
    if !d.is_zero() {
        return Err(Error::NotClosed(format!("relative class representative: d_g alpha = {d}")));
    }
    Ok(alpha)
}

/// Images in H²_{dR,inv} and H²_dR: the form part, twice.
pub fn project_classes(alpha: &EquivariantCochain) -> (FormSeries, FormSeries) {
    (alpha.form_part.clone(), alpha.form_part.clone())
}

/// α(ξ) as a ν-series of functions, for degree-2 cochains.
pub(crate) fn lin_functions(alpha: &EquivariantCochain) -> Vec<crate::algebra::NuSeries> {
    alpha.lin_part.iter().map(FormSeries::to_functions).collect()
}
