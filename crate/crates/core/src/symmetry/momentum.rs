use std::fmt;

use num_traits::Zero;

use super::LieAction;
use crate::algebra::{solve_linear, NuSeries, Poly, Rational};
use crate::error::{Error, Result};
use crate::fedosov::FedosovSetup;
use crate::geometry::{FormSeries, GeometryData, PolyForm};

/// Values 𝐉(ξₖ) on the basis of 𝔤, exact through ν^order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumHamiltonian {
    pub values: Vec<NuSeries>,
    pub is_momentum_map: bool,
}

impl QuantumHamiltonian {
    pub fn order(&self) -> usize {
        self.values.iter().map(NuSeries::order).min().unwrap_or(NuSeries::EXACT)
    }

    /// 𝐉|_{ν=0}.
    pub fn classical(&self) -> Vec<Poly> {
        self.values.iter().map(|v| v.coeff(0)).collect()
    }
}

/// Why no quantum momentum map exists: the constants c ∈ C¹(𝔤)⟦ν⟧ would have
/// to solve c([ξᵢ,ξⱼ]) = (ω+Ω)(X_ξᵢ, X_ξⱼ) − 𝐉([ξᵢ,ξⱼ]) for the listed pairs,
/// and `certificate` combines these equations into 0 = `residual` ≠ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumObstruction {
    pub pairs: Vec<(usize, usize)>,
    pub rhs: Vec<NuSeries>,
    pub certificate: Vec<Rational>,
    pub residual: NuSeries,
}

impl fmt::Display for MomentumObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self
            .pairs
            .iter()
            .zip(&self.rhs)
            .zip(&self.certificate)
            .filter(|(_, y)| !y.is_zero())
            .map(|(((i, j), v), y)| format!("{y} * [c([xi_{}, xi_{}]) = {v}]", i + 1, j + 1))
            .collect();
        write!(f, "{} yields 0 = {}", eqs.join(" + "), self.residual)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MomentumOutcome {
    Map(QuantumHamiltonian),
    Obstructed(MomentumObstruction),
}

/// Primitives J with dJ = i_ξ ω, vanishing at the origin.
pub fn hamiltonian_primitives(action: &LieAction, geometry: &GeometryData) -> Result<Vec<Poly>> {
    let omega = geometry.omega_form();
    action
        .fields()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let theta = omega.contract(x);
            theta
                .poincare_primitive()
                .map(|p| p.coeff(0))
                .map_err(|_| Error::NotClosed(format!("i_X omega for xi_{} (field not symplectic)", i + 1)))
        })
        .collect()
}

/// Classical momentum map: dJ₀(ξ) = i_ξω with constants fixed so that
/// J₀([ξ,η]) = {J₀(ξ), J₀(η)}; then ℒ_ξ f = −{J₀(ξ), f}.
pub fn classical_momentum_map(action: &LieAction, geometry: &GeometryData) -> Result<Vec<Poly>> {
    let base = hamiltonian_primitives(action, geometry)?;
    let m = action.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            // Σₖ cᵏᵢⱼ aₖ = {Jᵢ, Jⱼ} − Σₖ cᵏᵢⱼ Jₖ
            let mut target = geometry.poisson(&base[i], &base[j]);
            for (k, jk) in base.iter().enumerate() {
                target -= &jk.scale(action.c(i, j, k));
            }
            if !target.is_constant() {
                return Err(Error::Invalid(format!(
                    "{{J(xi_{}), J(xi_{})}} - J([xi_{}, xi_{}]) = {target} is not constant",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
            rows.push((0..m).map(|k| action.c(i, j, k).clone()).collect());
            rhs.push(target.constant_term());
        }
    }
    let shift = solve_linear(&rows, &rhs, m, &Rational::zero()).map_err(|e| {
        Error::NotStronglyHamiltonian(format!(
            "constant adjustment infeasible, certificate {:?} gives 0 = {}",
            e.certificate.iter().map(ToString::to_string).collect::<Vec<_>>(),
            e.residual
        ))
    })?;
    Ok(base
        .into_iter()
        .zip(shift)
        .map(|(j, a)| &j + &Poly::constant(a))
        .collect())
}

/// ν⁰ part of a quantum Hamiltonian: the configured J₀ after checking
/// dJ₀(ξ) = i_ξω, else the classical momentum map, else bare primitives.
fn classical_part(action: &LieAction, geometry: &GeometryData) -> Result<Vec<Poly>> {
    if let Some(j0) = action.j0() {
        let omega = geometry.omega_form();
        for (i, (j, x)) in j0.iter().zip(action.fields()).enumerate() {
            if PolyForm::function(geometry.dim(), j.clone()).d() != omega.contract(x) {
                return Err(Error::Invalid(format!("J0(xi_{}) = {j} does not satisfy dJ0 = i_xi omega", i + 1)));
            }
        }
        return Ok(j0.to_vec());
    }
    match classical_momentum_map(action, geometry) {
        Ok(j) => Ok(j),
        Err(Error::NotStronglyHamiltonian(_)) => hamiltonian_primitives(action, geometry),
        Err(e) => Err(e),
    }
}

/// i_ξ(ω + Ω) as a ν-series of 1-forms.
pub fn contracted_symplectic_series(setup: &FedosovSetup, x: &crate::geometry::PolyVectorField, order: usize) -> FormSeries {
    let mut coeffs = vec![setup.geometry().omega_form().contract(x)];
    for k in 1..=order {
        coeffs.push(setup.omega().coeff(k).contract(x));
    }
    FormSeries::from_coeffs(setup.dim(), coeffs, order)
}

/// Residuals ℒ_ξ f + (1/ν)(𝐉(ξ)⋆f − f⋆𝐉(ξ)) on all monomials f of degree
/// ≤ `test_degree`; returns the nonzero ones as (basis index, f, residual).
pub fn hamiltonian_residuals(
    setup: &FedosovSetup,
    action: &LieAction,
    values: &[NuSeries],
    order: usize,
    test_degree: u32,
) -> Result<Vec<(usize, Poly, NuSeries)>> {
    let mut bad = Vec::new();
    for (i, j) in values.iter().enumerate() {
        for f in Poly::monomials_up_to(setup.dim(), test_degree) {
            let fs = NuSeries::from_poly(f.clone(), order);
            let comm = setup.star_qcommutator(j, &fs, order)?;
            let lie = NuSeries::from_poly(action.field(i).apply(&f), order);
            let res = lie.add(&comm);
            if !res.is_zero() {
                bad.push((i, f, res));
            }
        }
    }
    Ok(bad)
}

/// Quantum Hamiltonian 𝐉(ξ) with d𝐉(ξ) = i_ξ(ω+Ω), verified on the monomial
/// test basis through ν^order.
pub fn quantum_hamiltonian(
    setup: &FedosovSetup,
    action: &LieAction,
    order: usize,
    test_degree: u32,
) -> Result<QuantumHamiltonian> {
    let g = setup.geometry();
    action.require_valid(g)?;
    if order > setup.omega().order() {
        return Err(Error::Validity(format!("Omega is given through nu^{}, nu^{order} requested", setup.omega().order())));
    }
    for (i, x) in action.fields().iter().enumerate() {
        let l = setup.omega().lie(x);
        if !l.with_order(order).is_zero() {
            return Err(Error::Invalid(format!("Omega is not invariant under xi_{}: L_X Omega = {l}", i + 1)));
        }
    }
    let j0 = classical_part(action, g)?;
    let mut values = Vec::new();
    for (i, x) in action.fields().iter().enumerate() {
        let alpha = contracted_symplectic_series(setup, x, order);
        if !alpha.d().is_zero() {
            return Err(Error::NotClosed(format!("i_xi(omega + Omega) for xi_{}", i + 1)));
        }
        let prim = alpha.poincare_primitive()?.to_functions();
        let mut coeffs: Vec<Poly> = prim.coeffs().to_vec();
        if coeffs.is_empty() {
            coeffs.push(Poly::zero());
        }
        coeffs[0] = j0[i].clone();
        values.push(NuSeries::from_coeffs(coeffs, order));
    }
    let bad = hamiltonian_residuals(setup, action, &values, order, test_degree)?;
    if let Some((i, f, r)) = bad.first() {
        return Err(Error::Invalid(format!(
            "quantum Hamiltonian check fails for xi_{} on f = {f}: residual {r}",
            i + 1
        )));
    }
    Ok(QuantumHamiltonian {
        values,
        is_momentum_map: action.dim() == 0,
    })
}

/// Shifts 𝐉 by constants so that 𝐉([ξ,η]) = (ω+Ω)(X_ξ, X_η), when possible.
pub fn solve_momentum_map(setup: &FedosovSetup, action: &LieAction, ham: &QuantumHamiltonian) -> Result<MomentumOutcome> {
    let order = ham.order();
    let m = action.dim();
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let xi = action.field(i);
            let xj = action.field(j);
            let pairing = contracted_symplectic_series(setup, xi, order).contract(xj).to_functions();
            let target = pairing.sub(&action.on_bracket(i, j, &ham.values, order));
            if target.coeffs().iter().any(|p| !p.is_constant()) {
                return Err(Error::Invalid(format!(
                    "(omega + Omega)(X_{}, X_{}) - J([xi_{}, xi_{}]) = {target} is not constant; J is not a quantum Hamiltonian",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
            pairs.push((i, j));
            rows.push((0..m).map(|k| action.c(i, j, k).clone()).collect::<Vec<_>>());
            rhs.push(target);
        }
    }
    match solve_linear(&rows, &rhs, m, &NuSeries::zero(order)) {
        Ok(shift) => {
            let values = ham
                .values
                .iter()
                .zip(shift)
                .map(|(v, c)| v.add(&c.with_order(order)))
                .collect();
            Ok(MomentumOutcome::Map(QuantumHamiltonian {
                values,
                is_momentum_map: true,
            }))
        }
        Err(e) => Ok(MomentumOutcome::Obstructed(MomentumObstruction {
            pairs,
            rhs,
            certificate: e.certificate,
            residual: e.residual,
        })),
    }
}

pub fn quantum_momentum_map(setup: &FedosovSetup, action: &LieAction, ham: &QuantumHamiltonian) -> Result<QuantumHamiltonian> {
    match solve_momentum_map(setup, action, ham)? {
        MomentumOutcome::Map(h) => Ok(h),
        MomentumOutcome::Obstructed(o) => Err(Error::NoQuantumMomentumMap(o.to_string())),
    }
}

/// 𝐉([ξ,η]) + ℒ_ξ𝐉(η) for all ordered pairs; zero for momentum maps.
pub fn equivariance_residuals(action: &LieAction, values: &[NuSeries]) -> Vec<((usize, usize), NuSeries)> {
    let order = values.iter().map(NuSeries::order).min().unwrap_or(0);
    let mut out = Vec::new();
    for i in 0..action.dim() {
        for j in 0..action.dim() {
            let lie = values[j].map(|p| action.field(i).apply(p));
            let r = action.on_bracket(i, j, values, order).add(&lie);
            out.push(((i, j), r));
        }
    }
    out
}

/// 𝐉([ξ,η]) − (1/ν)[𝐉(ξ), 𝐉(η)]_⋆ for all pairs i < j.
pub fn bracket_residuals(setup: &FedosovSetup, action: &LieAction, values: &[NuSeries], order: usize) -> Result<Vec<((usize, usize), NuSeries)>> {
    let mut out = Vec::new();
    for i in 0..action.dim() {
        for j in i + 1..action.dim() {
            let comm = setup.star_qcommutator(&values[i], &values[j], order)?;
            out.push(((i, j), action.on_bracket(i, j, values, order).sub(&comm)));
        }
    }
    Ok(out)
}
