use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::cochain::{d_equivariant, lin_functions, relative_class, EquivariantCochain};
use crate::algebra::{solve_linear, Exps, NuSeries, Poly, Rational};
use crate::equivalence::{self_equivalence, Equivalence};
use crate::error::{Error, Result};
use crate::fedosov::FedosovSetup;
use crate::geometry::{FormSeries, PolyForm};
use crate::symmetry::{Check, LieAction, QuantumHamiltonian, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    Zero,
    Nonzero,
    Inconclusive,
}

impl ClassStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassStatus::Zero => "zero",
            ClassStatus::Nonzero => "nonzero",
            ClassStatus::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// α = d_𝔤C + (ξ ↦ ℒ_ξ t) with C an invariant ν-series of 1-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub c: FormSeries,
    pub t: NuSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// No invariant primitive C of the form part within the degree bound.
    InvariantPrimitive,
    /// ℒ_ξ t = α(ξ) − i_ξC has no solution t.
    Constants,
}

/// An infeasible linear system: Σ multiplier · [coefficient of monomial in
/// equation ξ] reduces to 0 = `residual` ≠ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub stage: Stage,
    pub nu_power: usize,
    pub combination: Vec<(usize, Poly, Rational)>,
    pub residual: Rational,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .combination
            .iter()
            .map(|(i, m, y)| format!("{y} * [xi_{}, {m}]", i + 1))
            .collect();
        write!(f, "nu^{}: {} yields 0 = {}", self.nu_power, parts.join(" + "), self.residual)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassVerdict {
    pub status: ClassStatus,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
    pub degree_bound: u32,
}

/// Solves ℒ_ξ t = targets[ξ] (+ c_ξ when `free_constants`) for a polynomial t
/// without constant term and of degree ≤ `bound`.
fn solve_lie_system(
    action: &LieAction,
    targets: &[Poly],
    bound: u32,
    free_constants: bool,
) -> std::result::Result<Poly, (Vec<(usize, Poly, Rational)>, Rational)> {
    let dim = action.fields().first().map(|x| x.dim()).unwrap_or(0);
    let monomials: Vec<Poly> = Poly::monomials_up_to(dim, bound)
        .into_iter()
        .filter(|p| !p.is_constant())
        .collect();
    let m = action.dim();
    let ncols = monomials.len() + if free_constants { m } else { 0 };
    let mut index: BTreeMap<(usize, Exps), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut row = |key: (usize, Exps), rows: &mut Vec<Vec<Rational>>, rhs: &mut Vec<Rational>| -> usize {
        *index.entry(key).or_insert_with(|| {
            rows.push(vec![Rational::zero(); ncols]);
            rhs.push(Rational::zero());
            rows.len() - 1
        })
    };
    for (i, target) in targets.iter().enumerate() {
        for (e, c) in target.terms() {
            let r = row((i, e.clone()), &mut rows, &mut rhs);
            rhs[r] += c;
        }
        if free_constants {
            let r = row((i, Exps::new()), &mut rows, &mut rhs);
            rows[r][monomials.len() + i] += Rational::from_integer(1.into());
        }
        for (col, mono) in monomials.iter().enumerate() {
            for (e, c) in action.field(i).apply(mono).terms() {
                let r = row((i, e.clone()), &mut rows, &mut rhs);
                rows[r][col] += c;
            }
        }
    }
    let labels: Vec<(usize, Exps)> = {
        let mut l = vec![(0, Exps::new()); rows.len()];
        for (k, &r) in &index {
            l[r] = k.clone();
        }
        l
    };
    match solve_linear(&rows, &rhs, ncols, &Rational::zero()) {
        Ok(x) => {
            let mut t = Poly::zero();
            for (mono, c) in monomials.iter().zip(&x) {
                t += &mono.scale(c);
            }
            Ok(t)
        }
        Err(e) => {
            let combination = e
                .certificate
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
                .map(|(r, y)| {
                    let (i, ex) = &labels[r];
                    (*i, Poly::monomial(ex.clone(), Rational::from_integer(1.into())), y.clone())
                })
                .collect();
            Err((combination, e.residual))
        }
    }
}

/// Decides whether a closed degree-2 cochain starting at ν¹ is a
/// d_𝔤-coboundary, searching polynomial corrections of degree ≤ `degree_bound`.
/// Complete for linear and trivial actions; otherwise an unsolvable bounded
/// system yields `Inconclusive`.
pub fn decide_vanishing(alpha: &EquivariantCochain, action: &LieAction, degree_bound: u32) -> Result<ClassVerdict> {
    if alpha.degree() != 2 {
        return Err(Error::Invalid(format!("vanishing is decided for degree 2 cochains, got {}", alpha.degree())));
    }
    if alpha.lin_part().len() != action.dim() {
        return Err(Error::DimensionMismatch {
            expected: action.dim(),
            found: alpha.lin_part().len(),
        });
    }
    if !alpha.form_part().coeff(0).is_zero() || alpha.lin_part().iter().any(|a| !a.coeff(0).is_zero()) {
        return Err(Error::NuZeroTerm("the cochain must start at nu^1".into()));
    }
    let d = d_equivariant(alpha, action)?;
    if !d.is_zero() {
        return Err(Error::NotClosed(format!("d_g alpha = {d}")));
    }
    let dim = alpha.dim();
    let order = alpha.order();
    if order >= NuSeries::EXACT {
        return Err(Error::Validity("truncate the cochain to a finite nu-order first".into()));
    }
    let conclusive = action.fields().iter().all(|x| x.is_linear());
    let failed = |stage, k, (combination, residual)| ClassVerdict {
        status: if conclusive && stage == Stage::Constants {
            ClassStatus::Nonzero
        } else {
            ClassStatus::Inconclusive
        },
        witness: None,
        obstruction: Some(Obstruction {
            stage,
            nu_power: k,
            combination,
            residual,
        }),
        degree_bound,
    };

    let lin = lin_functions(alpha);
    let mut c_coeffs = vec![PolyForm::zero(dim)];
    let mut t_coeffs = vec![Poly::zero()];
    for k in 1..=order {
        let mut c = alpha.form_part().coeff(k).poincare_primitive()?;
        let drift: Vec<PolyForm> = action.fields().iter().map(|x| c.lie(x)).collect();
        if drift.iter().any(|l| !l.is_zero()) {
            // ℒ_ξC = dp_ξ; find f with ℒ_ξ f = −p_ξ + const, then C + df is invariant.
            let targets = drift
                .iter()
                .map(|l| Ok(l.poincare_primitive()?.coeff(0).scale(&Rational::from_integer((-1).into()))))
                .collect::<Result<Vec<_>>>()?;
            match solve_lie_system(action, &targets, degree_bound, true) {
                Ok(f) => c = c.add(&PolyForm::function(dim, f).d()),
                Err(cert) => return Ok(failed(Stage::InvariantPrimitive, k, cert)),
            }
        }
        let targets: Vec<Poly> = action
            .fields()
            .iter()
            .zip(&lin)
            .map(|(x, a)| &a.coeff(k) - &c.contract(x).coeff(0))
            .collect();
        match solve_lie_system(action, &targets, degree_bound, false) {
            Ok(t) => t_coeffs.push(t),
            Err(cert) => return Ok(failed(Stage::Constants, k, cert)),
        }
        c_coeffs.push(c);
    }
    let witness = Witness {
        c: FormSeries::from_coeffs(dim, c_coeffs, order),
        t: NuSeries::from_coeffs(t_coeffs, order),
    };
    Ok(ClassVerdict {
        status: ClassStatus::Zero,
        witness: Some(witness),
        obstruction: None,
        degree_bound,
    })
}

/// Re-checks a zero verdict: C invariant, dC = form part and
/// i_ξC + ℒ_ξ t = α(ξ), all exactly.
pub fn verify_witness(alpha: &EquivariantCochain, action: &LieAction, w: &Witness) -> ValidationReport {
    let order = alpha.order();
    let c = w.c.with_order(order);
    let invariant = (0..action.dim()).find_map(|i| {
        let l = c.lie(action.field(i));
        (!l.is_zero()).then(|| format!("xi_{}: L_xi C = {l}", i + 1))
    });
    let dc = c.d();
    let primitive = (dc != alpha.form_part().with_order(order)).then(|| format!("dC = {dc}"));
    let lin = lin_functions(alpha);
    let constants = (0..action.dim()).find_map(|i| {
        let x = action.field(i);
        let lhs = c.contract(x).to_functions().add(&w.t.with_order(order).map(|p| x.apply(p)));
        (lhs != lin[i].with_order(order)).then(|| format!("xi_{}: i_xi C + L_xi t = {lhs}", i + 1))
    });
    let starts = (!w.c.coeff(0).is_zero() || !w.t.coeff(0).is_zero()).then(|| "witness has a nu^0 term".to_string());
    ValidationReport {
        checks: vec![
            Check::new("witness starts at nu^1", starts),
            Check::new("C invariant", invariant),
            Check::new("dC = form part", primitive),
            Check::new("i_xi C + L_xi t = alpha(xi)", constants),
        ],
    }
}

/// S = exp{(1/ν)ad_⋆(s)} ∘ T: an equivalence from ⋆_A to ⋆_B followed by a
/// self-equivalence of ⋆_B.
#[derive(Clone, Debug)]
pub struct EquivariantEquivalence {
    pub transport: Equivalence,
    pub generator: NuSeries,
}

impl EquivariantEquivalence {
    /// Realizes a witness of [(Ω_B − 𝐉_B) − (Ω_A − 𝐉_A)] = 0 as S with
    /// S𝐉_A = 𝐉_B: T_{−C} followed by the self-equivalence generated by −t.
    pub fn from_witness(source: &FedosovSetup, w: &Witness) -> Result<Self> {
        Ok(Self {
            transport: Equivalence::new(source.clone(), w.c.neg())?,
            generator: w.t.neg(),
        })
    }

    pub fn target(&self) -> &FedosovSetup {
        self.transport.target()
    }

    pub fn apply(&self, f: &NuSeries, order: usize) -> Result<NuSeries> {
        let g = self.transport.apply(f, order)?;
        self_equivalence(self.transport.target(), &self.generator.truncate(order), &g, order)
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub relative: EquivariantCochain,
    pub verdict: ClassVerdict,
}

/// Relative class of two pairs (⋆, 𝐉) deforming the same J₀, with its
/// vanishing verdict.
pub fn compare(
    a: (&FedosovSetup, &QuantumHamiltonian),
    b: (&FedosovSetup, &QuantumHamiltonian),
    action: &LieAction,
    degree_bound: u32,
) -> Result<Comparison> {
    if a.0.geometry() != b.0.geometry() {
        return Err(Error::Invalid("pairs use different geometry data".into()));
    }
    let relative = relative_class(a, b, action)?;
    let verdict = decide_vanishing(&relative, action, degree_bound)?;
    Ok(Comparison { relative, verdict })
}
