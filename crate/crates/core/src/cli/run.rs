use serde_json::{json, Value};

use super::config::{RunConfig, SecondPair};
use super::report::{self, CheckRow};
use super::Command;
use crate::algebra::{NuSeries, Poly};
use crate::cohomology::{
    characteristic_class, check_membership, d_equivariant, decide_vanishing, project_classes,
    relative_class, verify_witness, ClassStatus, Comparison, EquivariantCochain, EquivariantEquivalence, Witness,
};
use crate::equivalence::{self_equivalence, Equivalence};
use crate::error::{Error, Result};
use crate::fedosov::{moyal_oracle, FedosovSetup};
use crate::geometry::FormSeries;
use crate::symmetry::{
    bracket_residuals, cartan_samples, check_deformed_cartan, check_qham_taylor, common_signs,
    equivariance_residuals, hamiltonian_residuals, quantum_hamiltonian, solve_momentum_map, MomentumOutcome,
    QuantumHamiltonian,
};
use crate::weyl::WeylElement;

/// The sign of i_a(ξ)r in θ⊗1 + ½Dθ⊗1 ± i_a(ξ)r that `verify` confirms.
pub const RESOLVED_SIGN: i8 = -1;

fn conventions() -> Value {
    json!({
        "omega_upper": "omega^ij = -(omega_ij)^-1, so omega^12 = 1 for dx1^dx2",
        "poisson": "{f,g} = omega^ij d_i f d_j g",
        "theta": "theta_X = i_X omega = omega_ij X^i dx^j",
        "hamiltonian": "X f = -{J, f}, dJ = i_X(omega + Omega)",
        "quantum_commutator": "(1/nu)(f*g - g*f)",
        "i_a_r_sign": RESOLVED_SIGN,
        "class_representative": "(omega + Omega) - J",
        "indices": "1-based",
    })
}

pub(super) fn setup(cfg: &RunConfig) -> Result<FedosovSetup> {
    FedosovSetup::new(cfg.geometry.clone(), cfg.omega.clone(), cfg.n_deg)
}

/// Momentum-map outcome for a setup: the given 𝐉 if any (checked to be a
/// quantum Hamiltonian), else the computed one, shifted to a momentum map when
/// possible.
fn momentum_outcome(
    cfg: &RunConfig,
    s: &FedosovSetup,
    given: Option<&[NuSeries]>,
) -> Result<(QuantumHamiltonian, MomentumOutcome)> {
    let ham = match given {
        None => quantum_hamiltonian(s, &cfg.action, cfg.order, cfg.test_degree)?,
        Some(values) => {
            if let Some((i, f, r)) = hamiltonian_residuals(s, &cfg.action, values, cfg.order, cfg.test_degree)?.first() {
                return Err(Error::Invalid(format!(
                    "J is not a quantum Hamiltonian: xi_{} on f = {f} leaves {r}",
                    i + 1
                )));
            }
            let brackets = bracket_residuals(s, &cfg.action, values, cfg.order)?;
            let equiv = equivariance_residuals(&cfg.action, values);
            let is_mm = brackets.iter().all(|(_, r)| r.is_zero()) && equiv.iter().all(|(_, r)| r.is_zero());
            let ham = QuantumHamiltonian {
                values: values.to_vec(),
                is_momentum_map: is_mm,
            };
            if is_mm {
                let out = MomentumOutcome::Map(ham.clone());
                return Ok((ham, out));
            }
            ham
        }
    };
    let out = solve_momentum_map(s, &cfg.action, &ham)?;
    Ok((ham, out))
}

fn momentum_map(cfg: &RunConfig, s: &FedosovSetup, given: Option<&[NuSeries]>) -> Result<QuantumHamiltonian> {
    match momentum_outcome(cfg, s, given)?.1 {
        MomentumOutcome::Map(h) => Ok(h),
        MomentumOutcome::Obstructed(o) => Err(Error::NoQuantumMomentumMap(o.to_string())),
    }
}

/// Fixed sample inputs: coordinate polynomials of low degree in x1, x2.
fn samples(order: usize) -> Vec<NuSeries> {
    let x = |i| Poly::var(i);
    let polys = [
        x(0),
        x(1),
        &x(0) * &x(1),
        &x(0).pow(2) + &x(1),
        &x(1).pow(2) - &x(0),
        &(&x(0).pow(3) * &x(1)) + &Poly::from_int(2),
    ];
    polys.into_iter().map(|p| NuSeries::from_poly(p, order)).collect()
}

fn inputs(cfg: &RunConfig) -> Vec<NuSeries> {
    let mut v: Vec<NuSeries> = cfg.f.iter().chain(cfg.g.iter()).cloned().collect();
    v.extend(samples(cfg.order));
    v
}

pub(super) fn run_command(cmd: &Command, cfg: &RunConfig) -> Result<(Value, bool)> {
    let (result, passed) = match cmd {
        Command::Star => (star(cfg)?, true),
        Command::Momentum => (momentum(cfg)?, true),
        Command::Class => (class(cfg)?, true),
        Command::Compare => (compare_cmd(cfg)?, true),
        Command::Verify { witness } => verify(cfg, witness.as_ref())?,
    };
    let report = json!({
        "command": cmd.name(),
        "input": {
            "dim": cfg.dim,
            "order": cfg.order,
            "lie_algebra_dim": cfg.action.dim(),
            "flat": cfg.geometry.is_flat(),
            "Omega": report::form_series(&cfg.omega),
        },
        "conventions": conventions(),
        "validity": { "n_deg": cfg.n_deg, "nu_order": cfg.order, "test_degree": cfg.test_degree },
        "result": result,
    });
    Ok((report, passed))
}

fn star(cfg: &RunConfig) -> Result<Value> {
    let f = cfg.f.as_ref().ok_or_else(|| Error::Invalid("star needs f (config or --f)".into()))?;
    let g = cfg.g.as_ref().ok_or_else(|| Error::Invalid("star needs g (config or --g)".into()))?;
    let s = setup(cfg)?;
    let p = s.star(f, g, cfg.order)?;
    Ok(json!({
        "f": report::series_text(f),
        "g": report::series_text(g),
        "coefficients": report::series_coeffs(&p),
        "product": report::series_text(&p),
    }))
}

fn momentum(cfg: &RunConfig) -> Result<Value> {
    let s = setup(cfg)?;
    let (ham, out) = momentum_outcome(cfg, &s, cfg.j.as_deref())?;
    Ok(match out {
        MomentumOutcome::Map(h) => json!({
            "status": "momentum_map",
            "hamiltonian": report::series_list(&ham.values),
            "momentum_map": report::series_list(&h.values),
            "obstruction": null,
        }),
        MomentumOutcome::Obstructed(o) => json!({
            "status": "obstructed",
            "hamiltonian": report::series_list(&ham.values),
            "momentum_map": null,
            "obstruction": report::momentum_obstruction(&o),
        }),
    })
}

fn class(cfg: &RunConfig) -> Result<Value> {
    let s = setup(cfg)?;
    let j = momentum_map(cfg, &s, cfg.j.as_deref())?;
    let alpha = characteristic_class(&s, &j)?.with_order(cfg.order);
    let closed = d_equivariant(&alpha, &cfg.action)?.is_zero();
    let membership = check_membership(&alpha, &cfg.action);
    let (inv, plain) = project_classes(&alpha);
    // [(ω + Ω) − 𝐉] − [ω − J₀] = [Ω − (𝐉 − J₀)], which starts at ν¹.
    let order = alpha.order();
    let omega0 = FormSeries::monomial(s.geometry().omega_form(), 0, order);
    let j0: Vec<NuSeries> = j.classical().into_iter().map(|p| NuSeries::from_poly(p, order)).collect();
    let base = EquivariantCochain::from_form_and_functions(omega0, &j0)?;
    let deformation = alpha.sub(&base)?;
    let v = decide_vanishing(&deformation, &cfg.action, cfg.degree_bound)?;
    Ok(json!({
        "momentum_map": report::series_list(&j.values),
        "representative": report::cochain(&alpha),
        "closed": closed,
        "membership": report::rows(&report::validation_rows("membership", &membership)),
        "projections": {
            "invariant_de_rham": report::form_series(&inv),
            "de_rham": report::form_series(&plain),
        },
        "relative_to_classical": {
            "representative": report::cochain(&deformation),
            "verdict": report::verdict(&v),
        },
    }))
}

/// Pair A from the config and pair B from `compare`.
pub(super) fn pairs(
    cfg: &RunConfig,
) -> Result<((FedosovSetup, QuantumHamiltonian), (FedosovSetup, QuantumHamiltonian))> {
    let a = setup(cfg)?;
    let ja = momentum_map(cfg, &a, cfg.j.as_deref())?;
    let second = cfg
        .second
        .as_ref()
        .ok_or_else(|| Error::Invalid("compare needs a `compare` section".into()))?;
    let b = match second {
        SecondPair::Explicit { omega, j } => {
            let b = FedosovSetup::new(cfg.geometry.clone(), omega.clone(), cfg.n_deg)?;
            let jb = momentum_map(cfg, &b, j.as_deref())?;
            (b, jb)
        }
        SecondPair::Transport { c, t } => {
            let eq = Equivalence::new(a.clone(), c.clone())?;
            let b = eq.target().clone();
            let values = ja
                .values
                .iter()
                .map(|v| self_equivalence(&b, t, &eq.apply(v, cfg.order)?, cfg.order))
                .collect::<Result<Vec<_>>>()?;
            let jb = momentum_map(cfg, &b, Some(&values))?;
            (b, jb)
        }
    };
    Ok(((a, ja), b))
}

fn compare_cmd(cfg: &RunConfig) -> Result<Value> {
    let ((a, ja), (b, jb)) = pairs(cfg)?;
    if a.geometry() != b.geometry() {
        return Err(Error::Invalid("pairs use different geometry data".into()));
    }
    let relative = relative_class((&a, &ja), (&b, &jb), &cfg.action)?.with_order(cfg.order);
    let verdict = decide_vanishing(&relative, &cfg.action, cfg.degree_bound)?;
    let cmp = Comparison { relative, verdict };
    let (check, realized) = match &cmp.verdict.witness {
        Some(w) => {
            let check = verify_witness(&cmp.relative, &cfg.action, w);
            let s = EquivariantEquivalence::from_witness(&a, w)?;
            let order = cmp.relative.order();
            let mut ok = true;
            for (x, y) in ja.values.iter().zip(&jb.values) {
                ok &= s.apply(x, order)? == y.truncate(order);
            }
            (Some(report::rows(&report::validation_rows("witness", &check))), Some(ok))
        }
        None => (None, None),
    };
    let (inv, plain) = project_classes(&cmp.relative);
    Ok(json!({
        "pair_a": { "J": report::series_list(&ja.values), "Omega": report::form_series(a.omega()) },
        "pair_b": { "J": report::series_list(&jb.values), "Omega": report::form_series(b.omega()) },
        "relative": report::cochain(&cmp.relative),
        "status": cmp.verdict.status.as_str(),
        "degree_bound": cmp.verdict.degree_bound,
        "witness": cmp.verdict.witness.as_ref().map(report::witness),
        "obstruction": cmp.verdict.obstruction.as_ref().map(report::obstruction),
        "witness_check": check,
        "S_maps_J_A_to_J_B": realized,
        // Closed forms on R^2n are exact, so the plain image always vanishes;
        // the invariant image is known to vanish once a witness exists.
        "projections": {
            "invariant_de_rham_zero": (cmp.verdict.status == ClassStatus::Zero || inv.is_zero()).then_some(true),
            "de_rham_zero": plain.d().is_zero(),
        },
    }))
}

fn first_nonvanishing<'a>(items: impl IntoIterator<Item = (String, &'a WeylElement)>) -> Option<String> {
    items
        .into_iter()
        .find(|(_, r)| !r.vanishes())
        .map(|(l, r)| format!("{l}: {r}"))
}

/// Runs every invariant the config supports.
fn verify(cfg: &RunConfig, witness: Option<&Witness>) -> Result<(Value, bool)> {
    let s = setup(cfg)?;
    let k = cfg.order;
    let mut rows = Vec::new();

    rows.push(CheckRow::from_failure(
        "r fixed point",
        first_nonvanishing([("residual".to_string(), &s.r_residual()?)]),
    ));
    let basis: Vec<WeylElement> = cartan_samples(cfg.dim, 3)
        .into_iter()
        .map(|a| a.with_valid(cfg.n_deg))
        .collect();
    let mut d2 = None;
    for a in &basis {
        let r = s.derivation(&s.derivation(a)?)?;
        if !r.vanishes() {
            d2 = Some(format!("{a}: {r}"));
            break;
        }
    }
    rows.push(CheckRow::from_failure("D^2 = 0", d2));

    let xs = inputs(cfg);
    let one = NuSeries::from_poly(Poly::one(), k);
    let mut unit = None;
    let mut assoc = None;
    let mut poisson = None;
    let mut moyal = None;
    let flat = cfg.geometry.is_flat() && cfg.omega.is_zero();
    for (n, f) in xs.iter().enumerate() {
        if s.star(&one, f, k)? != f.truncate(k) || s.star(f, &one, k)? != f.truncate(k) {
            unit.get_or_insert(format!("f = {f}"));
        }
        let g = &xs[(n + 1) % xs.len()];
        let h = &xs[(n + 2) % xs.len()];
        let l = s.star(&s.star(f, g, k)?, h, k)?;
        let r = s.star(f, &s.star(g, h, k)?, k)?;
        if l != r {
            assoc.get_or_insert(format!("({f}, {g}, {h}): {}", l.sub(&r)));
        }
        if k >= 1 {
            let c = s.star_qcommutator(f, g, k - 1)?;
            let pb = cfg.geometry.poisson(&f.coeff(0), &g.coeff(0));
            if c.coeff(0) != pb {
                poisson.get_or_insert(format!("({f}, {g})"));
            }
        }
        if flat && s.star(f, g, k)? != moyal_oracle(cfg.geometry.omega_upper(), f, g, k) {
            moyal.get_or_insert(format!("({f}, {g})"));
        }
    }
    rows.push(CheckRow::from_failure("unit", unit));
    rows.push(CheckRow::from_failure("associativity", assoc));
    rows.push(CheckRow::from_failure("commutator = Poisson bracket", poisson));
    if flat {
        rows.push(CheckRow::from_failure("Moyal oracle", moyal));
    }

    let cartan_basis = cartan_samples(cfg.dim, 2);
    for (i, x) in cfg.action.fields().iter().enumerate() {
        let res = check_deformed_cartan(&s, x, &cartan_basis)?;
        let signs = common_signs(&res);
        rows.push(CheckRow::new(
            format!("deformed Cartan xi_{}", i + 1),
            signs.contains(&RESOLVED_SIGN),
            Some(format!("passing signs {signs:?}")),
        ));
    }

    let mut status = "none";
    if cfg.action.dim() > 0 {
        let (_, out) = momentum_outcome(cfg, &s, cfg.j.as_deref())?;
        match out {
            MomentumOutcome::Obstructed(_) => status = "obstructed",
            MomentumOutcome::Map(j) => {
                status = "momentum_map";
                let taylor = check_qham_taylor(&s, &cfg.action, &j).map(|r| common_signs(&r));
                rows.push(match taylor {
                    Ok(signs) => CheckRow::new(
                        "Taylor series of J",
                        signs.contains(&RESOLVED_SIGN),
                        Some(format!("passing signs {signs:?}")),
                    ),
                    Err(e) => CheckRow::new("Taylor series of J", false, Some(e.to_string())),
                });
                let eq = equivariance_residuals(&cfg.action, &j.values)
                    .into_iter()
                    .find(|(_, r)| !r.is_zero())
                    .map(|((a, b), r)| format!("(xi_{}, xi_{}): {r}", a + 1, b + 1));
                rows.push(CheckRow::from_failure("equivariance of J", eq));
                let br = bracket_residuals(&s, &cfg.action, &j.values, k)?
                    .into_iter()
                    .find(|(_, r)| !r.is_zero())
                    .map(|((a, b), r)| format!("(xi_{}, xi_{}): {r}", a + 1, b + 1));
                rows.push(CheckRow::from_failure("J bracket", br));
                let alpha = characteristic_class(&s, &j)?;
                let d = d_equivariant(&alpha, &cfg.action)?;
                rows.push(CheckRow::from_failure(
                    "(omega + Omega) - J closed",
                    (!d.is_zero()).then(|| d.to_string()),
                ));
                rows.extend(report::validation_rows("membership", &check_membership(&alpha, &cfg.action)));
                if let Some(c) = &cfg.c {
                    let eq = Equivalence::new(s.clone(), c.clone())?;
                    let res = eq.key_identity_residual(&cfg.action, &j)?;
                    let bad = res
                        .iter()
                        .enumerate()
                        .find(|(_, r)| !r.is_zero())
                        .map(|(i, r)| format!("xi_{}: {r}", i + 1));
                    rows.push(CheckRow::from_failure("J + i_xi C = T_C J", bad));
                }
            }
        }
    }

    if let Some(c) = &cfg.c {
        let eq = Equivalence::new(s.clone(), c.clone())?;
        rows.push(CheckRow::from_failure(
            "h fixed point",
            first_nonvanishing([("residual".to_string(), &eq.h_residual()?)]),
        ));
        rows.push(CheckRow::from_failure(
            "Dh + 1(x)C = B(h)(r' - r)",
            first_nonvanishing([("residual".to_string(), &eq.derivation_residual()?)]),
        ));
        let t = eq.target();
        let mut inter = None;
        for (n, f) in xs.iter().enumerate() {
            let g = &xs[(n + 1) % xs.len()];
            let lhs = eq.apply(&s.star(f, g, k)?, k)?;
            let rhs = t.star(&eq.apply(f, k)?, &eq.apply(g, k)?, k)?;
            if lhs != rhs {
                inter.get_or_insert(format!("({f}, {g}): {}", lhs.sub(&rhs)));
            }
        }
        rows.push(CheckRow::from_failure("T_C intertwines star products", inter));
        let invariant = cfg.action.fields().iter().all(|x| c.lie(x).is_zero());
        if invariant && cfg.action.dim() > 0 {
            let inv = eq.h_invariance(&cfg.action);
            rows.push(CheckRow::from_failure(
                "L_xi h = 0",
                first_nonvanishing(inv.iter().enumerate().map(|(i, r)| (format!("xi_{}", i + 1), r))),
            ));
        }
    }

    if let Some(w) = witness {
        let ((a, ja), (b, jb)) = pairs(cfg)?;
        let relative = relative_class((&a, &ja), (&b, &jb), &cfg.action)?.with_order(cfg.order);
        rows.extend(report::validation_rows("witness", &verify_witness(&relative, &cfg.action, w)));
        let sm = EquivariantEquivalence::from_witness(&a, w)?;
        let order = relative.order();
        let mut bad = None;
        for (i, (x, y)) in ja.values.iter().zip(&jb.values).enumerate() {
            let sx = sm.apply(x, order)?;
            if sx != y.truncate(order) {
                bad.get_or_insert(format!("xi_{}: S J_A = {sx}", i + 1));
            }
        }
        rows.push(CheckRow::from_failure("witness: S J_A = J_B", bad));
    }

    let passed = rows.iter().all(|r| r.passed);
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    Ok((
        json!({
            "passed": passed,
            "failed": failed,
            "momentum_status": status,
            "checks": report::rows(&rows),
        }),
        passed,
    ))
}
