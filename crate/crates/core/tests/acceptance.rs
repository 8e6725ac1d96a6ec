//! Acceptance suite: one test per criterion, exact rational equality only.
//! Each test prints `criterion NN <title>: PASS` or `FAIL (<first failure>)`.
//!
//! Desk scale: 2n = 2, ν-order K = 3, N_Deg = 8, monomial test basis to
//! degree 4 unless a criterion says otherwise.

use std::path::PathBuf;
use std::process::Command;

use fedosov_engine::algebra::{exps_up_to, rat, NuSeries, Poly, Rational};
use fedosov_engine::cli::RESOLVED_SIGN;
use fedosov_engine::cohomology::{
    characteristic_class, check_membership, compare, d_equivariant, decide_vanishing, project_classes,
    verify_witness, ClassStatus, EquivariantCochain, EquivariantEquivalence, Stage,
};
use fedosov_engine::equivalence::{self_equivalence, Equivalence};
use fedosov_engine::fedosov::FedosovSetup;
use fedosov_engine::geometry::{FormSeries, GeometryData, PolyForm, PolyVectorField};
use fedosov_engine::symmetry::{
    cartan_samples, check_deformed_cartan, check_qham_taylor, common_signs, hamiltonian_residuals,
    quantum_hamiltonian, quantum_momentum_map, solve_momentum_map, LieAction, MomentumOutcome, QuantumHamiltonian,
};
use fedosov_engine::weyl::{delta, delta_inv, delta_star, WeylElement, WeylKey};
use fedosov_engine::Error;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const K: usize = 3;
const N_DEG: i64 = 8;

type Outcome = Result<(), String>;

fn criterion(n: u32, title: &str, body: impl FnOnce() -> Outcome) {
    let r = body();
    match &r {
        Ok(()) => println!("criterion {n:02} {title}: PASS"),
        Err(e) => println!("criterion {n:02} {title}: FAIL ({e})"),
    }
    assert!(r.is_ok(), "criterion {n} failed: {}", r.unwrap_err());
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ok<T>(r: fedosov_engine::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn x(i: usize) -> Poly {
    Poly::var(i)
}

fn r2() -> Poly {
    &x(0).pow(2) + &x(1).pow(2)
}

fn area() -> PolyForm {
    PolyForm::monomial(2, &[0, 1], Poly::one())
}

fn exact_omega(alpha: Option<PolyForm>) -> FormSeries {
    match alpha {
        None => FormSeries::zero(2, NuSeries::EXACT),
        Some(a) => FormSeries::monomial(a, 1, NuSeries::EXACT),
    }
}

fn flat(omega: FormSeries) -> FedosovSetup {
    FedosovSetup::new(GeometryData::standard_flat(2), omega, N_DEG).unwrap()
}

/// Γ₁₁₁ = x², all other lowered symbols zero.
fn curved() -> FedosovSetup {
    let mut gamma = vec![vec![vec![Poly::zero(); 2]; 2]; 2];
    gamma[0][0][0] = x(1);
    let g = GeometryData::new(GeometryData::standard_omega(2), gamma).unwrap();
    FedosovSetup::new(g, exact_omega(None), N_DEG).unwrap()
}

fn translation() -> LieAction {
    LieAction::abelian(vec![PolyVectorField::coordinate(2, 0)])
}

fn rotation() -> LieAction {
    LieAction::abelian(vec![PolyVectorField::new(vec![-x(1), x(0)])])
}

fn angular(f: Poly, k: usize) -> FormSeries {
    FormSeries::monomial(PolyForm::one_form(&[-(&f * &x(1)), &f * &x(0)]), k, K)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32) -> Poly {
    let mut p = Poly::zero();
    for m in Poly::monomials_up_to(2, max_deg) {
        if rng.gen_bool(0.35) {
            p += &m.scale(&rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        }
    }
    p
}

fn random_series(rng: &mut ChaCha8Rng, max_deg: u32) -> NuSeries {
    NuSeries::from_poly(random_poly(rng, max_deg), K)
}

fn random_weyl(rng: &mut ChaCha8Rng) -> WeylElement {
    let mut a = WeylElement::zero(2, fedosov_engine::weyl::EXACT);
    let syms = exps_up_to(2, 3);
    for _ in 0..rng.gen_range(1..=4) {
        let sym = syms[rng.gen_range(0..syms.len())].clone();
        let anti = rng.gen_range(0..4u32);
        let nu = rng.gen_range(0..=1u32);
        let mut f = random_poly(rng, 1);
        if f.is_zero() {
            f = Poly::one();
        }
        a.add_term(WeylKey::new(nu, sym, anti), f);
    }
    a
}

/// Independent Moyal oracle for ω^{12} = 1 on ℝ²:
/// f⋆g = Σ_m (ν/2)^m/m! Σ_k (−1)^k C(m,k) ∂₁^{m−k}∂₂^k f · ∂₁^k∂₂^{m−k} g.
fn moyal2(f: &Poly, g: &Poly, order: usize) -> NuSeries {
    let d = |p: &Poly, a: usize, b: usize| {
        let mut q = p.clone();
        for _ in 0..a {
            q = q.deriv(0);
        }
        for _ in 0..b {
            q = q.deriv(1);
        }
        q
    };
    let mut coeffs = Vec::new();
    let mut fact = Rational::from_integer(1.into());
    for m in 0..=order {
        if m > 0 {
            fact *= Rational::from_integer((m as i64).into());
        }
        let mut c = Poly::zero();
        let mut binom = Rational::from_integer(1.into());
        for k in 0..=m {
            let sign = if k % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let term = &d(f, m - k, k) * &d(g, k, m - k);
            c += &term.scale(&(sign * &binom));
            binom = binom * rat((m - k) as i64, (k + 1) as i64);
        }
        let scale = Rational::from_integer(1.into()) / (&fact * Rational::from_integer((1i64 << m).into()));
        coeffs.push(c.scale(&scale));
    }
    NuSeries::from_coeffs(coeffs, order)
}

fn momentum(s: &FedosovSetup, action: &LieAction) -> Result<QuantumHamiltonian, String> {
    let h = ok(quantum_hamiltonian(s, action, K, 4))?;
    ok(quantum_momentum_map(s, action, &h))
}

fn intertwines(eq: &Equivalence, pairs: &[(NuSeries, NuSeries)]) -> Outcome {
    for (f, g) in pairs {
        let lhs = ok(eq.apply(&ok(eq.source().star(f, g, K))?, K))?;
        let rhs = ok(eq.target().star(&ok(eq.apply(f, K))?, &ok(eq.apply(g, K))?, K))?;
        ensure(lhs == rhs, || format!("T(f*g) != Tf *' Tg for f = {f}, g = {g}"))?;
    }
    Ok(())
}

fn random_pairs(seed: u64, n: usize, max_deg: u32) -> Vec<(NuSeries, NuSeries)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (random_series(&mut rng, max_deg), random_series(&mut rng, max_deg)))
        .collect()
}

#[test]
fn criterion_01_weyl_kernel() {
    criterion(1, "Weyl kernel identities", || {
        let geometry = GeometryData::standard_flat(2);
        let alg = geometry.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = random_weyl(&mut rng);
            ensure(delta(&delta(&a)).is_zero(), || format!("delta^2 a != 0 for {a}"))?;
            ensure(delta_star(&delta_star(&a)).is_zero(), || format!("delta*^2 a != 0 for {a}"))?;
            let sigma_part = a.filter(|k| k.degs() == 0 && k.dega() == 0);
            let homotopy = delta(&delta_inv(&a)).add(&delta_inv(&delta(&a)));
            ensure(a.sub(&sigma_part) == homotopy, || format!("homotopy fails for {a}"))?;
            let b = random_weyl(&mut rng);
            let c = random_weyl(&mut rng);
            let l = ok(alg.product(&ok(alg.product(&a, &b))?, &c))?;
            let r = ok(alg.product(&a, &ok(alg.product(&b, &c))?))?;
            ensure(l == r, || format!("associativity fails for ({a}, {b}, {c})"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_02_flat_star_is_moyal() {
    criterion(2, "flat star product equals Moyal", || {
        let s = flat(exact_omega(None));
        ensure(s.r().is_zero(), || format!("r = {}", s.r()))?;
        for (f, g) in random_pairs(2, 50, 4) {
            let p = ok(s.star(&f, &g, K))?;
            let q = moyal2(&f.coeff(0), &g.coeff(0), K);
            ensure(p == q, || format!("f = {f}, g = {g}: {p} vs {q}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_03_curved_fedosov_core() {
    criterion(3, "curved Fedosov core", || {
        let s = curved();
        for a in cartan_samples(2, 3) {
            let a = a.with_valid(N_DEG);
            let d2 = ok(s.derivation(&ok(s.derivation(&a))?))?;
            ensure(d2.vanishes(), || format!("D^2 {a} = {d2}"))?;
        }
        let res = ok(s.r_residual())?;
        ensure(res.vanishes(), || format!("r residual {res}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_series(&mut rng, 3);
            let g = random_series(&mut rng, 3);
            let h = random_series(&mut rng, 3);
            let l = ok(s.star(&ok(s.star(&f, &g, K))?, &h, K))?;
            let r = ok(s.star(&f, &ok(s.star(&g, &h, K))?, K))?;
            ensure(l == r, || format!("associativity fails for ({f}, {g}, {h})"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_04_deformed_cartan() {
    criterion(4, "deformed Cartan formula", || {
        let samples = cartan_samples(2, 3);
        let flat0 = flat(exact_omega(None));
        let flat_omega = flat(exact_omega(Some(area())));
        // ∂₁ preserves Γ₁₁₁ = x²; the rotation does not, so it is skipped there.
        let cases: Vec<(&str, &FedosovSetup, PolyVectorField)> = vec![
            ("flat, translation", &flat0, translation().field(0).clone()),
            ("flat, rotation", &flat0, rotation().field(0).clone()),
            ("flat Omega, translation", &flat_omega, translation().field(0).clone()),
            ("flat Omega, rotation", &flat_omega, rotation().field(0).clone()),
        ];
        let curved = curved();
        let mut all = Vec::new();
        for (name, s, x) in cases.into_iter().chain([("curved, translation", &curved, translation().field(0).clone())]) {
            let res = ok(check_deformed_cartan(s, &x, &samples))?;
            let signs = common_signs(&res);
            ensure(signs.contains(&RESOLVED_SIGN), || format!("{name}: passing signs {signs:?}"))?;
            all.extend(res);
        }
        ensure(common_signs(&all) == vec![RESOLVED_SIGN], || format!("signs {:?}", common_signs(&all)))
    });
}

#[test]
fn criterion_05_momentum_maps() {
    criterion(5, "momentum maps and the central obstruction", || {
        let s = flat(exact_omega(None));
        let j = momentum(&s, &rotation())?;
        // dJ₀ = i_Xω = X¹dx² − X²dx¹ = −x²dx² − x¹dx¹ for X = (−x², x¹).
        let j0 = NuSeries::from_poly(r2().scale(&rat(-1, 2)), K);
        ensure(j.is_momentum_map && j.values == vec![j0], || format!("rotation J = {:?}", j.values))?;

        let two = LieAction::abelian(vec![PolyVectorField::coordinate(2, 0), PolyVectorField::coordinate(2, 1)]);
        let h = ok(quantum_hamiltonian(&s, &two, K, 4))?;
        match ok(solve_momentum_map(&s, &two, &h))? {
            MomentumOutcome::Map(m) => return Err(format!("translations gave a momentum map {:?}", m.values)),
            MomentumOutcome::Obstructed(o) => {
                // 0 = 𝐉([∂₁,∂₂]) must equal ω(∂₁,∂₂) = ω₁₂ = 1.
                ensure(o.pairs == vec![(0, 1)], || format!("pairs {:?}", o.pairs))?;
                ensure(o.rhs == vec![NuSeries::constant(rat(1, 1), K)], || format!("rhs {:?}", o.rhs))?;
                ensure(!o.residual.is_zero(), || "zero residual".into())?;
            }
        }
        ensure(
            matches!(quantum_momentum_map(&s, &two, &h), Err(Error::NoQuantumMomentumMap(_))),
            || "quantum_momentum_map did not report the obstruction".into(),
        )
    });
}

#[test]
fn criterion_06_taylor_formula() {
    criterion(6, "Taylor series of quantum momentum maps", || {
        let flat0 = flat(exact_omega(None));
        let flat_omega = flat(exact_omega(Some(area())));
        let curved = curved();
        let cases = [
            ("flat rotation", &flat0, rotation()),
            ("flat translation", &flat0, translation()),
            ("Omega translation", &flat_omega, translation()),
            ("Omega rotation", &flat_omega, rotation()),
            ("curved translation", &curved, translation()),
        ];
        let mut all = Vec::new();
        for (name, s, action) in cases {
            let j = momentum(s, &action)?;
            let res = ok(check_qham_taylor(s, &action, &j))?;
            ensure(common_signs(&res).contains(&RESOLVED_SIGN), || format!("{name}: {:?}", common_signs(&res)))?;
            all.extend(res);
        }
        // The Ω fixtures have r ≠ 0 and single out one sign.
        ensure(common_signs(&all) == vec![-1], || format!("resolved signs {:?}", common_signs(&all)))
    });
}

/// (source Ω, C, invariant action) for criteria 7 and 8.
fn equivalence_fixtures() -> Vec<(&'static str, FedosovSetup, FormSeries, LieAction)> {
    vec![
        (
            "Omega = 0, C = nu dx1",
            flat(exact_omega(None)),
            FormSeries::monomial(PolyForm::one_form(&[Poly::one(), Poly::zero()]), 1, NuSeries::EXACT),
            translation(),
        ),
        (
            // d(−x²dx¹) = dx¹∧dx², so the target is Ω′ = 0.
            "Omega = nu dx1^dx2, C = -nu x2 dx1",
            flat(exact_omega(Some(area()))),
            FormSeries::monomial(PolyForm::one_form(&[-x(1), Poly::zero()]), 1, NuSeries::EXACT),
            translation(),
        ),
        (
            "Omega = 0, C = nu (x1 dx2 - x2 dx1)",
            flat(exact_omega(None)),
            angular(Poly::one(), 1),
            rotation(),
        ),
    ]
}

#[test]
fn criterion_07_equivalences() {
    criterion(7, "equivalence transformations", || {
        for (n, (name, s, c, action)) in equivalence_fixtures().into_iter().enumerate() {
            let eq = ok(Equivalence::new(s, c))?;
            let res = ok(eq.derivation_residual())?;
            ensure(res.vanishes(), || format!("{name}: derivation residual {res}"))?;
            intertwines(&eq, &random_pairs(70 + n as u64, 20, 3)).map_err(|e| format!("{name}: {e}"))?;
            for (i, l) in eq.h_invariance(&action).iter().enumerate() {
                ensure(l.vanishes(), || format!("{name}: L_xi{} h = {l}", i + 1))?;
            }
        }
        let target_omega = ok(Equivalence::new(equivalence_fixtures()[1].1.clone(), equivalence_fixtures()[1].2.clone()))?;
        ensure(target_omega.target().omega().is_zero(), || "Omega - dC != 0".into())
    });
}

#[test]
fn criterion_08_key_identity() {
    criterion(8, "J + i_xi C = T_C J", || {
        for (name, s, c, action) in equivalence_fixtures() {
            let j = momentum(&s, &action)?;
            let eq = ok(Equivalence::new(s, c))?;
            for (i, r) in ok(eq.key_identity_residual(&action, &j))?.iter().enumerate() {
                ensure(r.is_zero(), || format!("{name}: xi_{} residual {r}", i + 1))?;
            }
        }
        // By hand: 𝐉(∂₁) = x² at Ω = 0 and i_{∂₁}(ν dx¹) = ν.
        let (_, s, c, action) = equivalence_fixtures().swap_remove(0);
        let j = momentum(&s, &action)?;
        let eq = ok(Equivalence::new(s, c))?;
        let tj = ok(eq.apply(&j.values[0], K))?;
        let expected = NuSeries::from_coeffs(vec![x(1), Poly::one()], K);
        ensure(tj == expected, || format!("T_C x2 = {tj}"))
    });
}

#[test]
fn criterion_09_classification_round_trip() {
    criterion(9, "classification round trip", || {
        let rot = rotation();
        let a = FedosovSetup::new(GeometryData::standard_flat(2), FormSeries::zero(2, K), N_DEG).unwrap();
        let ja = momentum(&a, &rot)?;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut coeff = || rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        // Rotation-invariant C and t: functions of r² times the angular form.
        let c0 = angular(Poly::constant(coeff()), 1)
            .add(&angular(&Poly::constant(coeff()) + &r2().scale(&coeff()), 2))
            .add(&angular(r2().pow(2).scale(&coeff()), 3));
        let t0 = NuSeries::from_coeffs(vec![Poly::zero(), r2().scale(&coeff()), r2().pow(2).scale(&coeff())], K);
        let eq = ok(Equivalence::new(a.clone(), c0))?;
        let b = eq.target().clone();
        let jb_value = ok(self_equivalence(&b, &t0, &ok(eq.apply(&ja.values[0], K))?, K))?;
        let jb = QuantumHamiltonian {
            values: vec![jb_value],
            is_momentum_map: true,
        };
        let bad = ok(hamiltonian_residuals(&b, &rot, &jb.values, K, 4))?;
        ensure(bad.is_empty(), || "transported J is not a quantum Hamiltonian".into())?;

        let cmp = ok(compare((&a, &ja), (&b, &jb), &rot, 6))?;
        ensure(cmp.verdict.status == ClassStatus::Zero, || format!("status {}", cmp.verdict.status))?;
        let w = cmp.verdict.witness.clone().ok_or("zero verdict without witness")?;
        let check = verify_witness(&cmp.relative, &rot, &w);
        ensure(check.passed(), || format!("witness check {:?}", check.first_failure()))?;
        let s = ok(EquivariantEquivalence::from_witness(&a, &w))?;
        let sj = ok(s.apply(&ja.values[0], K))?;
        ensure(sj == jb.values[0], || format!("S J_A = {sj}"))?;
        for (f, g) in random_pairs(90, 10, 3) {
            let lhs = ok(s.apply(&ok(a.star(&f, &g, K))?, K))?;
            let rhs = ok(b.star(&ok(s.apply(&f, K))?, &ok(s.apply(&g, K))?, K))?;
            ensure(lhs == rhs, || format!("S does not intertwine on ({f}, {g})"))?;
        }

        // 𝐉_B + ν: ℒ_X t has no constant term for X vanishing at 0, so the
        // constant −1 in α(ξ) at ν¹ cannot be matched.
        let jc = QuantumHamiltonian {
            values: vec![jb.values[0].add(&NuSeries::monomial(Poly::one(), 1, K))],
            is_momentum_map: true,
        };
        let cmp = ok(compare((&a, &ja), (&b, &jc), &rot, 6))?;
        ensure(cmp.verdict.status == ClassStatus::Nonzero, || format!("status {}", cmp.verdict.status))?;
        let o = cmp.verdict.obstruction.ok_or("nonzero verdict without certificate")?;
        ensure(o.stage == Stage::Constants && o.nu_power == 1, || format!("{o}"))?;
        ensure(
            o.combination.iter().all(|(_, m, _)| m.is_constant()) && !o.residual.is_zero(),
            || format!("certificate {o}"),
        )
    });
}

#[test]
fn criterion_10_cohomology() {
    criterion(10, "equivariant cohomology", || {
        let rot = rotation();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..5 {
            let f = NuSeries::from_coeffs(
                vec![r2().scale(&rat(rng.gen_range(-3..=3), 1)), r2().pow(2).scale(&rat(rng.gen_range(-3..=3), 2))],
                2,
            );
            let a0 = ok(EquivariantCochain::from_form(FormSeries::from_functions(2, &f), 0, 1))?;
            let d1 = ok(d_equivariant(&a0, &rot))?;
            ensure(ok(d_equivariant(&d1, &rot))?.is_zero(), || "d_g^2 on degree 0".into())?;
            let c = angular(r2().scale(&rat(rng.gen_range(-3..=3), 1)), 1).add(&angular(Poly::one(), 2));
            let a1 = ok(EquivariantCochain::from_form(c, 1, 1))?;
            let d2 = ok(d_equivariant(&a1, &rot))?;
            ensure(ok(d_equivariant(&d2, &rot))?.is_zero(), || "d_g^2 on degree 1".into())?;
        }

        let flat0 = flat(exact_omega(None));
        let flat_omega = flat(exact_omega(Some(area())));
        let curved = curved();
        for (name, s, action) in [
            ("flat rotation", &flat0, rotation()),
            ("flat translation", &flat0, translation()),
            ("Omega translation", &flat_omega, translation()),
            ("Omega rotation", &flat_omega, rotation()),
            ("curved translation", &curved, translation()),
        ] {
            let j = momentum(s, &action)?;
            let alpha = ok(characteristic_class(s, &j))?.with_order(K);
            ensure(ok(d_equivariant(&alpha, &action))?.is_zero(), || format!("{name}: not closed"))?;
            ensure(check_membership(&alpha, &action).passed(), || format!("{name}: not in the Cartan complex"))?;
        }

        // Implication chain on verdict fixtures: equivariant zero ⇒ invariant
        // zero (the witness C is an invariant primitive) ⇒ plain zero.
        let mut verdicts = 0;
        for (_, s, c, action) in equivalence_fixtures() {
            let ja = momentum(&s, &action)?;
            let eq = ok(Equivalence::new(s.clone(), c))?;
            let b = eq.target().clone();
            let jb = QuantumHamiltonian {
                values: ja.values.iter().map(|v| eq.apply(v, K)).collect::<fedosov_engine::Result<_>>().map_err(|e| e.to_string())?,
                is_momentum_map: true,
            };
            let rel = ok(fedosov_engine::cohomology::relative_class((&s, &ja), (&b, &jb), &action))?.with_order(K);
            let v = ok(decide_vanishing(&rel, &action, 4))?;
            let (inv, plain) = project_classes(&rel);
            if v.status == ClassStatus::Zero {
                verdicts += 1;
                let w = v.witness.ok_or("zero verdict without witness")?;
                let invariant = action.fields().iter().all(|x| w.c.lie(x).is_zero());
                ensure(invariant && w.c.d() == inv, || "witness C is not an invariant primitive".into())?;
                let radial = ok(plain.poincare_primitive())?;
                ensure(radial.d() == plain, || "plain class has no primitive".into())?;
            }
        }
        ensure(verdicts == 3, || format!("{verdicts} of 3 fixtures decided zero"))
    });
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn criterion_11_cli_contract() {
    criterion(11, "CLI golden reports and exit codes", || {
        let cases = [
            ("star", "flat_star"),
            ("momentum", "translations"),
            ("class", "rotation"),
            ("compare", "rotation_transport"),
            ("verify", "omega_translation"),
        ];
        for (cmd, name) in cases {
            let config = manifest().join(format!("fixtures/{name}.json"));
            let out = Command::new(env!("CARGO_BIN_EXE_fedosov"))
                .args([cmd, "--config", config.to_str().unwrap()])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(0), || format!("{cmd} {name}: exit {:?}", out.status.code()))?;
            let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
            v.as_object_mut().unwrap().remove("timing").ok_or("no timing field")?;
            let mut report = serde_json::to_string_pretty(&v).unwrap();
            report.push('\n');
            let golden = std::fs::read_to_string(manifest().join(format!("tests/golden/{cmd}_{name}.json")))
                .map_err(|e| e.to_string())?;
            ensure(report == golden, || format!("{cmd} {name}: report differs from golden"))?;
        }
        let code = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_fedosov")).args(args).output().unwrap().status.code();
        ensure(code(&["star", "--config", "/nonexistent.json"]) == Some(2), || "missing config".into())?;
        let translations = manifest().join("fixtures/translations.json");
        ensure(
            code(&["class", "--config", translations.to_str().unwrap()]) == Some(1),
            || "obstructed class".into(),
        )
    });
}
