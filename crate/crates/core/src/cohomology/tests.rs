use super::*;
use num_traits::Zero;
use crate::algebra::{rat, NuSeries, Poly};
use crate::equivalence::{self_equivalence, Equivalence};
use crate::fedosov::{default_n_deg, FedosovSetup};
use crate::geometry::{FormSeries, GeometryData, PolyForm, PolyVectorField};
use crate::symmetry::{hamiltonian_residuals, quantum_hamiltonian, quantum_momentum_map, LieAction, QuantumHamiltonian};

fn x(i: usize) -> Poly {
    Poly::var(i)
}

fn rotation() -> LieAction {
    LieAction::abelian(vec![PolyVectorField::new(vec![-x(1), x(0)])])
}

fn translation() -> LieAction {
    LieAction::abelian(vec![PolyVectorField::coordinate(2, 0)])
}

fn r2() -> Poly {
    &x(0).pow(2) + &x(1).pow(2)
}

/// ν^k f (x¹dx² − x²dx¹), rotation invariant when f is.
fn angular(f: Poly, k: usize, order: usize) -> FormSeries {
    FormSeries::monomial(PolyForm::one_form(&[-(&f * &x(1)), &f * &x(0)]), k, order)
}

fn setup(omega: FormSeries, order: usize) -> FedosovSetup {
    FedosovSetup::new(GeometryData::standard_flat(2), omega, default_n_deg(order)).unwrap()
}

fn momentum(s: &FedosovSetup, action: &LieAction, order: usize) -> QuantumHamiltonian {
    let h = quantum_hamiltonian(s, action, order, 3).unwrap();
    quantum_momentum_map(s, action, &h).unwrap()
}

#[test]
fn characteristic_class_of_rotation_is_omega_minus_j0() {
    let s = setup(FormSeries::zero(2, 3), 3);
    let j = momentum(&s, &rotation(), 3);
    let alpha = characteristic_class(&s, &j).unwrap();
    let omega = FormSeries::monomial(s.geometry().omega_form(), 0, 3);
    assert_eq!(alpha.form_part(), &omega);
    assert_eq!(alpha.lin_part()[0].to_functions(), NuSeries::from_poly(r2().scale(&rat(1, 2)), 3));
    assert!(d_equivariant(&alpha, &rotation()).unwrap().is_zero());
    assert!(check_membership(&alpha, &rotation()).passed());
    let (inv, plain) = project_classes(&alpha);
    assert_eq!((inv, plain), (omega.clone(), omega));
}

#[test]
fn characteristic_class_with_omega() {
    let omega = FormSeries::monomial(PolyForm::monomial(2, &[0, 1], Poly::one()), 1, 2);
    let s = setup(omega.clone(), 2);
    let j = momentum(&s, &rotation(), 2);
    let alpha = characteristic_class(&s, &j).unwrap();
    assert_eq!(alpha.form_part(), &FormSeries::monomial(s.geometry().omega_form(), 0, 2).add(&omega));
    assert!(d_equivariant(&alpha, &rotation()).unwrap().is_zero());
    let not_mm = QuantumHamiltonian {
        is_momentum_map: false,
        ..j
    };
    assert!(characteristic_class(&s, &not_mm).is_err());
}

#[test]
fn d_squared_vanishes_on_invariant_data() {
    let rot = rotation();
    // degree 0: an invariant function
    let f = FormSeries::from_functions(2, &NuSeries::from_coeffs(vec![r2(), r2().pow(2)], 2));
    let a0 = EquivariantCochain::from_form(f, 0, 1).unwrap();
    let d1 = d_equivariant(&a0, &rot).unwrap();
    assert!(d_equivariant(&d1, &rot).unwrap().is_zero());
    // degree 1: an invariant 1-form
    let c = angular(r2(), 1, 2).add(&angular(Poly::one(), 2, 2));
    let a1 = EquivariantCochain::from_form(c, 1, 1).unwrap();
    let d2 = d_equivariant(&a1, &rot).unwrap();
    assert!(!d2.is_zero());
    assert!(d_equivariant(&d2, &rot).unwrap().is_zero());
    // degree 3 input is out of range
    let d3 = d_equivariant(&d2, &rot).unwrap();
    assert!(d_equivariant(&d3, &rot).is_err());
}

#[test]
fn membership_detects_broken_bracket_condition() {
    let tr = LieAction::abelian(vec![PolyVectorField::coordinate(2, 0), PolyVectorField::coordinate(2, 1)]);
    let s = setup(FormSeries::zero(2, 1), 1);
    let h = quantum_hamiltonian(&s, &tr, 1, 3).unwrap();
    let omega = FormSeries::monomial(s.geometry().omega_form(), 0, 1);
    let alpha = EquivariantCochain::from_form_and_functions(omega, &h.values).unwrap();
    let report = check_membership(&alpha, &tr);
    let fail = report.first_failure().unwrap();
    assert_eq!(fail.name, "equivariance");
    assert_eq!(fail.witness.as_deref(), Some("(xi_1, xi_2)"));
    assert!(check_membership(&EquivariantCochain::zero(2, 2, 2, 1), &tr).passed());
}

#[test]
fn relative_class_cases() {
    let rot = rotation();
    let s = setup(FormSeries::zero(2, 2), 2);
    let j = momentum(&s, &rot, 2);
    assert!(relative_class((&s, &j), (&s, &j), &rot).unwrap().is_zero());

    let shifted = QuantumHamiltonian {
        values: vec![j.values[0].add(&NuSeries::monomial(Poly::one(), 1, 2))],
        is_momentum_map: true,
    };
    let rel = relative_class((&s, &j), (&s, &shifted), &rot).unwrap();
    assert!(rel.form_part().is_zero());
    assert_eq!(rel.lin_part()[0].to_functions(), NuSeries::monomial(Poly::from_int(-1), 1, 2));

    let omega = FormSeries::monomial(PolyForm::monomial(2, &[0, 1], Poly::one()), 1, 2);
    let sb = setup(omega.clone(), 2);
    let jb = momentum(&sb, &rot, 2);
    let rel = relative_class((&s, &j), (&sb, &jb), &rot).unwrap();
    assert_eq!(rel.form_part(), &omega);
    assert!(!rel.lin_part()[0].is_zero());
}

#[test]
fn coboundary_is_decided_zero_with_verified_witness() {
    let rot = rotation();
    let c = angular(r2(), 1, 2).add(&angular(Poly::from_int(3), 2, 2));
    let alpha = d_equivariant(&EquivariantCochain::from_form(c, 1, 1).unwrap(), &rot).unwrap();
    let v = decide_vanishing(&alpha, &rot, 4).unwrap();
    assert_eq!(v.status, ClassStatus::Zero);
    assert!(verify_witness(&alpha, &rot, v.witness.as_ref().unwrap()).passed());
}

#[test]
fn trivial_action_plain_class_vanishes() {
    let omega = FormSeries::monomial(PolyForm::monomial(2, &[0, 1], Poly::one()), 1, 2);
    let alpha = EquivariantCochain::from_form(omega, 2, 0).unwrap();
    let trivial = LieAction::trivial();
    let v = decide_vanishing(&alpha, &trivial, 2).unwrap();
    assert_eq!(v.status, ClassStatus::Zero);
    let w = v.witness.unwrap();
    // radial primitive of dx¹∧dx²
    let expected = PolyForm::one_form(&[-x(1), x(0)]).scale(&rat(1, 2));
    assert_eq!(w.c.coeff(1), expected);
    assert!(verify_witness(&alpha, &trivial, &w).passed());
}

#[test]
fn constant_shift_under_rotation_is_obstructed() {
    let rot = rotation();
    let lin = vec![FormSeries::from_functions(2, &NuSeries::monomial(Poly::from_int(5), 1, 2))];
    let alpha = EquivariantCochain::new(2, FormSeries::zero(2, 2), lin).unwrap();
    let v = decide_vanishing(&alpha, &rot, 4).unwrap();
    assert_eq!(v.status, ClassStatus::Nonzero);
    let o = v.obstruction.unwrap();
    assert_eq!((o.stage, o.nu_power), (Stage::Constants, 1));
    assert!(!o.residual.is_zero());
    assert!(v.witness.is_none());
}

#[test]
fn translation_needs_invariant_correction_of_radial_primitive() {
    // ℒ_{∂₁} of the radial primitive of dx¹∧dx² is ½dx² ≠ 0.
    let tr = translation();
    let a = setup(FormSeries::zero(2, 2), 2);
    let ja = momentum(&a, &tr, 2);
    let omega = FormSeries::monomial(PolyForm::monomial(2, &[0, 1], Poly::one()), 1, 2);
    let b = setup(omega, 2);
    let jb = momentum(&b, &tr, 2);
    let cmp = compare((&a, &ja), (&b, &jb), &tr, 3).unwrap();
    assert_eq!(cmp.verdict.status, ClassStatus::Zero);
    let w = cmp.verdict.witness.unwrap();
    assert!(verify_witness(&cmp.relative, &tr, &w).passed());
    let s = EquivariantEquivalence::from_witness(&a, &w).unwrap();
    assert_eq!(s.apply(&ja.values[0], 2).unwrap(), jb.values[0]);
}

#[test]
fn classification_round_trip_for_rotation() {
    let rot = rotation();
    let order = 3;
    let a = setup(FormSeries::zero(2, order), order);
    let ja = momentum(&a, &rot, order);

    // B = exp{(1/ν)ad(t₀)} ∘ T_{C₀} applied to A, with invariant C₀ and t₀.
    let c0 = angular(Poly::from_int(2), 1, order).add(&angular(r2(), 2, order));
    let t0 = NuSeries::monomial(r2(), 1, order);
    let eq = Equivalence::new(a.clone(), c0).unwrap();
    let b = eq.target().clone();
    let jb_val = self_equivalence(&b, &t0, &eq.apply(&ja.values[0], order).unwrap(), order).unwrap();
    let jb = QuantumHamiltonian {
        values: vec![jb_val],
        is_momentum_map: true,
    };
    assert!(hamiltonian_residuals(&b, &rot, &jb.values, order, 3).unwrap().is_empty());

    let cmp = compare((&a, &ja), (&b, &jb), &rot, 4).unwrap();
    assert_eq!(cmp.verdict.status, ClassStatus::Zero);
    let w = cmp.verdict.witness.clone().unwrap();
    assert!(verify_witness(&cmp.relative, &rot, &w).passed());
    let s = EquivariantEquivalence::from_witness(&a, &w).unwrap();
    assert_eq!(s.apply(&ja.values[0], order).unwrap(), jb.values[0]);
    let pairs = [(x(0), x(1)), (&x(0) * &x(1), x(0).pow(2)), (x(1).pow(3), &x(0) + &x(1))];
    for (f, g) in pairs {
        let f = NuSeries::from_poly(f, order);
        let g = NuSeries::from_poly(g, order);
        let lhs = s.apply(&a.star(&f, &g, order).unwrap(), order).unwrap();
        let rhs = b
            .star(&s.apply(&f, order).unwrap(), &s.apply(&g, order).unwrap(), order)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    // 𝐉_B + ν is not reachable.
    let jc = QuantumHamiltonian {
        values: vec![jb.values[0].add(&NuSeries::monomial(Poly::one(), 1, order))],
        is_momentum_map: true,
    };
    let cmp = compare((&a, &ja), (&b, &jc), &rot, 4).unwrap();
    assert_eq!(cmp.verdict.status, ClassStatus::Nonzero);
}

#[test]
fn self_comparison_has_zero_witness() {
    let rot = rotation();
    let s = setup(FormSeries::zero(2, 2), 2);
    let j = momentum(&s, &rot, 2);
    let cmp = compare((&s, &j), (&s, &j), &rot, 4).unwrap();
    let w = cmp.verdict.witness.unwrap();
    assert!(w.c.is_zero() && w.t.is_zero());
}
