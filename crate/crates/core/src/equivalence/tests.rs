use super::*;
use crate::algebra::{rat, Poly};
use crate::fedosov::default_n_deg;
use crate::geometry::{GeometryData, PolyForm, PolyVectorField};
use crate::symmetry::{quantum_hamiltonian, LieAction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(i: usize) -> Poly {
    Poly::var(i)
}

fn one_form(order: usize, k: usize, comps: [Poly; 2]) -> FormSeries {
    FormSeries::monomial(PolyForm::one_form(&comps), k, order)
}

fn flat(order: usize) -> FedosovSetup {
    FedosovSetup::new(GeometryData::standard_flat(2), FormSeries::zero(2, order), default_n_deg(order)).unwrap()
}

fn curved(order: usize) -> FedosovSetup {
    let mut gamma = vec![vec![vec![Poly::zero(); 2]; 2]; 2];
    gamma[0][0][0] = x(1);
    let g = GeometryData::new(GeometryData::standard_omega(2), gamma).unwrap();
    FedosovSetup::new(g, FormSeries::zero(2, order), default_n_deg(order)).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero();
    for m in Poly::monomials_up_to(2, 3) {
        if rng.gen_bool(0.4) {
            p += &m.scale(&rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        }
    }
    p
}

#[test]
fn zero_c_is_identity() {
    let eq = Equivalence::new(flat(2), FormSeries::zero(2, 2)).unwrap();
    assert!(eq.h().is_zero());
    let f = NuSeries::from_poly(&x(0).pow(2) * &x(1), 2);
    assert_eq!(eq.apply(&f, 2).unwrap(), f);
}

#[test]
fn closed_c_on_flat_data() {
    let eq = Equivalence::new(flat(2), one_form(2, 1, [Poly::one(), Poly::zero()])).unwrap();
    assert!(eq.h_residual().unwrap().vanishes());
    assert!(eq.derivation_residual().unwrap().vanishes());
    let rep = eq.h().degree_report();
    assert_eq!((rep.dega_max, rep.deg_min), (0, Some(3)));
    assert!(sigma(eq.h()).unwrap().is_zero());
    assert_eq!(eq.apply(&NuSeries::constant(rat(1, 1), 2), 2).unwrap(), NuSeries::constant(rat(1, 1), 2));
}

#[test]
fn intertwines_products_with_nonclosed_c() {
    // C = ν x¹dx², so Ω′ = −ν dx¹∧dx².
    let eq = Equivalence::new(flat(2), one_form(2, 1, [Poly::zero(), x(0)])).unwrap();
    assert!(!eq.target().r().is_zero());
    assert!(eq.derivation_residual().unwrap().vanishes());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let f = NuSeries::from_poly(random_poly(&mut rng), 2);
        let g = NuSeries::from_poly(random_poly(&mut rng), 2);
        let lhs = eq.apply(&eq.source().star(&f, &g, 2).unwrap(), 2).unwrap();
        let rhs = eq
            .target()
            .star(&eq.apply(&f, 2).unwrap(), &eq.apply(&g, 2).unwrap(), 2)
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn curved_equivalence_identities() {
    let eq = Equivalence::new(curved(2), one_form(2, 1, [x(1), Poly::zero()])).unwrap();
    assert!(eq.h_residual().unwrap().vanishes());
    assert!(eq.derivation_residual().unwrap().vanishes());
    let f = NuSeries::from_poly(&x(0) * &x(1), 2);
    let g = NuSeries::from_poly(x(0).pow(2), 2);
    let lhs = eq.apply(&eq.source().star(&f, &g, 2).unwrap(), 2).unwrap();
    let rhs = eq.target().star(&eq.apply(&f, 2).unwrap(), &eq.apply(&g, 2).unwrap(), 2).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn automorphism_and_intertwining_on_samples() {
    let eq = Equivalence::new(flat(1), one_form(1, 1, [Poly::zero(), x(0)])).unwrap();
    let alg = eq.source().geometry().algebra();
    let a = WeylElement::monomial(2, 0, crate::algebra::unit(0), 0, x(1));
    let b = WeylElement::monomial(2, 0, crate::algebra::unit(1), 0b01, Poly::one());
    let lhs = eq.automorphism(&alg.product(&a, &b).unwrap()).unwrap();
    let rhs = alg
        .product(&eq.automorphism(&a).unwrap(), &eq.automorphism(&b).unwrap())
        .unwrap();
    assert!(lhs.sub(&rhs).vanishes());
    assert!(eq.automorphism_inverse(&eq.automorphism(&a).unwrap()).unwrap().sub(&a).vanishes());
    for s in [a, b] {
        assert!(eq.intertwining_residual(&s).unwrap().vanishes());
    }
}

#[test]
fn key_identity_for_translation() {
    let setup = flat(2);
    let tr = LieAction::abelian(vec![PolyVectorField::coordinate(2, 0)]);
    let ham = quantum_hamiltonian(&setup, &tr, 2, 3).unwrap();
    let eq = Equivalence::new(setup, one_form(2, 1, [Poly::one(), Poly::zero()])).unwrap();
    let tj = eq.apply(&ham.values[0], 2).unwrap();
    assert_eq!(tj, ham.values[0].add(&NuSeries::monomial(Poly::one(), 1, 2)));
    assert!(eq.key_identity_residual(&tr, &ham).unwrap().iter().all(NuSeries::is_zero));

    // i_{∂₁}(ν dx²) = 0
    let eq = Equivalence::new(flat(2), one_form(2, 1, [Poly::zero(), Poly::one()])).unwrap();
    assert_eq!(eq.apply(&ham.values[0], 2).unwrap(), ham.values[0]);
}

#[test]
fn h_is_invariant_for_invariant_data() {
    let tr = LieAction::abelian(vec![PolyVectorField::coordinate(2, 0), PolyVectorField::coordinate(2, 1)]);
    let eq = Equivalence::new(flat(2), one_form(2, 1, [Poly::constant(rat(2, 1)), Poly::constant(rat(-1, 3))])).unwrap();
    assert!(eq.h_invariance(&tr).iter().all(WeylElement::vanishes));

    let rot = LieAction::abelian(vec![PolyVectorField::new(vec![-x(1), x(0)])]);
    let eq = Equivalence::new(flat(2), one_form(2, 1, [-x(1), x(0)])).unwrap();
    assert!(!eq.h().is_zero());
    assert!(eq.h_invariance(&rot).iter().all(WeylElement::vanishes));
    let ham = quantum_hamiltonian(eq.source(), &rot, 2, 3).unwrap();
    assert!(eq.key_identity_residual(&rot, &ham).unwrap().iter().all(NuSeries::is_zero));
}

#[test]
fn self_equivalence_shifts_hamiltonian_by_constant() {
    let setup = flat(3);
    let tr = LieAction::abelian(vec![PolyVectorField::coordinate(2, 0)]);
    let ham = quantum_hamiltonian(&setup, &tr, 3, 3).unwrap();
    let t = NuSeries::monomial(x(0), 1, 3);
    let a = self_equivalence(&setup, &t, &ham.values[0], 3).unwrap();
    // i_{∂₁} d(νx¹) = ν
    assert_eq!(a, ham.values[0].add(&NuSeries::monomial(Poly::one(), 1, 3)));
    assert_eq!(self_equivalence(&setup, &NuSeries::zero(3), &ham.values[0], 3).unwrap(), ham.values[0]);
}

#[test]
fn self_equivalence_is_automorphism() {
    let setup = curved(2);
    let t = NuSeries::from_coeffs(vec![Poly::zero(), x(0).pow(2), x(1)], 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let f = NuSeries::from_poly(random_poly(&mut rng), 2);
        let g = NuSeries::from_poly(random_poly(&mut rng), 2);
        let lhs = self_equivalence(&setup, &t, &setup.star(&f, &g, 2).unwrap(), 2).unwrap();
        let rhs = setup
            .star(
                &self_equivalence(&setup, &t, &f, 2).unwrap(),
                &self_equivalence(&setup, &t, &g, 2).unwrap(),
                2,
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn rejects_bad_c() {
    assert!(matches!(
        Equivalence::new(flat(1), one_form(1, 0, [Poly::one(), Poly::zero()])),
        Err(Error::NuZeroTerm(_))
    ));
    let target = FedosovSetup::new(
        GeometryData::standard_flat(2),
        FormSeries::monomial(PolyForm::monomial(2, &[0, 1], Poly::one()), 1, 1),
        default_n_deg(1),
    )
    .unwrap();
    assert!(matches!(
        Equivalence::between(flat(1), target, FormSeries::zero(2, 1)),
        Err(Error::NotClosed(_))
    ));
}
