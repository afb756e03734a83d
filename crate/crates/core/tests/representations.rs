mod common;

use std::collections::BTreeMap;

use braidforge::fixtures;
use braidforge::representations::{
    classify_theta_component, eval_word, haar_unitary, locally_abelian_solve, residuals, solve_representation,
    verify_representation, CMatrix, SolveOptions, ThetaRoles, UnitaryAssignment,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn diag2(a: Complex64, b: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, c(0., 0.), c(0., 0.), b])
}

fn swap() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

/// Minimal four-particle Θ presentation with matrices for (gamma, alpha1, alpha2).
fn theta_assignment(g: CMatrix, a1: CMatrix, a2: CMatrix) -> (braidforge::FPGroup, UnitaryAssignment) {
    let (_, m) = common::minimal(fixtures::THETA, 4);
    let p = m.group().clone();
    let r = ThetaRoles::default();
    let a = UnitaryAssignment::new(vec![r.gamma, r.alpha1, r.alpha2], vec![g, a1, a2]).unwrap();
    (p, a)
}

#[test]
fn minimal_generators_carry_role_names() {
    let (_, m) = common::minimal(fixtures::THETA, 4);
    let r = ThetaRoles::default();
    let mut want = vec![r.gamma, r.alpha1, r.alpha2];
    let mut got = m.group().generators.clone();
    want.sort();
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn identity_rotation_satisfies_relator() {
    let id = CMatrix::identity(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (p, a) = theta_assignment(id, haar_unitary(2, &mut rng), haar_unitary(2, &mut rng));
    let mats = a.aligned(&p).unwrap();
    assert!((eval_word(&p.relators[0], &mats).unwrap() - CMatrix::identity(2, 2)).norm() < 1e-13);
}

#[test]
fn swap_witness_and_hadamard_failure() {
    let g = diag2(Complex64::from_polar(1., 0.4), Complex64::from_polar(1., -1.3));
    let (p, a) = theta_assignment(g, swap(), CMatrix::identity(2, 2));
    let r = verify_representation(&p, &a, 1e-12).unwrap();
    assert!(r.pass, "{r:?}");
    let h = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]) * c(0.5f64.sqrt(), 0.);
    let (p, a) = theta_assignment(diag2(c(1., 0.), c(0., 1.)), h, CMatrix::identity(2, 2));
    let r = verify_representation(&p, &a, 1e-8).unwrap();
    assert!(!r.pass && r.max_deviation > 0.1, "{r:?}");
}

#[test]
fn free_theta_two_passes() {
    let (_, m) = common::minimal(fixtures::THETA, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mats = (0..3).map(|_| haar_unitary(3, &mut rng)).collect();
    let a = UnitaryAssignment::new(m.group().generators.clone(), mats).unwrap();
    let r = verify_representation(m.group(), &a, 0.0).unwrap();
    assert!(r.pass && r.deviations.is_empty());
}

#[test]
fn gauge_and_centre_invariance() {
    let (_, m) = common::minimal(fixtures::THETA, 4);
    let p = m.group();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let mats: Vec<CMatrix> = (0..3).map(|_| haar_unitary(2, &mut rng)).collect();
        let base = residuals(p, &mats, 0.0).unwrap();
        let v = haar_unitary(2, &mut rng);
        let conj: Vec<CMatrix> = mats.iter().map(|u| &v * u * v.adjoint()).collect();
        let gauged = residuals(p, &conj, 0.0).unwrap();
        let mut scaled = mats.clone();
        let which = rng.random_range(0..3);
        scaled[which] *= Complex64::from_polar(1.0, rng.random_range(0.0..6.3));
        let centred = residuals(p, &scaled, 0.0).unwrap();
        for i in 0..base.deviations.len() {
            assert!((base.deviations[i] - gauged.deviations[i]).abs() < 1e-12);
            assert!((base.deviations[i] - centred.deviations[i]).abs() < 1e-12);
        }
    }
}

#[test]
fn abelian_statistics_always_exist() {
    let (_, m) = common::minimal(fixtures::THETA, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let mats: Vec<CMatrix> =
            (0..3).map(|_| CMatrix::from_element(1, 1, Complex64::from_polar(1.0, rng.random_range(0.0..6.3)))).collect();
        assert!(residuals(m.group(), &mats, 1e-12).unwrap().pass);
    }
}

#[test]
fn solver_finds_theta_point() {
    let (_, m) = common::minimal(fixtures::THETA, 4);
    let out = solve_representation(m.group(), 2, &SolveOptions::default()).unwrap();
    assert!(out.report.max_deviation < 1e-8);
    assert!(out.assignment.unitarity_defect() < 1e-10);
    let again = verify_representation(m.group(), &out.assignment, 1e-8).unwrap();
    assert!(again.pass);
}

#[test]
fn component_witnesses() {
    let id = CMatrix::identity(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let roles = ThetaRoles::default();
    let scalar = id.clone() * Complex64::from_polar(1.0, 0.7);
    let (p, a) = theta_assignment(scalar, haar_unitary(2, &mut rng), haar_unitary(2, &mut rng));
    assert_eq!(classify_theta_component(&p, &a, &roles, 1e-10).unwrap().to_string(), "M_0");
    let g = diag2(c(0., 1.), c(0., -1.));
    let (p, a) = theta_assignment(g.clone(), id.clone(), id.clone());
    assert_eq!(classify_theta_component(&p, &a, &roles, 1e-12).unwrap().to_string(), "M_id");
    let (p, a) = theta_assignment(g, swap(), id);
    assert_eq!(classify_theta_component(&p, &a, &roles, 1e-12).unwrap().to_string(), "M_transposition");
}

#[test]
fn locally_abelian_theta() {
    let pp = common::physical(fixtures::THETA, 4, fixtures::THETA_LOOPS_N4);
    let la = locally_abelian_solve(&pp, 2).unwrap();
    let shown: Vec<String> = la.constraints.iter().map(|x| x.to_string()).collect();
    assert_eq!(
        shown,
        vec!["phi(gamma) - phi(gamma') = 0 mod 2pi", "phi(gamma') - phi(gamma'') = 0 mod 2pi"]
    );
    assert_eq!(la.trivial_relators, vec![0]);
    assert!(la.residual_equations.is_empty());
    assert_eq!(la.unconstrained(), vec!["alpha_U", "alpha_D"]);

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let free = UnitaryAssignment::new(
        vec!["alpha_U".into(), "alpha_D".into()],
        vec![haar_unitary(2, &mut rng), haar_unitary(2, &mut rng)],
    )
    .unwrap();
    let phi: BTreeMap<String, f64> = ["gamma", "gamma'", "gamma''"].iter().map(|n| (n.to_string(), 1.1)).collect();
    assert!(la.verify(&phi, &free, 1e-12).unwrap().pass);
    let mut off = phi.clone();
    off.insert("gamma''".into(), 0.2);
    assert!(!la.verify(&off, &free, 1e-6).unwrap().pass);
}

#[test]
fn free_physical_presentation_has_no_constraints() {
    let pp = common::physical(fixtures::THETA, 2, fixtures::THETA_LOOPS_N2);
    let la = locally_abelian_solve(&pp, 3).unwrap();
    assert!(la.constraints.is_empty());
    assert!(la.residual_equations.is_empty());
}
