use std::f64::consts::PI;

use matspec::gammabeta::*;
use matspec::verify::oracle;
use matspec::{EvalConfig, MatError, SquareMatrix, C64};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn s(v: f64) -> SquareMatrix {
    SquareMatrix::real_scalar(1, v)
}

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn value(m: &SquareMatrix) -> C64 {
    m.get(0, 0)
}

fn near(got: C64, want: C64, tol: f64) {
    let err = (got - want).norm() / want.norm().max(1.0);
    assert!(err <= tol, "got {got}, want {want}, relative error {err:e}");
}

/// A 2×2 commuting family: diagonal in a fixed non-orthogonal basis.
fn conj(d: &[f64]) -> SquareMatrix {
    let p = SquareMatrix::from_real_rows(&[vec![1.0, 0.4], vec![-0.3, 1.2]]).unwrap();
    p.matmul(&SquareMatrix::real_diag(d)).matmul(&p.inverse().unwrap())
}

fn params(a: SquareMatrix, b: SquareMatrix, x: SquareMatrix, y: SquareMatrix, z: Option<SquareMatrix>) -> GammaBetaParams {
    GammaBetaParams { a, b, x, y, z }
}

#[test]
fn gamma_matrix_values() {
    let r = gamma_matrix(&SquareMatrix::identity(2), &cfg()).unwrap();
    assert!(r.converged && r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-11);
    let r = gamma_matrix(&SquareMatrix::real_diag(&[1.0, 2.0]), &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-11);
    near(value(&gamma_matrix(&s(0.5), &cfg()).unwrap().value), c(PI.sqrt()), 1e-11);
}

#[test]
fn gamma_reciprocal_values() {
    let r = gamma_reciprocal(&SquareMatrix::identity(2), 0, &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-11);
    let r = gamma_reciprocal(&SquareMatrix::real_diag(&[1.0, 2.0]), 1, &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-11);
    // Γ(−1/2) = −2√π.
    near(value(&gamma_reciprocal(&s(-0.5), 1, &cfg()).unwrap().value), c(-1.0 / (2.0 * PI.sqrt())), 1e-11);
    assert!(matches!(gamma_reciprocal(&s(-1.0), 2, &cfg()), Err(MatError::ShiftSingular { k: 1 })));
}

#[test]
fn pochhammer_from_gamma() {
    let r = pochhammer_via_gamma(&SquareMatrix::identity(2), 0, &cfg()).unwrap();
    assert_eq!(r.value, SquareMatrix::identity(2));
    let r = pochhammer_via_gamma(&SquareMatrix::identity(2), 4, &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::real_scalar(2, 24.0)) < 1e-11);
    let r = pochhammer_via_gamma(&SquareMatrix::real_diag(&[0.5, 2.0]), 3, &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::real_diag(&[1.875, 24.0])) < 1e-11);
}

#[test]
fn beta_matrix_values_in_every_form() {
    for form in [BetaForm::Unit, BetaForm::Halfline, BetaForm::GammaProduct] {
        let id = SquareMatrix::identity(2);
        assert!(beta_matrix(&id, &id, form, &cfg()).unwrap().value.relative_distance(&id) < 1e-10, "{form:?}");
        near(value(&beta_matrix(&s(2.0), &s(3.0), form, &cfg()).unwrap().value), c(1.0 / 12.0), 1e-10);
        near(value(&beta_matrix(&s(0.5), &s(0.5), form, &cfg()).unwrap().value), c(PI), 1e-9);
    }
}

#[test]
fn beta_forms_agree_on_a_commuting_pair() {
    let (a, b) = (conj(&[0.8, 1.7]), conj(&[1.3, 0.6]));
    let unit = beta_matrix(&a, &b, BetaForm::Unit, &cfg()).unwrap().value;
    for form in [BetaForm::Halfline, BetaForm::GammaProduct] {
        let other = beta_matrix(&a, &b, form, &cfg()).unwrap().value;
        assert!(unit.relative_distance(&other) < 1e-8, "{form:?}");
    }
}

#[test]
fn extended_gamma_closed_forms() {
    let zero = gamma_extended(&s(1.7), &s(0.0), &cfg()).unwrap().value;
    assert!(zero.relative_distance(&gamma_matrix(&s(1.7), &cfg()).unwrap().value) < 1e-10);
    near(value(&gamma_extended(&s(0.5), &s(1.0), &cfg()).unwrap().value), c(PI.sqrt() * (-2.0f64).exp()), 1e-10);
    near(value(&gamma_extended(&s(0.5), &s(4.0), &cfg()).unwrap().value), c(PI.sqrt() * (-4.0f64).exp()), 1e-10);
}

#[test]
fn extended_beta_values() {
    let (a, b) = (conj(&[0.8, 1.7]), conj(&[1.3, 0.6]));
    let plain = beta_matrix(&a, &b, BetaForm::Unit, &cfg()).unwrap().value;
    let ext = beta_extended(&a, &b, &SquareMatrix::zeros(2), &cfg()).unwrap().value;
    assert!(plain.relative_distance(&ext) < 1e-10);
    let want = oracle::beta_extended_moments(c(1.0), c(1.0), c(0.5), 1).unwrap()[0];
    near(value(&beta_extended(&s(1.0), &s(1.0), &s(0.5), &cfg()).unwrap().value), want, 1e-8);
    near(value(&beta_extended(&s(0.5), &s(0.5), &s(0.0), &cfg()).unwrap().value), c(PI), 1e-9);
}

#[test]
fn new_extended_gamma_reduces_to_gamma() {
    let x = conj(&[1.4, 2.2]);
    let a = conj(&[0.9, 1.3]);
    let p = params(a.clone(), a, x.clone(), SquareMatrix::zeros(2), None);
    let got = gamma_new_extended(&p, &cfg()).unwrap().value;
    assert!(got.relative_distance(&gamma_matrix(&x, &cfg()).unwrap().value) < 1e-9);
}

#[test]
fn second_gamma_form_needs_distinct_kernel_pair() {
    let p = params(s(1.0), s(1.0), s(2.0), s(0.5), None);
    assert!(matches!(gamma_new_extended_form2(&p, &cfg()), Err(MatError::Precondition { .. })));
}

#[test]
fn gamma_forms_agree() {
    let p = params(s(1.0), s(3.0), s(0.75), s(0.5), None);
    let one = gamma_new_extended(&p, &cfg()).unwrap();
    let two = gamma_new_extended_form2(&p, &cfg()).unwrap();
    near(value(&two.value), value(&one.value), 1e-8);
    near(value(&one.value), oracle::gamma_ne(c(1.0), c(3.0), c(0.75), c(0.5)).unwrap(), 1e-8);

    let p = params(s(1.0), s(3.0), s(0.6), s(0.0), None);
    let one = gamma_new_extended(&p, &cfg()).unwrap();
    let two = gamma_new_extended_form2(&p, &cfg()).unwrap();
    near(value(&two.value), value(&one.value), 1e-8);
}

#[test]
fn gamma_diverges_when_argument_exceeds_kernel_decay() {
    // The kernel decays like t^{−A}, so t^{X−I} is integrable only for X < A.
    let p = params(s(1.0), s(3.0), s(1.25), s(0.5), None);
    assert!(matches!(gamma_new_extended(&p, &cfg()), Err(MatError::Precondition { .. })));
}

#[test]
fn new_extended_beta_reductions() {
    let (x, z) = (conj(&[0.8, 1.7]), conj(&[1.3, 0.6]));
    let a = conj(&[1.1, 0.7]);
    let y = conj(&[0.3, 0.5]);
    let same = params(a.clone(), a.clone(), x.clone(), y.clone(), Some(z.clone()));
    let ext = beta_extended(&x, &z, &y, &cfg()).unwrap().value;
    assert!(beta_new_extended(&same, &cfg()).unwrap().value.relative_distance(&ext) < 1e-9);

    let flat = params(a.clone(), a, x.clone(), SquareMatrix::zeros(2), Some(z.clone()));
    let plain = beta_matrix(&x, &z, BetaForm::Unit, &cfg()).unwrap().value;
    assert!(beta_new_extended(&flat, &cfg()).unwrap().value.relative_distance(&plain) < 1e-9);
    assert!(beta_new_extended_halfline(&flat, &cfg()).unwrap().value.relative_distance(&plain) < 1e-9);
}

#[test]
fn new_extended_beta_against_scalar_quadrature() {
    let p = params(s(1.0), s(2.0), s(1.0), s(0.3), Some(s(1.0)));
    let want = oracle::beta_ne(c(1.0), c(2.0), c(0.3), c(1.0), c(1.0)).unwrap();
    near(value(&beta_new_extended(&p, &cfg()).unwrap().value), want, 1e-8);
    near(value(&beta_new_extended_halfline(&p, &cfg()).unwrap().value), want, 1e-8);
}

#[test]
fn beta_recurrence_on_a_matrix_draw() {
    let (x, z) = (conj(&[0.8, 1.7]), conj(&[1.3, 0.6]));
    let (a, b) = (conj(&[0.9, 1.2]), conj(&[2.1, 1.8]));
    let y = conj(&[0.4, 0.2]);
    let id = SquareMatrix::identity(2);
    let f = |x: &SquareMatrix, z: &SquareMatrix| {
        beta_new_extended(&params(a.clone(), b.clone(), x.clone(), y.clone(), Some(z.clone())), &cfg()).unwrap().value
    };
    let lhs = &f(&(&x + &id), &z) + &f(&x, &(&z + &id));
    assert!(lhs.relative_distance(&f(&x, &z)) < 1e-8);
}

#[test]
fn summation_with_zero_argument_is_one_term() {
    let p = params(s(1.0), s(2.0), s(1.5), s(0.3), Some(s(0.0)));
    let sum = beta_ne_summation(&p, &cfg()).unwrap();
    let direct = beta_new_extended(&params(s(1.0), s(2.0), s(1.5), s(0.3), Some(s(1.0))), &cfg()).unwrap();
    near(value(&sum.value), value(&direct.value), 1e-9);
}

#[test]
fn non_positive_stable_extension_is_rejected() {
    let p = params(s(1.0), s(2.0), s(1.0), s(-0.5), Some(s(1.0)));
    match beta_new_extended(&p, &cfg()) {
        Err(MatError::Precondition { hypothesis, role, .. }) => {
            assert!(hypothesis.contains("positive stable"), "{hypothesis}");
            assert_eq!(role, "Y");
        }
        other => panic!("expected a precondition error, got {other:?}"),
    }
}
