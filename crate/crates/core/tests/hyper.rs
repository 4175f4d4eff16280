use matspec::gammabeta::{beta_matrix, beta_new_extended, BetaForm, GammaBetaParams};
use matspec::hyper::*;
use matspec::matcalc::{complex_power, expm};
use matspec::verify::oracle::{self, HyperScalars};
use matspec::{EvalConfig, SquareMatrix, C64};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn s(v: f64) -> SquareMatrix {
    SquareMatrix::real_scalar(1, v)
}

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn near(got: C64, want: C64, tol: f64) {
    let err = (got - want).norm() / want.norm().max(1.0);
    assert!(err <= tol, "got {got}, want {want}, relative error {err:e}");
}

fn conj(d: &[f64]) -> SquareMatrix {
    let p = SquareMatrix::from_real_rows(&[vec![1.0, 0.4], vec![-0.3, 1.2]]).unwrap();
    p.matmul(&SquareMatrix::real_diag(d)).matmul(&p.inverse().unwrap())
}

fn scalar_params(a: f64, b: f64, a1: f64, b1: f64, c1: f64, y: f64, z: f64) -> HyperParams {
    HyperParams { a: s(a), b: s(b), a1: Some(s(a1)), b1: s(b1), c1: s(c1), y: s(y), z: c(z) }
}

fn sample() -> HyperParams {
    scalar_params(1.0, 2.0, 0.8, 1.1, 2.3, 0.2, 0.3)
}

fn sample_scalars() -> HyperScalars {
    HyperScalars { a: c(1.0), b: c(2.0), a1: c(0.8), b1: c(1.1), c1: c(2.3), y: c(0.2) }
}

fn matrix_sample(z: f64) -> HyperParams {
    HyperParams {
        a: conj(&[1.0, 1.3]),
        b: conj(&[2.0, 2.4]),
        a1: Some(conj(&[0.8, 0.6])),
        b1: conj(&[1.1, 0.9]),
        c1: conj(&[2.3, 2.6]),
        y: conj(&[0.2, 0.35]),
        z: c(z),
    }
}

fn v(r: &matspec::EvalReport) -> C64 {
    r.value.get(0, 0)
}

#[test]
fn confluent_kernel_values() {
    let (a, b) = (conj(&[0.7, 1.2]), conj(&[1.9, 2.5]));
    let r = kummer_1f1(&a, &b, &SquareMatrix::zeros(2), &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-15);
    let m = conj(&[-0.4, 0.9]);
    let r = kummer_1f1(&a, &a, &m, &cfg()).unwrap();
    assert!(r.value.relative_distance(&expm(&m)) < 1e-13);
    let want = 1.0 - (-1.0f64).exp();
    near(v(&kummer_1f1(&s(1.0), &s(2.0), &s(-1.0), &cfg()).unwrap()), c(want), 1e-14);
}

#[test]
fn confluent_kernel_large_negative_argument() {
    for x in [5.0, 30.0, 120.0] {
        let got = v(&kummer_1f1(&s(0.7), &s(1.9), &s(-x), &cfg()).unwrap());
        near(got, oracle::hyp1f1(c(0.7), c(1.9), c(-x)).unwrap(), 1e-10);
    }
}

#[test]
fn gauss_values() {
    let (a1, b1) = (conj(&[0.4, 0.7]), conj(&[1.3, 0.9]));
    let r = gauss_2f1(&a1, &b1, &b1, c(0.0), &cfg()).unwrap();
    assert!(r.value.relative_distance(&SquareMatrix::identity(2)) < 1e-15);
    let r = gauss_2f1(&a1, &b1, &b1, c(0.35), &cfg()).unwrap();
    let want = complex_power(c(0.65), &a1.scale_real(-1.0)).unwrap();
    assert!(r.value.relative_distance(&want) < 1e-12);
    near(v(&gauss_2f1(&s(1.0), &s(1.0), &s(2.0), c(0.5), &cfg()).unwrap()), c(2.0 * 2f64.ln()), 1e-13);
}

#[test]
fn extended_gauss_and_confluent() {
    let (a1, b1, c1) = (s(0.9), s(1.2), s(2.5));
    let plain = v(&gauss_2f1(&a1, &b1, &c1, c(0.4), &cfg()).unwrap());
    near(v(&eghmf(&a1, &b1, &c1, &s(0.0), c(0.4), &cfg()).unwrap()), plain, 1e-10);
    let want = oracle::extended_hyper(Some(c(0.9)), c(1.2), c(2.5), c(0.25), c(0.4)).unwrap();
    near(v(&eghmf(&a1, &b1, &c1, &s(0.25), c(0.4), &cfg()).unwrap()), want, 1e-8);

    let plain = v(&kummer_1f1(&b1, &c1, &s(0.4), &cfg()).unwrap());
    near(v(&ekhmf(&b1, &c1, &s(0.0), c(0.4), &cfg()).unwrap()), plain, 1e-10);
    let want = oracle::extended_hyper(None, c(1.2), c(2.5), c(0.25), c(0.4)).unwrap();
    near(v(&ekhmf(&b1, &c1, &s(0.25), c(0.4), &cfg()).unwrap()), want, 1e-8);
}

#[test]
fn gauss_family_reduces_to_classical() {
    let p = HyperParams { b: s(1.0), y: s(0.0), ..sample() };
    let classical = v(&gauss_2f1(&s(0.8), &s(1.1), &s(2.3), c(0.3), &cfg()).unwrap());
    near(v(&neghmf_series(&p, &cfg()).unwrap()), classical, 1e-9);
    let classical = v(&kummer_1f1(&s(1.1), &s(2.3), &s(0.3), &cfg()).unwrap());
    near(v(&nechmf_series(&p, &cfg()).unwrap()), classical, 1e-9);
}

#[test]
fn reduced_coefficients_match_termwise() {
    let m = matrix_sample(0.0);
    let p = HyperParams { b: m.a.clone(), y: SquareMatrix::zeros(2), ..m };
    let got = neghmf_coefficients(&p, 15, &cfg()).unwrap();
    let want = classical_coefficients(p.a1.as_ref(), &p.b1, &p.c1, 15).unwrap();
    for (g, w) in got.iter().zip(&want) {
        assert!(g.relative_distance(w) < 1e-8);
    }
    let got = nechmf_coefficients(&p, 15, &cfg()).unwrap();
    let want = classical_coefficients(None, &p.b1, &p.c1, 15).unwrap();
    for (g, w) in got.iter().zip(&want) {
        assert!(g.relative_distance(w) < 1e-8);
    }
}

#[test]
fn zero_argument_is_the_beta_ratio() {
    let p = sample().with_z(c(0.0));
    let num = beta_new_extended(
        &GammaBetaParams { a: s(1.0), b: s(2.0), x: s(1.1), y: s(0.2), z: Some(s(1.2)) },
        &cfg(),
    )
    .unwrap();
    let den = beta_matrix(&s(1.1), &s(1.2), BetaForm::GammaProduct, &cfg()).unwrap();
    let want = v(&num) / v(&den);
    near(v(&neghmf_series(&p, &cfg()).unwrap()), want, 1e-9);
    near(v(&nechmf_series(&p, &cfg()).unwrap()), want, 1e-9);
    near(v(&neghmf_integral(&p, GaussForm::Unit, &cfg()).unwrap()), want, 1e-8);
    near(v(&nechmf_integral(&p, ConfluentForm::Direct, &cfg()).unwrap()), want, 1e-8);
}

#[test]
fn series_and_integrals_match_the_scalar_oracle() {
    let p = sample();
    let want = oracle::neghmf(&sample_scalars(), c(0.3)).unwrap();
    near(v(&neghmf_series(&p, &cfg()).unwrap()), want, 1e-8);
    near(v(&neghmf_integral(&p, GaussForm::Unit, &cfg()).unwrap()), want, 1e-8);
    near(v(&neghmf_integral(&p, GaussForm::Halfline, &cfg()).unwrap()), want, 1e-8);

    let want = oracle::nechmf(&sample_scalars(), c(0.3)).unwrap();
    near(v(&nechmf_series(&p, &cfg()).unwrap()), want, 1e-8);
    let direct = v(&nechmf_integral(&p, ConfluentForm::Direct, &cfg()).unwrap());
    let reflected = v(&nechmf_integral(&p, ConfluentForm::Reflected, &cfg()).unwrap());
    near(direct, want, 1e-8);
    near(reflected, direct, 1e-8);
}

#[test]
fn classical_euler_integrals() {
    let p = scalar_params(1.0, 1.0, 0.8, 1.1, 2.3, 0.0, 0.3);
    near(v(&neghmf_integral(&p, GaussForm::Unit, &cfg()).unwrap()), oracle::hyp2f1(c(0.8), c(1.1), c(2.3), c(0.3)).unwrap(), 1e-9);
    near(v(&nechmf_integral(&p, ConfluentForm::Direct, &cfg()).unwrap()), oracle::hyp1f1(c(1.1), c(2.3), c(0.3)).unwrap(), 1e-9);
}

#[test]
fn matrix_forms_agree() {
    let p = matrix_sample(0.3);
    let series = neghmf_series(&p, &cfg()).unwrap().value;
    for form in [GaussForm::Unit, GaussForm::Halfline] {
        assert!(neghmf_integral(&p, form, &cfg()).unwrap().value.relative_distance(&series) < 1e-8, "{form:?}");
    }
    let series = nechmf_series(&p, &cfg()).unwrap().value;
    for form in [ConfluentForm::Direct, ConfluentForm::Reflected] {
        assert!(nechmf_integral(&p, form, &cfg()).unwrap().value.relative_distance(&series) < 1e-8, "{form:?}");
    }
}

#[test]
fn derivative_matches_central_difference() {
    let p = matrix_sample(0.3);
    let h = 1e-4;
    let at = |z: f64| neghmf_series(&p.with_z(c(z)), &cfg()).unwrap().value;
    let fd = (&at(0.3 + h) - &at(0.3 - h)).scale_real(0.5 / h);
    let d = neghmf_derivative(&p, 1, &cfg()).unwrap().value;
    assert!(d.relative_distance(&fd) < 1e-7);

    let at = |z: f64| nechmf_series(&p.with_z(c(z)), &cfg()).unwrap().value;
    let fd = (&at(0.3 + h) - &at(0.3 - h)).scale_real(0.5 / h);
    assert!(nechmf_derivative(&p, 1, &cfg()).unwrap().value.relative_distance(&fd) < 1e-7);
}

#[test]
fn transformations() {
    let p = sample().with_z(c(0.0));
    let (l, r) = neghmf_transform_sides(&p, Transform::PfaffZOverZm1, true, &cfg()).unwrap();
    near(v(&l), v(&r), 1e-12);

    for z in [-0.4, 0.2, 0.45] {
        let p = sample().with_z(c(z));
        let (l, r) = neghmf_transform_sides(&p, Transform::PfaffZOverZm1, true, &cfg()).unwrap();
        near(v(&l), v(&r), 1e-8);
        let (l, r) = neghmf_transform_sides(&p, Transform::ZOver1pz, true, &cfg()).unwrap();
        near(v(&l), v(&r), 1e-8);
    }
    // Left side at 0.2/1.2 = 1/6 against (1.2)^{A1} times the right side at −0.2.
    let p = sample().with_z(c(0.2));
    let (l, r) = neghmf_transform_sides(&p, Transform::ZOver1pz, true, &cfg()).unwrap();
    near(v(&l), v(&neghmf_series(&p.with_z(c(1.0 / 6.0)), &cfg()).unwrap()), 1e-12);
    near(v(&l), v(&r), 1e-8);

    let p = matrix_sample(0.3);
    let (l, r) = neghmf_transform_sides(&p, Transform::PfaffZOverZm1, true, &cfg()).unwrap();
    assert!(l.value.relative_distance(&r.value) < 1e-8);
}

#[test]
fn euler_transformation_needs_the_corrected_left_argument() {
    let p = sample().with_z(c(0.9));
    let (l, r) = neghmf_transform_sides(&p, Transform::EulerOneMinusZ, true, &cfg()).unwrap();
    near(v(&l), v(&r), 1e-8);
    let p = sample().with_z(c(0.5));
    let (l, r) = neghmf_transform_sides(&p, Transform::EulerOneMinusZ, false, &cfg()).unwrap();
    assert!((v(&l) - v(&r)).norm() > 1e-3);
}

#[test]
fn gauss_summation_at_one() {
    let p = scalar_params(1.0, 1.0, 0.3, 0.4, 2.0, 0.0, 0.0);
    let want = oracle::beta(c(0.4), c(1.3)) / oracle::beta(c(0.4), c(1.6));
    near(v(&neghmf_at_one(&p, &cfg()).unwrap()), want, 1e-10);

    let p = scalar_params(1.0, 2.0, 0.0, 1.1, 2.3, 0.2, 0.0);
    let at_zero = v(&neghmf_series(&p, &cfg()).unwrap());
    near(v(&neghmf_at_one(&p, &cfg()).unwrap()), at_zero, 1e-9);

    let p = matrix_sample(1.0);
    let (l, r) = neghmf_at_one_sides(&p, &cfg()).unwrap();
    assert!(l.value.relative_distance(&r.value) < 1e-6);
}

#[test]
fn kummer_transformation() {
    let (l, r) = kummer_first_theorem(&sample().with_z(c(0.0)), &cfg()).unwrap();
    near(v(&l), v(&r), 1e-12);
    let p = scalar_params(1.0, 1.0, 0.0, 0.7, 1.9, 0.0, 0.5);
    let (l, r) = kummer_first_theorem(&p, &cfg()).unwrap();
    near(v(&l), oracle::hyp1f1(c(0.7), c(1.9), c(0.5)).unwrap(), 1e-12);
    near(v(&l), v(&r), 1e-12);
    let (l, r) = kummer_first_theorem(&matrix_sample(0.4), &cfg()).unwrap();
    assert!(l.value.relative_distance(&r.value) < 1e-8);
}

#[test]
fn outside_the_unit_disc_is_a_domain_error() {
    assert!(neghmf_series(&sample().with_z(c(1.2)), &cfg()).is_err());
}
