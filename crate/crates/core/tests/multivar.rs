use matspec::hyper::{neghmf_series, HyperParams};
use matspec::multivar::*;
use matspec::verify::oracle::{beta, poch};
use matspec::{EvalConfig, EvalReport, SquareMatrix, C64};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn s(v: f64) -> SquareMatrix {
    SquareMatrix::real_scalar(1, v)
}

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn v(r: &EvalReport) -> C64 {
    r.value.get(0, 0)
}

fn near(got: C64, want: C64, tol: f64) {
    let err = (got - want).norm() / want.norm().max(1.0);
    assert!(err <= tol, "got {got}, want {want}, relative error {err:e}");
}

fn conj(d: &[f64]) -> SquareMatrix {
    let p = SquareMatrix::from_real_rows(&[vec![1.0, 0.4], vec![-0.3, 1.2]]).unwrap();
    p.matmul(&SquareMatrix::real_diag(d)).matmul(&p.inverse().unwrap())
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Classical scalar parameters: kernel pairs collapsed, Y = 0.
fn classical(a1: f64, b1: f64, b2: f64, b3: f64, c1: f64, c2: f64) -> AppellParams {
    AppellParams {
        a: s(1.0),
        b: s(1.0),
        a_prime: Some(s(1.0)),
        b_prime: Some(s(1.0)),
        a1: s(a1),
        b1: s(b1),
        b2: s(b2),
        b3: Some(s(b3)),
        c1: s(c1),
        c2: Some(s(c2)),
        y: s(0.0),
        z: c(0.0),
        w: c(0.0),
        v: c(0.0),
    }
}

fn extended() -> AppellParams {
    AppellParams { a: s(1.3), b: s(2.7), a_prime: Some(s(1.1)), b_prime: Some(s(2.4)), y: s(0.25), ..classical(1.5, 1.4, 1.6, 1.2, 3.2, 2.9) }
}

fn matrix_params() -> AppellParams {
    AppellParams {
        a: conj(&[1.3, 1.1]),
        b: conj(&[2.7, 2.5]),
        a_prime: Some(conj(&[1.1, 1.2])),
        b_prime: Some(conj(&[2.4, 2.2])),
        a1: conj(&[1.5, 1.3]),
        b1: conj(&[1.4, 1.2]),
        b2: conj(&[1.6, 1.5]),
        b3: Some(conj(&[1.2, 1.4])),
        c1: conj(&[3.2, 3.0]),
        c2: Some(conj(&[2.9, 3.1])),
        y: conj(&[0.25, 0.15]),
        z: c(0.0),
        w: c(0.0),
        v: c(0.0),
    }
}

// Brute-force classical sums, with terms built by their ratios to avoid
// overflowing the Pochhammer products.
fn f1_classical(a: f64, b1: f64, b2: f64, cc: f64, z: f64, w: f64) -> f64 {
    let mut sum = 0.0;
    let mut row = 1.0;
    for m in 0..60 {
        let mut t = row;
        for n in 0..60 {
            sum += t;
            let k = (m + n) as f64;
            t *= (a + k) * (b2 + n as f64) / ((cc + k) * (n as f64 + 1.0)) * w;
        }
        row *= (a + m as f64) * (b1 + m as f64) / ((cc + m as f64) * (m as f64 + 1.0)) * z;
    }
    sum
}

fn f2_classical(a: f64, b1: f64, b2: f64, c1: f64, c2: f64, z: f64, w: f64) -> f64 {
    let mut sum = 0.0;
    let mut row = 1.0;
    for m in 0..60 {
        let mut t = row;
        for n in 0..60 {
            sum += t;
            let k = (m + n) as f64;
            t *= (a + k) * (b2 + n as f64) / ((c2 + n as f64) * (n as f64 + 1.0)) * w;
        }
        row *= (a + m as f64) * (b1 + m as f64) / ((c1 + m as f64) * (m as f64 + 1.0)) * z;
    }
    sum
}

fn fd3_classical(a: f64, b: [f64; 3], cc: f64, x: [f64; 3]) -> f64 {
    let mut sum = 0.0;
    let mut plane = 1.0;
    for i in 0..40 {
        let mut row = plane;
        for j in 0..40 {
            let mut t = row;
            for k in 0..40 {
                sum += t;
                let s = (i + j + k) as f64;
                t *= (a + s) * (b[2] + k as f64) / ((cc + s) * (k as f64 + 1.0)) * x[2];
            }
            let s = (i + j) as f64;
            row *= (a + s) * (b[1] + j as f64) / ((cc + s) * (j as f64 + 1.0)) * x[1];
        }
        plane *= (a + i as f64) * (b[0] + i as f64) / ((cc + i as f64) * (i as f64 + 1.0)) * x[0];
    }
    sum
}

#[test]
fn zero_arguments_give_the_beta_ratio() {
    let p = extended();
    let f1 = v(&appell_f1_series(&p, &cfg()).unwrap());
    let fd = v(&lauricella_fd3_series(&p, &cfg()).unwrap());
    near(fd, f1, 1e-14);
    near(v(&appell_f1_integral(&p, &cfg()).unwrap()), f1, 1e-8);
    near(v(&lauricella_fd3_integral(&p, &cfg()).unwrap()), f1, 1e-8);
    let f2 = v(&appell_f2_series(&p, &cfg()).unwrap());
    near(v(&appell_f2_integral(&p, &cfg()).unwrap()), f2, 1e-8);
    let classical_f2 = v(&appell_f2_series(&classical(1.5, 1.4, 1.6, 1.2, 3.2, 2.9), &cfg()).unwrap());
    near(classical_f2, c(1.0), 1e-12);
    assert!((f1 - c(1.0)).norm() > 1e-3, "extension should change the normalization");
}

#[test]
fn classical_appell_values() {
    let p = classical(0.9, 0.6, 0.7, 0.0, 2.1, 1.0).at(c(0.2), c(0.3), c(0.0));
    let want = c(f1_classical(0.9, 0.6, 0.7, 2.1, 0.2, 0.3));
    near(v(&appell_f1_series(&p, &cfg()).unwrap()), want, 1e-10);
    near(v(&appell_f1_integral(&p, &cfg()).unwrap()), want, 1e-8);

    let p = classical(0.8, 0.5, 0.6, 0.0, 1.7, 1.9).at(c(0.15), c(0.2), c(0.0));
    let want = c(f2_classical(0.8, 0.5, 0.6, 1.7, 1.9, 0.15, 0.2));
    near(v(&appell_f2_series(&p, &cfg()).unwrap()), want, 1e-10);
    near(v(&appell_f2_integral(&p, &cfg()).unwrap()), want, 1e-8);

    let p = classical(0.9, 0.4, 0.5, 0.6, 2.2, 1.0).at(c(0.1), c(0.15), c(0.2));
    let want = c(fd3_classical(0.9, [0.4, 0.5, 0.6], 2.2, [0.1, 0.15, 0.2]));
    near(v(&lauricella_fd3_series(&p, &cfg()).unwrap()), want, 1e-10);
    near(v(&lauricella_fd3_integral(&p, &cfg()).unwrap()), want, 1e-8);
}

#[test]
fn classical_coefficients_termwise() {
    let p = classical(0.9, 0.6, 0.7, 0.5, 2.1, 1.8);
    for (idx, coef) in appell_f1_coefficients(&p, 15, &cfg()).unwrap() {
        let (m, n) = (idx[0], idx[1]);
        let want = poch(c(0.9), m + n) * poch(c(0.6), m) * poch(c(0.7), n) / (poch(c(2.1), m + n) * fact(m) * fact(n));
        near(coef.get(0, 0), want, 1e-8);
    }
    for (idx, coef) in appell_f2_coefficients(&p, 15, &cfg()).unwrap() {
        let (m, n) = (idx[0], idx[1]);
        let want = poch(c(0.9), m + n) * poch(c(0.6), m) * poch(c(0.7), n) / (poch(c(2.1), m) * poch(c(1.8), n) * fact(m) * fact(n));
        near(coef.get(0, 0), want, 1e-8);
    }
}

#[test]
fn one_variable_reductions() {
    let p = extended().at(c(0.3), c(0.0), c(0.0));
    let one = HyperParams { a: p.a.clone(), b: p.b.clone(), a1: Some(p.b1.clone()), b1: p.a1.clone(), c1: p.c1.clone(), y: p.y.clone(), z: c(0.3) };
    near(v(&appell_f1_series(&p, &cfg()).unwrap()), v(&neghmf_series(&one, &cfg()).unwrap()), 1e-9);

    let p = extended().at(c(0.2), c(0.3), c(0.0));
    near(v(&lauricella_fd3_series(&p, &cfg()).unwrap()), v(&appell_f1_series(&p, &cfg()).unwrap()), 1e-12);

    let p = AppellParams { b2: s(0.0), ..extended().at(c(0.2), c(0.3), c(0.0)) };
    let q = p.at(c(0.2), c(0.0), c(0.0));
    near(v(&appell_f1_integral(&p, &cfg()).unwrap()), v(&appell_f1_integral(&q, &cfg()).unwrap()), 1e-12);

    let p = AppellParams { b3: Some(s(0.0)), ..extended().at(c(0.2), c(0.3), c(0.25)) };
    near(v(&lauricella_fd3_integral(&p, &cfg()).unwrap()), v(&appell_f1_integral(&p, &cfg()).unwrap()), 1e-9);
}

#[test]
fn matrix_series_and_integrals_agree() {
    let p = matrix_params().at(c(0.2), c(0.3), c(0.1));
    let pairs = [
        (appell_f1_series(&p, &cfg()).unwrap(), appell_f1_integral(&p, &cfg()).unwrap()),
        (lauricella_fd3_series(&p, &cfg()).unwrap(), lauricella_fd3_integral(&p, &cfg()).unwrap()),
    ];
    for (a, b) in &pairs {
        assert!(a.value.relative_distance(&b.value) < 1e-8);
    }
    let p = matrix_params().at(c(0.15), c(0.2), c(0.0));
    let (a, b) = (appell_f2_series(&p, &cfg()).unwrap(), appell_f2_integral(&p, &cfg()).unwrap());
    assert!(a.value.relative_distance(&b.value) < 1e-8);
}

#[test]
fn f1_derivatives_against_finite_differences() {
    assert!(v(&f1_derivative_rhs(&extended().at(c(0.2), c(0.3), c(0.0)), 0, 0, &cfg()).unwrap()).norm() > 0.0);
    let p = extended().at(c(0.2), c(0.3), c(0.0));
    near(v(&f1_derivative_rhs(&p, 0, 0, &cfg()).unwrap()), v(&appell_f1_series(&p, &cfg()).unwrap()), 1e-14);

    let h = 1e-3;
    let f = |z: f64, w: f64| appell_f1_series(&p.at(c(z), c(w), c(0.0)), &cfg()).unwrap().value;
    // Fourth-order stencils.
    let dz = (&(&f(0.2 - 2.0 * h, 0.3) - &f(0.2 + 2.0 * h, 0.3)) + &(&f(0.2 + h, 0.3) - &f(0.2 - h, 0.3)).scale_real(8.0)).scale_real(1.0 / (12.0 * h));
    near(v(&f1_derivative_rhs(&p, 1, 0, &cfg()).unwrap()), dz.get(0, 0), 1e-4);

    let p = matrix_params().at(c(0.2), c(0.3), c(0.0));
    let f = |z: f64, w: f64| appell_f1_series(&p.at(c(z), c(w), c(0.0)), &cfg()).unwrap().value;
    let mixed = (&(&f(0.2 + h, 0.3 + h) - &f(0.2 + h, 0.3 - h)) - &(&f(0.2 - h, 0.3 + h) - &f(0.2 - h, 0.3 - h))).scale_real(0.25 / (h * h));
    assert!(f1_derivative_rhs(&p, 1, 1, &cfg()).unwrap().value.relative_distance(&mixed) < 1e-4);
}

#[test]
fn f2_derivative_right_factor() {
    let p = extended().at(c(0.15), c(0.2), c(0.0));
    let h = 1e-3;
    let f = |w: f64| v(&appell_f2_series(&p.at(c(0.15), c(w), c(0.0)), &cfg()).unwrap());
    let dw = (f(0.2 - 2.0 * h) - f(0.2 + 2.0 * h) + (f(0.2 + h) - f(0.2 - h)) * 8.0) / (12.0 * h);
    near(v(&f2_derivative_rhs(&p, 0, 1, true, &cfg()).unwrap()), dw, 1e-4);
    let printed = v(&f2_derivative_rhs(&p, 0, 1, false, &cfg()).unwrap());
    assert!((printed - dw).norm() > 1e-2 * dw.norm());
}

#[test]
fn kernel_shift_recurrences() {
    let p = extended().at(c(0.2), c(0.2), c(0.1));
    for which in [Recurrence::KernelShift566, Recurrence::KernelShift57] {
        let (l, r) = f1_recurrence_sides(&p, which, true, &cfg()).unwrap();
        assert!(l.value.relative_distance(&r.value) < 1e-5, "{which:?}");
        let (l, r) = f2_recurrence_sides(&p, which, true, &cfg()).unwrap();
        assert!(l.value.relative_distance(&r.value) < 1e-5, "{which:?}");
        let (l, r) = fd3_recurrence_sides(&p, which, &cfg()).unwrap();
        assert!(l.value.relative_distance(&r.value) < 1e-5, "{which:?}");
    }
    let (l, r) = f2_recurrence_sides(&p, Recurrence::KernelShift57, false, &cfg()).unwrap();
    assert!(l.value.relative_distance(&r.value) > 1e-5);
}

#[test]
fn appell_domain_is_enforced() {
    assert!(appell_f2_series(&extended().at(c(0.6), c(0.5), c(0.0)), &cfg()).is_err());
    assert!(appell_f1_series(&extended().at(c(1.1), c(0.0), c(0.0)), &cfg()).is_err());
}

#[test]
fn classical_normalization_is_one() {
    let p = classical(0.9, 0.6, 0.7, 0.5, 2.1, 1.8);
    near(v(&appell_f1_series(&p, &cfg()).unwrap()), c(1.0), 1e-14);
    assert!((beta(c(0.9), c(1.2)) - beta(c(1.2), c(0.9))).norm() < 1e-14);
}
