//! Matrix exponential and principal logarithm.

use super::matrix::{SquareMatrix, C64, ONE, ZERO};
use crate::error::{MatError, Result};

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
// Backward-error thresholds on the 1-norm for each Padé degree.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152e0;

/// Matrix exponential by Padé scaling-and-squaring on the trace-shifted matrix.
pub fn expm(a: &SquareMatrix) -> SquareMatrix {
    let n = a.order();
    let mu = a.trace() / n as f64;
    expm_core(&a.shift(-mu), mu)
}

/// exp(A + μI). The scalar factor is applied before squaring so that large
/// arguments with strong decay underflow to zero instead of producing inf·0.
fn expm_core(a: &SquareMatrix, mu: C64) -> SquareMatrix {
    let n = a.order();
    let norm = a.norm_one();
    let scalar = |m: SquareMatrix, z: C64| if z == ZERO { m } else { m.scale(z.exp()) };
    if norm == 0.0 {
        return scalar(SquareMatrix::identity(n), mu);
    }
    for &(m, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &PADE3,
                5 => &PADE5,
                7 => &PADE7,
                _ => &PADE9,
            };
            return scalar(pade_low(a, coeffs), mu);
        }
    }
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil().max(0.0) as i32 } else { 0 };
    let scaled = a.scale_real(0.5f64.powi(s));
    let mut r = scalar(pade13(&scaled), mu * 0.5f64.powi(s));
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

fn pade_solve(u: &SquareMatrix, v: &SquareMatrix) -> SquareMatrix {
    let p = v + u;
    let q = v - u;
    // q is well conditioned for arguments inside the Padé thresholds.
    q.solve(&p).unwrap_or_else(|_| SquareMatrix::from_vec_unchecked(p.order(), vec![C64::new(f64::NAN, 0.0); p.order() * p.order()]))
}

fn pade_low(a: &SquareMatrix, b: &[f64]) -> SquareMatrix {
    let n = a.order();
    let a2 = a * a;
    let mut powers = vec![SquareMatrix::identity(n)];
    let m = b.len() - 1;
    for k in 1..=m / 2 {
        let next = &powers[k - 1] * &a2;
        powers.push(next);
    }
    let mut u = SquareMatrix::zeros(n);
    let mut v = SquareMatrix::zeros(n);
    for (k, pw) in powers.iter().enumerate() {
        v.axpy(C64::new(b[2 * k], 0.0), pw);
        if 2 * k < m {
            u.axpy(C64::new(b[2 * k + 1], 0.0), pw);
        }
    }
    let u = a * &u;
    pade_solve(&u, &v)
}

fn pade13(a: &SquareMatrix) -> SquareMatrix {
    let n = a.order();
    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let id = SquareMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let mut inner_u = SquareMatrix::zeros(n);
    inner_u.axpy(b(13), &a6);
    inner_u.axpy(b(11), &a4);
    inner_u.axpy(b(9), &a2);
    let mut u = &a6 * &inner_u;
    u.axpy(b(7), &a6);
    u.axpy(b(5), &a4);
    u.axpy(b(3), &a2);
    u.axpy(b(1), &id);
    let u = a * &u;

    let mut inner_v = SquareMatrix::zeros(n);
    inner_v.axpy(b(12), &a6);
    inner_v.axpy(b(10), &a4);
    inner_v.axpy(b(8), &a2);
    let mut v = &a6 * &inner_v;
    v.axpy(b(6), &a6);
    v.axpy(b(4), &a4);
    v.axpy(b(2), &a2);
    v.axpy(b(0), &id);
    pade_solve(&u, &v)
}

/// `exp(s·A)` for many scalars `s` against one fixed matrix `A`.
///
/// Powers of the trace-shifted matrix are cached so that small arguments cost a
/// handful of scaled additions; larger arguments fall back to [`expm`].
#[derive(Clone, Debug)]
pub struct ExpPencil {
    mu: C64,
    shifted: SquareMatrix,
    norm: f64,
    powers: Vec<SquareMatrix>,
    zero: bool,
}

const PENCIL_TERMS: usize = 32;

impl ExpPencil {
    pub fn new(a: &SquareMatrix) -> Self {
        let n = a.order();
        let mu = a.trace() / n as f64;
        let shifted = a.shift(-mu);
        let norm = shifted.norm_one();
        let mut powers = Vec::with_capacity(PENCIL_TERMS + 1);
        powers.push(SquareMatrix::identity(n));
        if norm > 0.0 {
            for k in 1..=PENCIL_TERMS {
                let next = &powers[k - 1] * &shifted;
                powers.push(next);
            }
        }
        Self { mu, shifted, norm, powers, zero: a.is_zero() }
    }

    pub fn order(&self) -> usize {
        self.shifted.order()
    }

    /// Evaluates `exp(s·A)`.
    pub fn eval(&self, s: C64) -> SquareMatrix {
        let n = self.order();
        if self.zero {
            return SquareMatrix::identity(n);
        }
        if self.norm > 0.0 && s.norm() * self.norm > 1.0 {
            return expm_core(&self.shifted.scale(s), s * self.mu);
        }
        let base = if self.norm == 0.0 {
            SquareMatrix::identity(n)
        } else {
            let x = s.norm() * self.norm;
            let mut out = SquareMatrix::identity(n);
            let mut coeff = ONE;
            let mut bound = 1.0;
            for k in 1..=PENCIL_TERMS {
                coeff *= s / k as f64;
                bound *= x / k as f64;
                out.axpy(coeff, &self.powers[k]);
                if bound < 1e-18 {
                    break;
                }
            }
            out
        };
        let f = (s * self.mu).exp();
        if f == ONE {
            base
        } else {
            base.scale(f)
        }
    }

    /// `t^A = exp(A ln t)` for real `t > 0`.
    pub fn real_power(&self, t: f64) -> SquareMatrix {
        self.eval(C64::new(t.ln(), 0.0))
    }
}

/// Principal matrix logarithm by inverse scaling-and-squaring.
///
/// Fails when the square-root iteration does not settle, which is the symptom of
/// an eigenvalue on (or numerically at) the closed negative real axis.
pub fn logm(a: &SquareMatrix) -> Result<SquareMatrix> {
    let n = a.order();
    let c = a.frobenius_norm();
    if c == 0.0 || !c.is_finite() {
        return Err(MatError::Domain("logarithm of a zero or non-finite matrix".into()));
    }
    let scale = c / (n as f64).sqrt();
    let mut r = a.scale_real(1.0 / scale);
    let id = SquareMatrix::identity(n);
    let mut roots = 0u32;
    while (&r - &id).norm_one() > 0.25 {
        if roots >= 64 {
            return Err(MatError::Domain("matrix logarithm: square roots do not converge".into()));
        }
        r = sqrtm_db(&r)?;
        roots += 1;
    }
    let e = &r - &id;
    // E and R + I are both functions of R, so they commute.
    let s = (&r + &id).solve(&e)?;
    let s2 = &s * &s;
    let mut term = s.clone();
    let mut sum = s.clone();
    for j in 1..60 {
        term = &term * &s2;
        let tn = term.frobenius_norm() / (2 * j + 1) as f64;
        sum.axpy(C64::new(1.0 / (2 * j + 1) as f64, 0.0), &term);
        if tn < 1e-18 * sum.frobenius_norm().max(1e-300) {
            break;
        }
    }
    let mut out = sum.scale_real(2.0 * 2f64.powi(roots as i32));
    let ln = scale.ln();
    out = out.shift_real(ln);
    if !out.is_finite() {
        return Err(MatError::Domain("matrix logarithm produced non-finite entries".into()));
    }
    Ok(out)
}

/// Denman–Beavers square root.
fn sqrtm_db(a: &SquareMatrix) -> Result<SquareMatrix> {
    let n = a.order();
    let mut y = a.clone();
    let mut z = SquareMatrix::identity(n);
    for _ in 0..80 {
        let yi = y.inverse()?;
        let zi = z.inverse()?;
        let y_next = (&y + &zi).scale_real(0.5);
        let z_next = (&z + &yi).scale_real(0.5);
        let delta = (&y_next - &y).frobenius_norm();
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * y.frobenius_norm() {
            return Ok(y);
        }
    }
    Err(MatError::Domain("matrix square root iteration did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_jordan_block() {
        let a = SquareMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let e = expm(&a);
        let ex = std::f64::consts::E;
        assert!((e.get(0, 0).re - ex).abs() < 1e-14);
        assert!((e.get(0, 1).re - ex).abs() < 1e-14);
        assert!(e.get(1, 0).norm() < 1e-15);
    }

    #[test]
    fn exp_matches_across_scales() {
        let a = SquareMatrix::from_real_rows(&[vec![-3.0, 7.0], vec![0.5, 2.0]]).unwrap();
        for s in [1e-4, 0.1, 1.0, 5.0, 30.0] {
            let direct = expm(&a.scale_real(s));
            let half = expm(&a.scale_real(s / 2.0));
            assert!(direct.relative_distance(&(&half * &half)) < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn pencil_agrees_with_expm() {
        let a = SquareMatrix::from_rows(&[
            vec![C64::new(0.3, 0.1), C64::new(0.2, 0.0)],
            vec![C64::new(-0.4, 0.0), C64::new(1.1, -0.05)],
        ])
        .unwrap();
        let p = ExpPencil::new(&a);
        for s in [0.0, 0.3, -0.9, 2.5, -40.0, 300.0] {
            let s = C64::new(s, 0.0);
            let want = expm(&a.scale(s));
            assert!(p.eval(s).relative_distance(&want) < 1e-13);
        }
    }

    #[test]
    fn log_inverts_exp() {
        let a = SquareMatrix::from_rows(&[
            vec![C64::new(0.5, 0.2), C64::new(0.3, 0.0), C64::new(0.0, 0.1)],
            vec![C64::new(-0.2, 0.0), C64::new(1.0, 0.0), C64::new(0.4, 0.0)],
            vec![C64::new(0.1, 0.0), C64::new(0.0, 0.0), C64::new(-0.7, 0.0)],
        ])
        .unwrap();
        let back = logm(&expm(&a)).unwrap();
        assert!(back.relative_distance(&a) < 1e-12);
        let big = expm(&a).scale_real(1e200);
        let lb = logm(&big).unwrap();
        assert!(lb.relative_distance(&a.shift_real(200.0 * 10f64.ln())) < 1e-12);
    }
}
