//! Eigen-decomposition of diagonalizable matrices.

use serde::Serialize;

use super::matrix::{SquareMatrix, C64, ZERO};
use crate::error::{MatError, Result};

/// `A = P·diag(λ)·P⁻¹` with eigenvalues sorted by (Re, Im).
#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<C64>,
    pub eigenvector_matrix: SquareMatrix,
    pub inverse_eigenvector_matrix: SquareMatrix,
    pub condition_estimate: f64,
}

/// Condition estimates above this classify a matrix as effectively defective.
pub fn default_condition_cap() -> f64 {
    1.0 / f64::EPSILON.sqrt()
}

fn schur(a: &SquareMatrix) -> Result<(SquareMatrix, SquareMatrix)> {
    let n = a.order();
    if n == 1 {
        return Ok((SquareMatrix::identity(1), a.clone()));
    }
    // Repeated eigenvalues can stall the shifted QR sweep at ε; retry on the
    // trace-free part with a slightly looser deflation test.
    let mu = a.trace() / n as f64;
    for (m, eps) in [(a.clone(), f64::EPSILON), (a.shift(-mu), f64::EPSILON), (a.shift(-mu), 16.0 * f64::EPSILON)] {
        if let Some(schur) = nalgebra::Schur::try_new(m.to_nalgebra(), eps, 10_000) {
            let (q, t) = schur.unpack();
            let t = SquareMatrix::from_nalgebra(&t);
            let t = if m == *a { t } else { t.shift(mu) };
            return Ok((SquareMatrix::from_nalgebra(&q), t));
        }
    }
    Err(MatError::EigenFailure { order: n })
}

pub fn eigenvalues(a: &SquareMatrix) -> Result<Vec<C64>> {
    let (_, t) = schur(a)?;
    let mut ev = t.diagonal();
    if ev.iter().any(|z| !z.is_finite()) {
        return Err(MatError::EigenFailure { order: a.order() });
    }
    sort_eigenvalues(&mut ev);
    Ok(ev)
}

fn cmp_eig(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn sort_eigenvalues(ev: &mut [C64]) {
    ev.sort_by(cmp_eig);
}

pub fn spectral_decompose(a: &SquareMatrix) -> Result<SpectralData> {
    spectral_decompose_with_cap(a, default_condition_cap())
}

pub fn spectral_decompose_with_cap(a: &SquareMatrix, cap: f64) -> Result<SpectralData> {
    let n = a.order();
    let (q, t) = schur(a)?;
    let tnorm = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * tnorm;
    let lambdas = t.diagonal();
    if lambdas.iter().any(|z| !z.is_finite()) {
        return Err(MatError::EigenFailure { order: n });
    }
    // Eigenvectors of the triangular factor by back substitution.
    let mut v = SquareMatrix::zeros(n);
    for k in 0..n {
        let lk = lambdas[k];
        let mut x = vec![ZERO; n];
        x[k] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in i + 1..=k {
                s += t.get(i, j) * x[j];
            }
            let mut d = t.get(i, i) - lk;
            if d.norm() < small {
                if s.norm() <= small {
                    x[i] = ZERO;
                    continue;
                }
                d = C64::new(small, 0.0);
            }
            x[i] = -s / d;
        }
        for i in 0..n {
            v.set(i, k, x[i]);
        }
    }
    let p = &q * &v;
    // Order columns by eigenvalue and normalise them.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| cmp_eig(&lambdas[i], &lambdas[j]));
    let mut sorted = SquareMatrix::zeros(n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (col, &src) in idx.iter().enumerate() {
        eigenvalues.push(lambdas[src]);
        let norm = (0..n).map(|i| p.get(i, src).norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            sorted.set(i, col, p.get(i, src) / norm);
        }
    }
    let inv = match sorted.inverse() {
        Ok(inv) => inv,
        Err(_) => return Err(MatError::NotDiagonalizable { condition: f64::INFINITY }),
    };
    let condition_estimate = sorted.frobenius_norm() * inv.frobenius_norm();
    if !(condition_estimate <= cap) {
        return Err(MatError::NotDiagonalizable { condition: condition_estimate });
    }
    Ok(SpectralData {
        eigenvalues,
        eigenvector_matrix: sorted,
        inverse_eigenvector_matrix: inv,
        condition_estimate,
    })
}

impl SpectralData {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `P·diag(d)·P⁻¹` for an arbitrary diagonal.
    pub fn conjugate_diagonal(&self, d: &[C64]) -> SquareMatrix {
        let n = self.order();
        let mut pd = self.eigenvector_matrix.clone();
        for j in 0..n {
            for i in 0..n {
                pd.set(i, j, pd.get(i, j) * d[j]);
            }
        }
        &pd * &self.inverse_eigenvector_matrix
    }
}

/// `P·diag(f(λᵢ))·P⁻¹`.
pub fn apply_scalar_function<F>(s: &SpectralData, f: F) -> Result<SquareMatrix>
where
    F: Fn(C64) -> C64,
{
    let mut d = Vec::with_capacity(s.order());
    for &l in &s.eigenvalues {
        let v = f(l);
        if !v.is_finite() {
            return Err(MatError::NonFiniteEigenvalue { re: l.re, im: l.im });
        }
        d.push(v);
    }
    Ok(s.conjugate_diagonal(&d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_two_by_two() {
        let a = SquareMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = spectral_decompose(&a).unwrap();
        assert!((s.eigenvalues[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - C64::new(3.0, 0.0)).norm() < 1e-14);
        let p = &s.eigenvector_matrix;
        // first column ∝ (1, −1)/√2 up to a unit phase
        let ratio = p.get(1, 0) / p.get(0, 0);
        assert!((ratio + C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((p.get(0, 0).norm() - 0.5f64.sqrt()).abs() < 1e-14);
        let ratio = p.get(1, 1) / p.get(0, 1);
        assert!((ratio - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn defective_matrix_is_refused() {
        let a = SquareMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(spectral_decompose(&a), Err(MatError::NotDiagonalizable { .. })));
    }

    #[test]
    fn diagonal_sorted_with_permutation() {
        let a = SquareMatrix::real_diag(&[3.0, 1.0]);
        let s = spectral_decompose(&a).unwrap();
        assert_eq!(s.eigenvalues[0].re, 1.0);
        assert_eq!(s.eigenvalues[1].re, 3.0);
        assert!(s.eigenvector_matrix.get(1, 0).norm() > 0.99);
        let back = apply_scalar_function(&s, |z| z).unwrap();
        assert!(back.relative_distance(&a) < 1e-15);
    }

    #[test]
    fn non_finite_function_names_eigenvalue() {
        let s = spectral_decompose(&SquareMatrix::real_diag(&[0.0, 2.0])).unwrap();
        let err = apply_scalar_function(&s, |z| C64::new(1.0, 0.0) / z).unwrap_err();
        assert!(matches!(err, MatError::NonFiniteEigenvalue { re, .. } if re == 0.0));
    }

    #[test]
    fn repeated_eigenvalue_in_skew_basis() {
        let p = SquareMatrix::from_real_rows(&[vec![1.2, -0.3, 0.4], vec![0.1, 0.9, -0.45], vec![-0.35, 0.2, 1.1]]).unwrap();
        let inv = p.inverse().unwrap();
        let mu = C64::new(0.3, 0.05);
        let a = &(&p * &SquareMatrix::diag(&[mu, C64::new(0.07, 0.08), mu])) * &inv;
        let ev = eigenvalues(&a).unwrap();
        assert!((ev[0] - C64::new(0.07, 0.08)).norm() < 1e-12);
        assert!((ev[1] - mu).norm() < 1e-7 && (ev[2] - mu).norm() < 1e-7);
    }
}
