//! Matrix functional calculus primitives.

mod expm;
mod matrix;
mod spectral;

pub use expm::{expm, logm, ExpPencil};
pub use matrix::{SquareMatrix, C64, ONE, ZERO};
pub use spectral::{
    apply_scalar_function, default_condition_cap, eigenvalues, spectral_decompose,
    spectral_decompose_with_cap, SpectralData,
};

use serde::{Deserialize, Serialize};

use crate::error::{MatError, Result};
use crate::quadrature::{EvalReport, SeriesSpec, SeriesTail};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative commutator threshold: `‖AB − BA‖ ≤ tol·‖A‖‖B‖`.
    pub commutator_tol: f64,
    pub stability_margin: f64,
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { commutator_tol: 1e-12, stability_margin: 1e-8, residual_tol: 1e-8 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if !(self.commutator_tol >= 0.0 && self.stability_margin >= 0.0 && self.residual_tol >= 0.0) {
            return Err(MatError::Domain("tolerances must be non-negative".into()));
        }
        Ok(())
    }
}

/// `(α(A), β(A))`: the largest and smallest real part over the spectrum.
pub fn spectral_alpha_beta(a: &SquareMatrix) -> Result<(f64, f64)> {
    let ev = eigenvalues(a)?;
    Ok(alpha_beta_of(&ev))
}

pub fn alpha_beta_of(ev: &[C64]) -> (f64, f64) {
    let alpha = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let beta = ev.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    (alpha, beta)
}

pub fn is_positive_stable(a: &SquareMatrix, margin: f64) -> Result<bool> {
    let (_, beta) = spectral_alpha_beta(a)?;
    Ok(beta > margin)
}

pub fn commutator(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    a.check_same_order(b)?;
    Ok(&(a * b) - &(b * a))
}

pub fn commutator_norm(a: &SquareMatrix, b: &SquareMatrix) -> Result<f64> {
    Ok(commutator(a, b)?.frobenius_norm())
}

/// `‖AB − BA‖_F ≤ tol·‖A‖_F‖B‖_F`.
pub fn commutes(a: &SquareMatrix, b: &SquareMatrix, tol: f64) -> bool {
    match commutator_norm(a, b) {
        Ok(c) => c <= tol * a.frobenius_norm() * b.frobenius_norm(),
        Err(_) => false,
    }
}

/// `t^A = exp(A ln t)` for real `t > 0`.
pub fn real_power(t: f64, a: &SquareMatrix) -> Result<SquareMatrix> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(MatError::Domain(format!("real_power needs t > 0, got {t}")));
    }
    if t == 1.0 {
        return Ok(SquareMatrix::identity(a.order()));
    }
    Ok(expm(&a.scale_real(t.ln())))
}

/// `c^A = exp(A Log c)` on the principal branch.
pub fn complex_power(c: C64, a: &SquareMatrix) -> Result<SquareMatrix> {
    if c.norm() == 0.0 || !c.is_finite() {
        return Err(MatError::Domain(format!("complex_power needs a finite non-zero base, got {c}")));
    }
    if c == ONE {
        return Ok(SquareMatrix::identity(a.order()));
    }
    Ok(expm(&a.scale(c.ln())))
}

/// `(A)ₙ = A(A+I)···(A+(n−1)I)`.
pub fn pochhammer(a: &SquareMatrix, n: usize) -> SquareMatrix {
    let mut out = SquareMatrix::identity(a.order());
    for k in 0..n {
        out = &out * &a.shift_real(k as f64);
    }
    out
}

/// All of `(A)₀, …, (A)ₙ`.
pub fn pochhammer_table(a: &SquareMatrix, n: usize) -> Vec<SquareMatrix> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(SquareMatrix::identity(a.order()));
    for k in 0..n {
        let next = &out[k] * &a.shift_real(k as f64);
        out.push(next);
    }
    out
}

/// Partial sums of `Σ (A)ₙ zⁿ/n! = (1−z)^{−A}` for `|z| < 1`.
pub fn binomial_series(z: C64, a: &SquareMatrix, spec: &SeriesSpec) -> Result<EvalReport> {
    spec.validate()?;
    if z.norm() >= 1.0 {
        return Err(MatError::ConvergenceDomain(format!("binomial series needs |z| < 1, got |z| = {}", z.norm())));
    }
    let n = a.order();
    let mut term = SquareMatrix::identity(n);
    let mut sum = term.clone();
    let mut tail = SeriesTail::new(spec);
    let mut k = 0usize;
    loop {
        if tail.done() || k + 1 >= spec.max_terms {
            break;
        }
        term = (&term * &a.shift_real(k as f64)).scale(z / (k + 1) as f64);
        sum += &term;
        k += 1;
        tail.push(term.frobenius_norm(), sum.frobenius_norm());
    }
    Ok(tail.finish(sum, 0.0, k + 1))
}
