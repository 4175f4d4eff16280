use serde::{Deserialize, Serialize};

use crate::error::{MatError, Result};
use crate::matcalc::{commutes, spectral_alpha_beta, SquareMatrix, Tolerances};
use crate::quadrature::{QuadratureSpec, SeriesSpec};

/// Numerical settings shared by every evaluator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalConfig {
    pub quadrature: QuadratureSpec,
    pub series: SeriesSpec,
    pub tolerances: Tolerances,
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        self.series.validate()?;
        self.tolerances.validate()
    }

    pub fn require_positive_stable(&self, m: &SquareMatrix, role: &str, anchor: &str) -> Result<()> {
        let (_, beta) = spectral_alpha_beta(m)?;
        if beta > self.tolerances.stability_margin {
            Ok(())
        } else {
            Err(MatError::precondition("positive stable", role, anchor))
        }
    }

    /// Extension matrices may also be exactly zero (the unextended special case).
    pub fn require_positive_stable_or_zero(&self, m: &SquareMatrix, role: &str, anchor: &str) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        self.require_positive_stable(m, role, anchor)
    }

    pub fn commute(&self, a: &SquareMatrix, b: &SquareMatrix) -> bool {
        commutes(a, b, self.tolerances.commutator_tol)
    }

    pub fn all_commute(&self, ms: &[&SquareMatrix]) -> bool {
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                if !self.commute(ms[i], ms[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Pairwise commutation of the named matrices.
    pub fn require_commuting(&self, named: &[(&str, &SquareMatrix)], anchor: &str) -> Result<()> {
        for i in 0..named.len() {
            for j in i + 1..named.len() {
                if !self.commute(named[i].1, named[j].1) {
                    return Err(MatError::precondition(
                        "commuting",
                        format!("{} and {}", named[i].0, named[j].0),
                        anchor,
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn require_same_order(&self, ms: &[&SquareMatrix]) -> Result<usize> {
        let n = ms[0].order();
        for m in ms {
            if m.order() != n {
                return Err(MatError::Dimension { expected: n, found: m.order() });
            }
        }
        Ok(n)
    }
}
