//! Double-exponential quadrature for matrix-valued integrands, plus the shared
//! evaluation report and series truncation settings.

mod square;
mod tanh_sinh;

pub use square::integrate_unit_square;
pub(crate) use tanh_sinh::CachedHalfline;
pub use tanh_sinh::{integrate_halfline, integrate_unit, integrate_unit_moments, MomentSet};

use serde::{Deserialize, Serialize};

use crate::error::{MatError, Result};
use crate::matcalc::{SquareMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Refinement depth: the finest step is `2^-max_levels`.
    pub max_levels: usize,
    pub max_evals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-11, max_levels: 12, max_evals: 200_000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(MatError::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_levels < 3 || self.max_evals == 0 {
            return Err(MatError::Domain("quadrature needs max_levels ≥ 3 and max_evals ≥ 1".into()));
        }
        Ok(())
    }

    pub fn tolerance_for(&self, norm: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * norm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesSpec {
    pub term_tol: f64,
    pub max_terms: usize,
    /// Consecutive small terms required before stopping.
    pub tail_run: usize,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self { term_tol: 1e-15, max_terms: 4000, tail_run: 3 }
    }
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.term_tol > 0.0) || self.max_terms == 0 || self.tail_run < 2 {
            return Err(MatError::Domain("series spec needs term_tol > 0, max_terms ≥ 1, tail_run ≥ 2".into()));
        }
        Ok(())
    }
}

/// Tracks the "tail_run consecutive negligible terms" stopping rule.
#[derive(Clone, Debug)]
pub struct SeriesTail {
    term_tol: f64,
    tail_run: usize,
    run: usize,
    recent: Vec<f64>,
}

impl SeriesTail {
    pub fn new(spec: &SeriesSpec) -> Self {
        Self { term_tol: spec.term_tol, tail_run: spec.tail_run, run: 0, recent: Vec::new() }
    }

    pub fn push(&mut self, term_norm: f64, sum_norm: f64) {
        if term_norm <= self.term_tol * sum_norm || term_norm == 0.0 {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.recent.push(term_norm);
        if self.recent.len() > self.tail_run {
            self.recent.remove(0);
        }
    }

    pub fn done(&self) -> bool {
        self.run >= self.tail_run
    }

    /// Truncation error proxy: the sum of the most recent term norms.
    pub fn tail_estimate(&self) -> f64 {
        self.recent.iter().sum()
    }

    pub fn finish(&self, value: SquareMatrix, extra_error: f64, evaluations: usize) -> EvalReport {
        let mut warnings = Vec::new();
        if !self.done() {
            warnings.push("series truncated at max_terms before the tail criterion was met".to_string());
        }
        EvalReport {
            value,
            error_estimate: extra_error + self.tail_estimate(),
            evaluations,
            converged: self.done(),
            warnings,
        }
    }
}

/// A computed value with its error estimate, work counter and diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub value: SquareMatrix,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl EvalReport {
    /// An exact value (closed form or finite product).
    pub fn exact(value: SquareMatrix) -> Self {
        Self { value, error_estimate: 0.0, evaluations: 0, converged: true, warnings: Vec::new() }
    }

    /// Relative error estimate, normalised like identity residuals.
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.value.frobenius_norm().max(1.0)
    }

    /// Replaces the value keeping the bookkeeping; the error estimate is scaled by
    /// `error_factor` (a norm bound of the applied linear map).
    pub fn map_value(mut self, value: SquareMatrix, error_factor: f64) -> Self {
        self.value = value;
        self.error_estimate *= error_factor;
        self
    }

    /// Merges bookkeeping of another report into this one (the value is untouched).
    pub fn absorb(&mut self, other: &EvalReport, error_factor: f64) {
        self.error_estimate += other.error_estimate * error_factor;
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
        for w in &other.warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
    }

    /// Product `self · other` with first-order error propagation.
    pub fn mul(&self, other: &EvalReport) -> EvalReport {
        let value = &self.value * &other.value;
        let mut out = EvalReport { value, ..EvalReport::exact(SquareMatrix::zeros(self.value.order())) };
        out.error_estimate = self.error_estimate * other.value.frobenius_norm()
            + self.value.frobenius_norm() * other.error_estimate
            + self.error_estimate * other.error_estimate;
        out.absorb_meta(self);
        out.absorb_meta(other);
        out
    }

    /// Inverse, with `‖δ(X⁻¹)‖ ≲ ‖X⁻¹‖²‖δX‖`.
    pub fn inverse(&self) -> Result<EvalReport> {
        let inv = self.value.inverse()?;
        let k = inv.frobenius_norm();
        let mut out = EvalReport::exact(inv);
        out.error_estimate = k * k * self.error_estimate;
        out.absorb_meta(self);
        Ok(out)
    }

    pub fn add(&self, other: &EvalReport) -> EvalReport {
        let mut out = EvalReport::exact(&self.value + &other.value);
        out.error_estimate = self.error_estimate + other.error_estimate;
        out.absorb_meta(self);
        out.absorb_meta(other);
        out
    }

    pub fn sub(&self, other: &EvalReport) -> EvalReport {
        let mut out = EvalReport::exact(&self.value - &other.value);
        out.error_estimate = self.error_estimate + other.error_estimate;
        out.absorb_meta(self);
        out.absorb_meta(other);
        out
    }

    pub fn scale(&self, c: C64) -> EvalReport {
        let mut out = self.clone();
        out.value = self.value.scale(c);
        out.error_estimate *= c.norm();
        out
    }

    /// Left-multiplies by an exactly known matrix.
    pub fn lmul_exact(&self, m: &SquareMatrix) -> EvalReport {
        let mut out = self.clone();
        out.value = m * &self.value;
        out.error_estimate *= m.frobenius_norm();
        out
    }

    pub fn rmul_exact(&self, m: &SquareMatrix) -> EvalReport {
        let mut out = self.clone();
        out.value = &self.value * m;
        out.error_estimate *= m.frobenius_norm();
        out
    }

    fn absorb_meta(&mut self, other: &EvalReport) {
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
        for w in &other.warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
    }

    /// Ordered product of several reports.
    pub fn product(parts: &[&EvalReport]) -> EvalReport {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = acc.mul(p);
        }
        acc
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        let m = message.into();
        if !self.warnings.contains(&m) {
            self.warnings.push(m);
        }
    }
}

/// Geometric extrapolation of the remaining tail from the last two term norms;
/// for algebraically decaying terms it has the right order of magnitude.
pub(crate) fn ratio_tail(prev: f64, last: f64) -> f64 {
    if prev > 0.0 && last < prev {
        let r = last / prev;
        last * r / (1.0 - r)
    } else {
        last
    }
}

/// Accumulates series terms until the tail rule holds. Returns the report and
/// whether the rule was met (false means the iterator ran dry first).
pub(crate) fn accumulate_series<I>(order: usize, terms: I, spec: &SeriesSpec) -> Result<(EvalReport, bool)>
where
    I: Iterator<Item = Result<(SquareMatrix, f64)>>,
{
    let mut tail = SeriesTail::new(spec);
    let mut sum = SquareMatrix::zeros(order);
    let mut err = 0.0;
    let (mut prev, mut last) = (0.0, 0.0);
    let mut count = 0;
    for t in terms.take(spec.max_terms) {
        let (t, e) = t?;
        sum += &t;
        err += e;
        prev = last;
        last = t.frobenius_norm();
        count += 1;
        tail.push(last, sum.frobenius_norm());
        if tail.done() {
            break;
        }
    }
    let done = tail.done();
    let r = tail.finish(sum, err + if done { 0.0 } else { ratio_tail(prev, last) }, count);
    Ok((r, done))
}

/// Repeats `attempt(count)` with a doubling term budget until it reports that
/// the tail rule was met or `max_terms` is reached.
pub(crate) fn with_growing_terms<T, F>(initial: usize, spec: &SeriesSpec, mut attempt: F) -> Result<T>
where
    F: FnMut(usize) -> Result<(T, bool)>,
{
    let cap = spec.max_terms.max(spec.tail_run + 1);
    let mut count = initial.clamp(spec.tail_run + 1, cap);
    loop {
        let (out, done) = attempt(count)?;
        if done || count >= cap {
            return Ok(out);
        }
        count = (count * 2).min(cap);
    }
}

/// Marks a series report with the state of the moments it consumed.
pub(crate) fn merge_moment_state(r: &mut EvalReport, set: &MomentSet, used: usize) {
    r.evaluations += set.evaluations;
    for m in &set.moments[..used.min(set.moments.len())] {
        r.converged &= m.converged;
        for w in &m.warnings {
            r.warn(w.clone());
        }
    }
}

/// Sums `Σ term(n, Mₙ)` over shared-node moments `Mₙ`, recomputing with a
/// doubled moment count until the tail rule holds or `max_terms` is reached.
/// `term` returns the term and its propagated error.
pub(crate) fn moment_series<M, T>(
    order: usize,
    initial: usize,
    series: &SeriesSpec,
    mut moments: M,
    term: T,
) -> Result<EvalReport>
where
    M: FnMut(usize) -> Result<MomentSet>,
    T: Fn(usize, &EvalReport) -> Result<(SquareMatrix, f64)>,
{
    with_growing_terms(initial, series, |count| {
        let set = moments(count)?;
        let (mut r, done) =
            accumulate_series(order, set.moments.iter().enumerate().map(|(n, m)| term(n, m)), series)?;
        let used = r.evaluations;
        r.evaluations = 0;
        merge_moment_state(&mut r, &set, used);
        Ok((r, done))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_requires_consecutive_small_terms() {
        let spec = SeriesSpec { term_tol: 1e-3, max_terms: 10, tail_run: 2 };
        let mut t = SeriesTail::new(&spec);
        t.push(1e-6, 1.0);
        t.push(0.5, 1.0);
        t.push(1e-6, 1.0);
        assert!(!t.done());
        t.push(1e-7, 1.0);
        assert!(t.done());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec { max_levels: 2, ..Default::default() }.validate().is_err());
        assert!(SeriesSpec { tail_run: 1, ..Default::default() }.validate().is_err());
    }
}
