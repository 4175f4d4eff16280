//! Identity verification: random commuting draws, residuals against an error
//! budget, and aggregated reports.

pub mod cases;
pub mod family;
pub mod oracle;
pub mod registry;

use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::par;
use crate::quadrature::EvalReport;
pub use cases::{Budget, CaseClass, IdentityCase, CATALOG};

/// ‖L − R‖_F / max(‖L‖_F, ‖R‖_F, 1).
pub fn residual(lhs: &EvalReport, rhs: &EvalReport) -> f64 {
    let scale = lhs.value.frobenius_norm().max(rhs.value.frobenius_norm()).max(1.0);
    (&lhs.value - &rhs.value).frobenius_norm() / scale
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Overrides the case's default number of draws.
    pub draws: Option<usize>,
    pub seed: u64,
    /// Matrix orders, cycled over the draws.
    pub orders: Vec<usize>,
    /// Overrides the factor of propagated-error budgets.
    pub safety_factor: Option<f64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { draws: None, seed: 20_240_917, orders: vec![1, 2, 3], safety_factor: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawStatus {
    Pass,
    Fail,
    /// Unconverged evaluation or oracle failure; never counted as a pass.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawRecord {
    pub draw: usize,
    pub seed: u64,
    pub stream: u64,
    pub order: usize,
    pub residual: Option<f64>,
    pub budget: Option<f64>,
    pub status: DrawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub case_id: String,
    pub anchor: String,
    pub class: String,
    pub draws: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub failures: usize,
    pub skipped: usize,
    pub records: Vec<DrawRecord>,
}

impl IdentityReport {
    pub(crate) fn from_records(id: &str, anchor: &str, class: CaseClass, draws: usize, records: Vec<DrawRecord>) -> Self {
        let res: Vec<f64> = records.iter().filter(|r| r.status != DrawStatus::Skipped).filter_map(|r| r.residual).collect();
        let max_residual = res.iter().copied().fold(0.0, f64::max);
        let mean_residual = if res.is_empty() { 0.0 } else { par::pairwise_sum_f64(&res) / res.len() as f64 };
        Self {
            case_id: id.to_string(),
            anchor: anchor.to_string(),
            class: class_name(class).to_string(),
            draws,
            max_residual,
            mean_residual,
            failures: records.iter().filter(|r| r.status == DrawStatus::Fail).count(),
            skipped: records.iter().filter(|r| r.status == DrawStatus::Skipped).count(),
            records,
        }
    }

    /// Whether the report counts against the suite (assert cases only).
    pub fn counts(&self) -> bool {
        self.class == class_name(CaseClass::Assert)
    }

    pub fn passed(&self) -> bool {
        !self.counts() || self.failures == 0
    }

    pub fn passes(&self) -> usize {
        self.records.iter().filter(|r| r.status == DrawStatus::Pass).count()
    }
}

fn class_name(c: CaseClass) -> &'static str {
    match c {
        CaseClass::Assert => "assert",
        CaseClass::Diagnostic => "diagnostic",
        CaseClass::Probe => "probe",
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// RNG stream of one draw: depends on the case id and draw index only.
pub fn draw_stream(case_id: &str, draw: usize) -> u64 {
    fnv1a(case_id).wrapping_add(draw as u64)
}

fn budget_for(case: &IdentityCase, opts: &CheckOptions, order: usize, lhs: &EvalReport, rhs: &EvalReport) -> f64 {
    match case.budget {
        Budget::Fixed(t) => t,
        Budget::Propagated { factor, floor } => {
            let scale = lhs.value.frobenius_norm().max(rhs.value.frobenius_norm()).max(1.0);
            let factor = opts.safety_factor.unwrap_or(factor);
            (factor * (lhs.error_estimate + rhs.error_estimate) / scale).max(floor)
        }
        Budget::FiniteDifference { scalar, matrix } => {
            if order == 1 {
                scalar
            } else {
                matrix
            }
        }
    }
}

fn skip_note(r: &EvalReport) -> String {
    if r.warnings.is_empty() {
        "evaluation did not converge".to_string()
    } else {
        format!("not converged: {}", r.warnings.join("; "))
    }
}

fn run_draw(case: &IdentityCase, opts: &CheckOptions, cfg: &EvalConfig, draw: usize) -> Result<DrawRecord> {
    let order = opts.orders[draw % opts.orders.len()];
    let stream = draw_stream(case.id, draw);
    let rng = family::stream_rng(opts.seed, stream);
    let mut ctx = cases::Ctx::new(order, draw, opts.orders.len(), rng, case.argument_box)?;
    let mut rec = DrawRecord { draw, seed: opts.seed, stream, order, residual: None, budget: None, status: DrawStatus::Pass, note: None };
    let outcome = match (case.run)(&mut ctx, cfg) {
        Ok(o) => o,
        Err(MatError::Generation(msg)) => return Err(MatError::Generation(msg)),
        Err(e @ MatError::Oracle(_)) => {
            rec.status = DrawStatus::Skipped;
            rec.note = Some(e.to_string());
            return Ok(rec);
        }
        Err(e) => {
            rec.status = if case.class == CaseClass::Assert { DrawStatus::Fail } else { DrawStatus::Skipped };
            rec.note = Some(e.to_string());
            return Ok(rec);
        }
    };
    // The pair with the largest residual-to-budget ratio represents the draw.
    let mut worst: Option<(f64, f64)> = None;
    for (lhs, rhs) in &outcome.pairs {
        for side in [lhs, rhs] {
            if !side.converged {
                rec.status = DrawStatus::Skipped;
                rec.note = Some(skip_note(side));
            }
        }
        let r = residual(lhs, rhs);
        let b = budget_for(case, opts, order, lhs, rhs);
        let ratio = if r.is_nan() { f64::INFINITY } else { r / b };
        if worst.is_none_or(|(wr, wb)| ratio > wr / wb) {
            worst = Some((r, b));
        }
    }
    if let Some((r, b)) = worst {
        rec.residual = Some(r);
        rec.budget = Some(b);
        if rec.status == DrawStatus::Pass && !(r <= b) {
            rec.status = DrawStatus::Fail;
        }
    }
    Ok(rec)
}

/// Runs one catalog case. Draws are independent and may run concurrently;
/// the report is assembled in draw order, so results do not depend on
/// scheduling.
pub fn check_identity(case: &IdentityCase, opts: &CheckOptions, cfg: &EvalConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    if opts.orders.is_empty() || opts.orders.contains(&0) {
        return Err(MatError::Parse("matrix orders must be a non-empty list of positive integers".into()));
    }
    let draws = opts.draws.unwrap_or(case.draws);
    let records = par::map_indexed(draws, |d| run_draw(case, opts, cfg, d)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::from_records(case.id, case.anchor, case.class, draws, records))
}

pub fn find_case(id: &str) -> Result<&'static IdentityCase> {
    cases::find(id).ok_or_else(|| MatError::UnknownId {
        id: id.to_string(),
        valid: CATALOG.iter().map(|c| c.id).collect::<Vec<_>>().join(", "),
    })
}

/// Runs the named cases, or the whole catalog for `"all"`.
pub fn check_many(ids: &[&str], opts: &CheckOptions, cfg: &EvalConfig) -> Result<Vec<IdentityReport>> {
    let selected: Vec<&IdentityCase> = if ids.contains(&"all") {
        CATALOG.iter().collect()
    } else {
        ids.iter().map(|i| find_case(i)).collect::<Result<_>>()?
    };
    selected.into_iter().map(|c| check_identity(c, opts, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::SquareMatrix;

    #[test]
    fn residual_is_normalized() {
        let a = EvalReport::exact(SquareMatrix::real_scalar(1, 100.0));
        let b = EvalReport::exact(SquareMatrix::real_scalar(1, 101.0));
        assert!((residual(&a, &b) - 1.0 / 101.0).abs() < 1e-15);
        let small = EvalReport::exact(SquareMatrix::real_scalar(1, 1e-3));
        let zero = EvalReport::exact(SquareMatrix::zeros(1));
        assert!((residual(&small, &zero) - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn catalog_ids_are_unique() {
        let mut ids: Vec<_> = CATALOG.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CATALOG.len());
    }

    #[test]
    fn unknown_case_lists_valid_ids() {
        let err = find_case("nope").unwrap_err();
        assert!(matches!(err, MatError::UnknownId { ref valid, .. } if valid.contains("pfaff-4.11")));
    }
}
