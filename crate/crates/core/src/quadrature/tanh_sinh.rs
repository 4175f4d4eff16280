use std::f64::consts::{FRAC_PI_2, PI};

use super::{EvalReport, QuadratureSpec};
use crate::error::{MatError, Result};
use crate::matcalc::{SquareMatrix, C64};
use crate::par;

/// A quadrature node: abscissa `x`, mapped point `t`, its complement `tc = 1 − t`
/// (unit rules only; computed without cancellation) and the Jacobian weight.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Node {
    pub t: f64,
    pub tc: f64,
    pub w: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    /// tanh-sinh on (0, 1).
    Unit,
    /// exp-sinh on (0, ∞).
    Halfline,
}

impl Rule {
    // Keeps min(t, 1 − t) ≥ 1e-250 and u ∈ [1e-100, 1e100].
    fn xmax(self) -> f64 {
        match self {
            Rule::Unit => (250.0 * 10f64.ln() / PI).asinh(),
            Rule::Halfline => (100.0 * 10f64.ln() / FRAC_PI_2).asinh(),
        }
    }

    fn node(self, x: f64) -> Node {
        match self {
            Rule::Unit => {
                let s = PI * x.sinh();
                let t = 1.0 / (1.0 + (-s).exp());
                let tc = 1.0 / (1.0 + s.exp());
                Node { t, tc, w: PI * x.cosh() * t * tc }
            }
            Rule::Halfline => {
                let u = (FRAC_PI_2 * x.sinh()).exp();
                Node { t: u, tc: f64::NAN, w: FRAC_PI_2 * x.cosh() * u }
            }
        }
    }

    /// Abscissae first used at `level` (step `2^-level`).
    pub(crate) fn new_nodes(self, level: usize) -> Vec<Node> {
        let xmax = self.xmax();
        let mut out = Vec::new();
        if level == 0 {
            let k = xmax.floor() as i64;
            for i in -k..=k {
                out.push(self.node(i as f64));
            }
        } else {
            let h = 0.5f64.powi(level as i32);
            let mut j = 1i64;
            loop {
                let x = j as f64 * h;
                if x > xmax {
                    break;
                }
                out.push(self.node(-x));
                out.push(self.node(x));
                j += 2;
            }
        }
        out
    }
}

pub(crate) fn step(level: usize) -> f64 {
    0.5f64.powi(level as i32)
}

/// Pairwise sum of `coef[i]·vals[i]` over an index range.
pub(crate) fn weighted_pairwise(coef: &[f64], vals: &[Option<SquareMatrix>], order: usize) -> SquareMatrix {
    fn go(coef: &[f64], vals: &[Option<SquareMatrix>], order: usize) -> SquareMatrix {
        if coef.len() <= 8 {
            let mut s = SquareMatrix::zeros(order);
            for (c, v) in coef.iter().zip(vals) {
                if let Some(v) = v {
                    if *c != 0.0 {
                        s.axpy(C64::new(*c, 0.0), v);
                    }
                }
            }
            return s;
        }
        let mid = coef.len() / 2;
        let mut a = go(&coef[..mid], &vals[..mid], order);
        a += &go(&coef[mid..], &vals[mid..], order);
        a
    }
    go(coef, vals, order)
}

/// Evaluates the integrand at every node of a level, in parallel, failing on the
/// first (lowest-index) error. Non-finite values become integrand errors.
pub(crate) fn evaluate_level<F>(nodes: &[Node], f: &F) -> Result<Vec<Option<SquareMatrix>>>
where
    F: Fn(&Node) -> Result<Option<SquareMatrix>> + Sync + Send,
{
    let vals = par::map_slice(nodes, |nd| f(nd));
    let mut out = Vec::with_capacity(vals.len());
    for (nd, v) in nodes.iter().zip(vals) {
        let v = v?;
        if let Some(m) = &v {
            if !m.is_finite() {
                return Err(MatError::Integrand { node: nd.t });
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Result of a shared-node moment integration: `∫ t^k f(t) dt` for k = 0..count.
#[derive(Clone, Debug)]
pub struct MomentSet {
    pub moments: Vec<EvalReport>,
    pub evaluations: usize,
    pub dropped_nodes: usize,
}

fn run<F>(rule: Rule, order: usize, count: usize, f: F, spec: &QuadratureSpec) -> Result<MomentSet>
where
    F: Fn(&Node) -> Result<Option<SquareMatrix>> + Sync + Send,
{
    spec.validate()?;
    let count = count.max(1);
    let mut sums: Vec<SquareMatrix> = vec![SquareMatrix::zeros(order); count];
    let mut diffs = vec![f64::INFINITY; count];
    let mut evaluations = 0usize;
    let mut dropped = 0usize;
    let mut converged = false;
    let mut budget_hit = false;
    for level in 0..=spec.max_levels {
        let nodes = rule.new_nodes(level);
        if level > 0 && evaluations + nodes.len() > spec.max_evals {
            budget_hit = true;
            break;
        }
        let vals = evaluate_level(&nodes, &f)?;
        evaluations += nodes.len();
        dropped += vals.iter().filter(|v| v.is_none()).count();
        let h = step(level);
        let mut coef: Vec<f64> = nodes.iter().map(|n| n.w).collect();
        for (k, sum) in sums.iter_mut().enumerate() {
            if k > 0 {
                for (c, n) in coef.iter_mut().zip(&nodes) {
                    *c *= n.t;
                }
            }
            let part = weighted_pairwise(&coef, &vals, order).scale_real(h);
            let next = if level == 0 { part } else { &sum.scale_real(0.5) + &part };
            diffs[k] = (&next - &*sum).frobenius_norm();
            *sum = next;
        }
        if level >= 3
            && sums.iter().zip(&diffs).all(|(s, &d)| d <= spec.tolerance_for(s.frobenius_norm()))
        {
            converged = true;
            break;
        }
    }
    let mut warnings = Vec::new();
    if dropped > 0 {
        warnings.push(format!("{dropped} quadrature nodes dropped (integrand not representable)"));
    }
    if budget_hit {
        warnings.push("quadrature evaluation budget exhausted".to_string());
    } else if !converged {
        warnings.push("quadrature reached max_levels without meeting tolerance".to_string());
    }
    let moments = sums
        .into_iter()
        .zip(diffs)
        .map(|(value, d)| {
            let ok = d <= spec.tolerance_for(value.frobenius_norm());
            let estimate = if d.is_finite() { d } else { value.frobenius_norm() };
            EvalReport {
                value,
                error_estimate: estimate,
                evaluations,
                converged: ok && dropped == 0,
                warnings: warnings.clone(),
            }
        })
        .collect();
    Ok(MomentSet { moments, evaluations, dropped_nodes: dropped })
}

/// Exp-sinh nodes with a per-node payload computed once, for nested integrals
/// whose inner integrand shares a parameter-independent factor.
pub(crate) struct CachedHalfline<T> {
    levels: Vec<Vec<(Node, T)>>,
}

impl<T: Send + Sync> CachedHalfline<T> {
    pub(crate) fn new<G>(max_levels: usize, g: G) -> Self
    where
        G: Fn(f64) -> T + Sync + Send,
    {
        let levels = (0..=max_levels)
            .map(|level| {
                let nodes = Rule::Halfline.new_nodes(level);
                let vals = par::map_slice(&nodes, |n| g(n.t));
                nodes.into_iter().zip(vals).collect()
            })
            .collect();
        Self { levels }
    }

    /// Sequential level-refined sum; returns the value, the last inter-level
    /// difference, the evaluation count and whether the tolerance was met.
    pub(crate) fn integrate<F>(&self, order: usize, f: F, spec: &QuadratureSpec) -> Result<EvalReport>
    where
        F: Fn(f64, &T) -> SquareMatrix,
    {
        let mut sum = SquareMatrix::zeros(order);
        let mut diff = f64::INFINITY;
        let mut evaluations = 0;
        let mut converged = false;
        for (level, nodes) in self.levels.iter().enumerate() {
            let vals: Vec<Option<SquareMatrix>> = nodes.iter().map(|(n, g)| Some(f(n.t, g))).collect();
            for (v, (n, _)) in vals.iter().zip(nodes) {
                if !v.as_ref().is_some_and(|m| m.is_finite()) {
                    return Err(MatError::Integrand { node: n.t });
                }
            }
            evaluations += nodes.len();
            let coef: Vec<f64> = nodes.iter().map(|(n, _)| n.w).collect();
            let part = weighted_pairwise(&coef, &vals, order).scale_real(step(level));
            let next = if level == 0 { part } else { &sum.scale_real(0.5) + &part };
            diff = (&next - &sum).frobenius_norm();
            sum = next;
            if level >= 3 && diff <= spec.tolerance_for(sum.frobenius_norm()) {
                converged = true;
                break;
            }
        }
        let mut r = EvalReport { value: sum, error_estimate: diff, evaluations, converged, warnings: vec![] };
        if !converged {
            r.warn("inner quadrature reached its level cap without meeting tolerance");
        }
        Ok(r)
    }
}

/// `∫₀¹ f(t) dt` by tanh-sinh. The integrand receives `(t, 1 − t)`, both accurate.
pub fn integrate_unit<F>(order: usize, f: F, spec: &QuadratureSpec) -> Result<EvalReport>
where
    F: Fn(f64, f64) -> Result<SquareMatrix> + Sync + Send,
{
    let set = run(Rule::Unit, order, 1, |n: &Node| f(n.t, n.tc).map(Some), spec)?;
    Ok(set.moments.into_iter().next().expect("one moment"))
}

/// `∫₀^∞ f(u) du` by exp-sinh.
pub fn integrate_halfline<F>(order: usize, f: F, spec: &QuadratureSpec) -> Result<EvalReport>
where
    F: Fn(f64) -> Result<SquareMatrix> + Sync + Send,
{
    let set = run(Rule::Halfline, order, 1, |n: &Node| f(n.t).map(Some), spec)?;
    Ok(set.moments.into_iter().next().expect("one moment"))
}

/// `∫₀¹ t^k f(t) dt` for `k = 0..count` on one shared node set.
///
/// `f` may return `None` at nodes where it cannot be represented; such nodes
/// contribute zero and are counted in the report.
pub fn integrate_unit_moments<F>(order: usize, count: usize, f: F, spec: &QuadratureSpec) -> Result<MomentSet>
where
    F: Fn(f64, f64) -> Result<Option<SquareMatrix>> + Sync + Send,
{
    run(Rule::Unit, order, count, |n: &Node| f(n.t, n.tc), spec)
}
