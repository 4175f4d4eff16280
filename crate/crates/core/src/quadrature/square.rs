//! Tensor-product tanh-sinh rule on the unit square.

use super::tanh_sinh::{evaluate_level, step, weighted_pairwise, Node, Rule};
use super::{EvalReport, QuadratureSpec};
use crate::error::{MatError, Result};
use crate::matcalc::SquareMatrix;
use crate::par;

const CHUNK: usize = 1 << 15;
const PAIR_CAP: usize = 20_000_000;

/// `∫₀¹∫₀¹ g(u, v) du dv` where `g` is assembled from per-axis factors.
///
/// `fu`/`fv` are evaluated once per axis node (they carry everything that depends
/// on one coordinate only); `pair` combines them at each node pair. Axis factors
/// returning `None` zero out the whole row/column.
pub fn integrate_unit_square<FU, FV, G>(
    order: usize,
    fu: FU,
    fv: FV,
    pair: G,
    spec: &QuadratureSpec,
) -> Result<EvalReport>
where
    FU: Fn(f64, f64) -> Result<Option<SquareMatrix>> + Sync + Send,
    FV: Fn(f64, f64) -> Result<Option<SquareMatrix>> + Sync + Send,
    G: Fn((f64, f64), &SquareMatrix, (f64, f64), &SquareMatrix) -> Result<SquareMatrix> + Sync + Send,
{
    spec.validate()?;
    let pair_budget = spec.max_evals.saturating_mul(spec.max_evals).min(PAIR_CAP);
    let mut un: Vec<Node> = Vec::new();
    let mut uv: Vec<Option<SquareMatrix>> = Vec::new();
    let mut vn: Vec<Node> = Vec::new();
    let mut vv: Vec<Option<SquareMatrix>> = Vec::new();
    let mut sum = SquareMatrix::zeros(order);
    let mut diff = f64::INFINITY;
    let mut pairs_done = 0usize;
    let mut axis_evals = 0usize;
    let mut converged = false;
    let mut budget_hit = false;

    for level in 0..=spec.max_levels {
        let new_u = Rule::Unit.new_nodes(level);
        let n_old = un.len();
        let expected_pairs = (n_old + new_u.len()).pow(2) - n_old * n_old;
        if level > 0 && pairs_done + expected_pairs > pair_budget {
            budget_hit = true;
            break;
        }
        let new_uv = evaluate_level(&new_u, &|n: &Node| fu(n.t, n.tc))?;
        let new_vv = evaluate_level(&new_u, &|n: &Node| fv(n.t, n.tc))?;
        axis_evals += 2 * new_u.len();
        un.extend(new_u.iter().copied());
        uv.extend(new_uv);
        vn.extend(new_u.iter().copied());
        vv.extend(new_vv);
        let total = un.len();
        // Pairs touching at least one new index, in a fixed order.
        let mut idx: Vec<(u32, u32)> = Vec::with_capacity(expected_pairs);
        for i in 0..total {
            let j0 = if i < n_old { n_old } else { 0 };
            for j in j0..total {
                if uv[i].is_some() && vv[j].is_some() {
                    idx.push((i as u32, j as u32));
                }
            }
        }
        pairs_done += expected_pairs;
        let mut chunk_sums = Vec::new();
        for chunk in idx.chunks(CHUNK) {
            let vals = par::map_slice(chunk, |&(i, j)| {
                let (i, j) = (i as usize, j as usize);
                let (a, b) = (&un[i], &vn[j]);
                let m = pair((a.t, a.tc), uv[i].as_ref().unwrap(), (b.t, b.tc), vv[j].as_ref().unwrap())?;
                if !m.is_finite() {
                    return Err(MatError::Integrand { node: a.t });
                }
                Ok(Some(m))
            });
            let mut ok = Vec::with_capacity(vals.len());
            for v in vals {
                ok.push(v?);
            }
            let coef: Vec<f64> = chunk.iter().map(|&(i, j)| un[i as usize].w * vn[j as usize].w).collect();
            chunk_sums.push(weighted_pairwise(&coef, &ok, order));
        }
        let h = step(level);
        let part = par::pairwise_sum(&chunk_sums, order).scale_real(h * h);
        let next = if level == 0 { part } else { &sum.scale_real(0.25) + &part };
        diff = (&next - &sum).frobenius_norm();
        sum = next;
        if level >= 3 && diff <= spec.tolerance_for(sum.frobenius_norm()) {
            converged = true;
            break;
        }
    }
    let mut warnings = Vec::new();
    if budget_hit {
        warnings.push("double-integral pair budget exhausted".to_string());
    } else if !converged {
        warnings.push("double integral reached max_levels without meeting tolerance".to_string());
    }
    let dropped = uv.iter().chain(vv.iter()).filter(|v| v.is_none()).count();
    if dropped > 0 {
        warnings.push(format!("{dropped} axis nodes dropped (integrand not representable)"));
    }
    let estimate = if diff.is_finite() { diff } else { sum.frobenius_norm() };
    Ok(EvalReport {
        value: sum,
        error_estimate: estimate,
        evaluations: pairs_done + axis_evals,
        converged: converged && dropped == 0,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_integral() {
        let spec = QuadratureSpec::default();
        let r = integrate_unit_square(
            1,
            |t, tc| Ok(Some(SquareMatrix::real_scalar(1, t.powf(-0.5) * tc.powf(-0.5)))),
            |t, _| Ok(Some(SquareMatrix::real_scalar(1, t))),
            |_, a, _, b| Ok(a * b),
            &spec,
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value.get(0, 0).re - std::f64::consts::PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn coupled_integrand() {
        // ∫∫ 1/(1 + u + v) = 3 ln 3 − 4 ln 2
        let spec = QuadratureSpec::default();
        let one = |_: f64, _: f64| Ok(Some(SquareMatrix::identity(1)));
        let r = integrate_unit_square(
            1,
            one,
            one,
            |(u, _), _, (v, _), _| Ok(SquareMatrix::real_scalar(1, 1.0 / (1.0 + u + v))),
            &spec,
        )
        .unwrap();
        let want = 3.0 * 3f64.ln() - 4.0 * 2f64.ln();
        assert!((r.value.get(0, 0).re - want).abs() < 1e-11);
    }
}
