//! Appell F₁, F₂ and Lauricella F_D^(3) functions built on the new extended
//! beta matrix function: multiple series (summed by total degree), integral
//! representations, derivative right-hand sides and kernel-shift recurrences.

use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::hyper::{geometric_terms, Kernel, NeBase};
use crate::matcalc::{pochhammer, ExpPencil, SquareMatrix, C64, ONE};
use crate::quadrature::{
    accumulate_series, integrate_unit, integrate_unit_square, merge_moment_state, with_growing_terms, EvalReport,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppellParams {
    #[serde(alias = "A")]
    pub a: SquareMatrix,
    #[serde(alias = "B")]
    pub b: SquareMatrix,
    #[serde(default, alias = "Aprime")]
    pub a_prime: Option<SquareMatrix>,
    #[serde(default, alias = "Bprime")]
    pub b_prime: Option<SquareMatrix>,
    #[serde(alias = "A1")]
    pub a1: SquareMatrix,
    #[serde(alias = "B1")]
    pub b1: SquareMatrix,
    #[serde(alias = "B2")]
    pub b2: SquareMatrix,
    #[serde(default, alias = "B3")]
    pub b3: Option<SquareMatrix>,
    #[serde(alias = "C1")]
    pub c1: SquareMatrix,
    #[serde(default, alias = "C2")]
    pub c2: Option<SquareMatrix>,
    #[serde(alias = "Y")]
    pub y: SquareMatrix,
    #[serde(default)]
    pub z: C64,
    #[serde(default)]
    pub w: C64,
    #[serde(default)]
    pub v: C64,
}

fn required<'a>(m: &'a Option<SquareMatrix>, name: &str) -> Result<&'a SquareMatrix> {
    m.as_ref().ok_or_else(|| MatError::Parse(format!("parameter {name} is required")))
}

impl AppellParams {
    pub fn a_prime(&self) -> Result<&SquareMatrix> {
        required(&self.a_prime, "Aprime")
    }
    pub fn b_prime(&self) -> Result<&SquareMatrix> {
        required(&self.b_prime, "Bprime")
    }
    pub fn b3(&self) -> Result<&SquareMatrix> {
        required(&self.b3, "B3")
    }
    pub fn c2(&self) -> Result<&SquareMatrix> {
        required(&self.c2, "C2")
    }

    pub fn order(&self) -> usize {
        self.a1.order()
    }

    pub fn at(&self, z: C64, w: C64, v: C64) -> Self {
        Self { z, w, v, ..self.clone() }
    }
}

/// Which kernel-shift recurrence: the (B−(A+I)) relation or the one derived
/// from B·₁F₁(A;B) − B·₁F₁(A−I;B) = X·₁F₁(A;B+I).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recurrence {
    KernelShift566,
    KernelShift57,
}

// ---------------------------------------------------------------------------
// Hypotheses

fn require_small(args: &[C64], what: &str) -> Result<()> {
    for z in args {
        if z.norm() >= 1.0 {
            return Err(MatError::ConvergenceDomain(format!("{what} needs every argument inside |z| < 1, got |z| = {}", z.norm())));
        }
    }
    Ok(())
}

fn require_f2_domain(z: C64, w: C64) -> Result<()> {
    let s = z.norm() + w.norm();
    if s < 1.0 {
        Ok(())
    } else {
        Err(MatError::ConvergenceDomain(format!("F₂ needs |z| + |w| < 1, got {s}")))
    }
}

/// Hypotheses shared by F₁ and F_D (B-parameters may also be zero).
fn lauricella_checks(p: &AppellParams, bs: &[&SquareMatrix], cfg: &EvalConfig, anchor: &str) -> Result<()> {
    let mut all = vec![&p.a, &p.b, &p.a1, &p.c1, &p.y];
    all.extend_from_slice(bs);
    cfg.require_same_order(&all)?;
    cfg.require_positive_stable(&p.a, "A", anchor)?;
    cfg.require_positive_stable(&p.b, "B", anchor)?;
    cfg.require_positive_stable(&p.a1, "A1", anchor)?;
    for (i, b) in bs.iter().enumerate() {
        cfg.require_positive_stable_or_zero(b, &format!("B{}", i + 1), anchor)?;
    }
    cfg.require_positive_stable(&p.c1, "C1", anchor)?;
    cfg.require_positive_stable(&(&p.c1 - &p.a1), "C1 − A1", anchor)?;
    cfg.require_positive_stable_or_zero(&p.y, "Y", anchor)
}

fn f2_checks(p: &AppellParams, cfg: &EvalConfig, anchor: &str) -> Result<()> {
    let (ap, bp, c2) = (p.a_prime()?, p.b_prime()?, p.c2()?);
    cfg.require_same_order(&[&p.a, &p.b, ap, bp, &p.a1, &p.b1, &p.b2, &p.c1, c2, &p.y])?;
    for (m, role) in [(&p.a, "A"), (ap, "A′"), (&p.b, "B"), (bp, "B′"), (&p.a1, "A1"), (&p.b1, "B1"), (&p.b2, "B2"), (&p.c1, "C1"), (c2, "C2")] {
        cfg.require_positive_stable(m, role, anchor)?;
    }
    cfg.require_positive_stable(&(&p.c1 - &p.b1), "C1 − B1", anchor)?;
    cfg.require_positive_stable(&(c2 - &p.b2), "C2 − B2", anchor)?;
    cfg.require_positive_stable_or_zero(&p.y, "Y", anchor)
}

// ---------------------------------------------------------------------------
// Shared evaluation cores. Kernels are passed explicitly so that recurrences can
// shift them past the defining hypotheses.

/// (B)ₖ zᵏ/k! for k < count.
fn scaled_pochhammer(b: &SquareMatrix, z: C64, count: usize) -> Vec<SquareMatrix> {
    let mut out = Vec::with_capacity(count);
    let mut cur = SquareMatrix::identity(b.order());
    for k in 0..count {
        if k > 0 {
            cur = (&cur * &b.shift_real((k - 1) as f64)).scale(z / k as f64);
        }
        out.push(cur.clone());
    }
    out
}

/// Total-degree shells Σ_{m₁+…=N} P₁[m₁]·P₂[m₂]·…, order of factors kept.
fn shells(tables: &[Vec<SquareMatrix>], count: usize) -> Vec<SquareMatrix> {
    let n = tables[0][0].order();
    let mut acc = tables[0].clone();
    for t in &tables[1..] {
        let mut next = vec![SquareMatrix::zeros(n); count];
        for (total, slot) in next.iter_mut().enumerate() {
            for k in 0..=total {
                *slot += &(&acc[k] * &t[total - k]);
            }
        }
        acc = next;
    }
    acc
}

/// Σ_N 𝔅_Y(A₁+N, C₁−A₁)[𝔅(A₁, C₁−A₁)]⁻¹·S_N for each argument tuple, S_N the
/// Pochhammer shell of degree N.
fn lauricella_series_core(
    base: &NeBase,
    bs: &[&SquareMatrix],
    points: &[Vec<C64>],
    cfg: &EvalConfig,
) -> Result<Vec<EvalReport>> {
    let n = base.p.order();
    let zmax = points.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let ninv = &base.ninv;
    let ninv_norm = ninv.value.frobenius_norm();
    let mut out = with_growing_terms(geometric_terms(zmax, &cfg.series), &cfg.series, |count| {
        let set = base.moments(count, cfg)?;
        let mut all_done = true;
        let mut reports = Vec::with_capacity(points.len());
        for args in points {
            let tables: Vec<_> = bs.iter().zip(args).map(|(b, &z)| scaled_pochhammer(b, z, count)).collect();
            let sh = shells(&tables, count);
            let terms = set.moments.iter().zip(&sh).map(|(m, s)| {
                let left = &m.value * &ninv.value;
                Ok((&left * s, m.error_estimate * ninv_norm * s.frobenius_norm()))
            });
            let (mut r, done) = accumulate_series(n, terms, &cfg.series)?;
            let used = r.evaluations;
            r.evaluations = 0;
            merge_moment_state(&mut r, &set, used);
            r.error_estimate += r.value.frobenius_norm() * ninv.error_estimate / ninv_norm.max(f64::MIN_POSITIVE);
            all_done &= done;
            reports.push(r);
        }
        Ok((reports, all_done))
    })?;
    for r in &mut out {
        base.finish(r);
    }
    Ok(out)
}

/// ∫₀¹ K·u^{A₁−I}(1−u)^{C₁−A₁−I}[𝔅(A₁, C₁−A₁)]⁻¹ Π(1−zᵢu)^{−Bᵢ} du.
fn lauricella_integral_core(base: &NeBase, bs: &[&SquareMatrix], args: &[C64], cfg: &EvalConfig) -> Result<EvalReport> {
    let n = base.p.order();
    let pp = ExpPencil::new(&base.p.shift_real(-1.0));
    let pq = ExpPencil::new(&base.q.shift_real(-1.0));
    let bins: Vec<(ExpPencil, C64)> =
        bs.iter().zip(args).filter(|(b, z)| !b.is_zero() && **z != C64::new(0.0, 0.0)).map(|(b, &z)| (ExpPencil::new(&b.scale_real(-1.0)), z)).collect();
    let ninv = &base.ninv;
    let mut r = integrate_unit(
        n,
        |t, tc| {
            let Some(k) = base.kernel.eval_scaled(0.0, 1.0 / (t * tc))? else {
                return Ok(SquareMatrix::zeros(n));
            };
            let mut acc = &(&(&k * &pp.real_power(t)) * &pq.real_power(tc)) * &ninv.value;
            for (pb, z) in &bins {
                acc = &acc * &pb.eval((ONE - z * t).ln());
            }
            Ok(acc)
        },
        &cfg.quadrature,
    )?;
    base.finish(&mut r);
    let rel = ninv.error_estimate / ninv.value.frobenius_norm().max(f64::MIN_POSITIVE);
    r.error_estimate += r.value.frobenius_norm() * rel;
    Ok(r)
}

fn lauricella_base(kernel: Kernel, a1: &SquareMatrix, c1: &SquareMatrix, cfg: &EvalConfig) -> Result<NeBase> {
    NeBase::from_kernel(kernel, a1, &(c1 - a1), cfg)
}

struct F2Bases {
    first: NeBase,
    second: NeBase,
}

fn f2_series_core(a1: &SquareMatrix, bases: &F2Bases, points: &[(C64, C64)], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    let n = a1.order();
    let smax = points.iter().map(|(z, w)| z.norm() + w.norm()).fold(0.0, f64::max);
    let (b1, b2) = (&bases.first, &bases.second);
    let mut out = with_growing_terms(geometric_terms(smax, &cfg.series), &cfg.series, |count| {
        let s1 = b1.moments(count, cfg)?;
        let s2 = b2.moments(count, cfg)?;
        let u: Vec<_> = s1.moments.iter().map(|m| m.mul(&b1.ninv)).collect();
        let v: Vec<_> = s2.moments.iter().map(|m| m.mul(&b2.ninv)).collect();
        let mut all_done = true;
        let mut reports = Vec::with_capacity(points.len());
        for &(z, w) in points {
            let uz = scale_table(&u, z);
            let vw = scale_table(&v, w);
            let mut poch = SquareMatrix::identity(n);
            let terms = (0..count).map(|total| {
                if total > 0 {
                    poch = &poch * &a1.shift_real((total - 1) as f64);
                }
                let mut shell = SquareMatrix::zeros(n);
                let mut err = 0.0;
                for m in 0..=total {
                    let (x, ex) = &uz[m];
                    let (y, ey) = &vw[total - m];
                    shell += &(x * y);
                    err += ex * y.frobenius_norm() + x.frobenius_norm() * ey;
                }
                Ok((&poch * &shell, err * poch.frobenius_norm()))
            });
            let (mut r, done) = accumulate_series(n, terms, &cfg.series)?;
            let used = r.evaluations;
            r.evaluations = 0;
            merge_moment_state(&mut r, &s1, used);
            merge_moment_state(&mut r, &s2, used);
            all_done &= done;
            reports.push(r);
        }
        Ok((reports, all_done))
    })?;
    for r in &mut out {
        b1.finish(r);
        b2.finish(r);
    }
    Ok(out)
}

/// uₖ zᵏ/k! with the scaled error.
fn scale_table(u: &[EvalReport], z: C64) -> Vec<(SquareMatrix, f64)> {
    let mut c = ONE;
    u.iter()
        .enumerate()
        .map(|(k, m)| {
            if k > 0 {
                c *= z / k as f64;
            }
            (m.value.scale(c), m.error_estimate * c.norm())
        })
        .collect()
}

fn f2_integral_core(a1: &SquareMatrix, bases: &F2Bases, z: C64, w: C64, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = a1.order();
    let side = |base: &NeBase| {
        let pp = ExpPencil::new(&base.p.shift_real(-1.0));
        let pq = ExpPencil::new(&base.q.shift_real(-1.0));
        (pp, pq)
    };
    let (p1, q1) = side(&bases.first);
    let (p2, q2) = side(&bases.second);
    let pa = ExpPencil::new(&a1.scale_real(-1.0));
    let axis = |base: &NeBase, pp: &ExpPencil, pq: &ExpPencil, t: f64, tc: f64| -> Result<Option<SquareMatrix>> {
        Ok(base.kernel.eval_scaled(0.0, 1.0 / (t * tc))?.map(|k| &(&(&k * &pp.real_power(t)) * &pq.real_power(tc)) * &base.ninv.value))
    };
    let mut r = integrate_unit_square(
        n,
        |u, uc| axis(&bases.first, &p1, &q1, u, uc),
        |v, vc| axis(&bases.second, &p2, &q2, v, vc),
        |(u, _), fu, (v, _), fv| Ok(&(&pa.eval((ONE - z * u - w * v).ln()) * fu) * fv),
        &cfg.quadrature,
    )?;
    for b in [&bases.first, &bases.second] {
        b.finish(&mut r);
        let rel = b.ninv.error_estimate / b.ninv.value.frobenius_norm().max(f64::MIN_POSITIVE);
        r.error_estimate += r.value.frobenius_norm() * rel;
    }
    Ok(r)
}

fn f2_bases(
    (a, b): (&SquareMatrix, &SquareMatrix),
    (ap, bp): (&SquareMatrix, &SquareMatrix),
    y: &SquareMatrix,
    (b1, c1): (&SquareMatrix, &SquareMatrix),
    (b2, c2): (&SquareMatrix, &SquareMatrix),
    cfg: &EvalConfig,
) -> Result<F2Bases> {
    Ok(F2Bases {
        first: NeBase::from_kernel(Kernel::new(a, b, y, cfg)?, b1, &(c1 - b1), cfg)?,
        second: NeBase::from_kernel(Kernel::new(ap, bp, y, cfg)?, b2, &(c2 - b2), cfg)?,
    })
}

// ---------------------------------------------------------------------------
// F₁

const F1_DEF: &str = "Eq. (2eq1)";
const F1_INT: &str = "Thm 5.1, Eq. (i1)";

fn f1_base(p: &AppellParams, cfg: &EvalConfig, anchor: &str) -> Result<NeBase> {
    lauricella_checks(p, &[&p.b1, &p.b2], cfg, anchor)?;
    lauricella_base(Kernel::new(&p.a, &p.b, &p.y, cfg)?, &p.a1, &p.c1, cfg)
}

/// F₁^{(A,B)}(A₁, B₁, B₂; C₁; z, w; Y) by its double series.
pub fn appell_f1_series(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(appell_f1_series_multi(p, &[(p.z, p.w)], cfg)?.remove(0))
}

/// The double series at several (z, w) from one moment table.
pub fn appell_f1_series_multi(p: &AppellParams, points: &[(C64, C64)], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    for (z, w) in points {
        require_small(&[*z, *w], "F₁")?;
    }
    let base = f1_base(p, cfg, F1_DEF)?;
    let pts: Vec<Vec<C64>> = points.iter().map(|(z, w)| vec![*z, *w]).collect();
    lauricella_series_core(&base, &[&p.b1, &p.b2], &pts, cfg)
}

pub fn appell_f1_integral(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    require_small(&[p.z, p.w], "F₁")?;
    let base = f1_base(p, cfg, F1_INT)?;
    lauricella_integral_core(&base, &[&p.b1, &p.b2], &[p.z, p.w], cfg)
}

// ---------------------------------------------------------------------------
// F₂

const F2_DEF: &str = "Eq. (2eq2)";
const F2_INT: &str = "Thm 5.2, Eq. (s33)";

fn f2_default_bases(p: &AppellParams, cfg: &EvalConfig) -> Result<F2Bases> {
    f2_bases((&p.a, &p.b), (p.a_prime()?, p.b_prime()?), &p.y, (&p.b1, &p.c1), (&p.b2, p.c2()?), cfg)
}

/// F₂^{(A,B,A′,B′)}(A₁, B₁, B₂; C₁, C₂; z, w; Y) by its double series.
pub fn appell_f2_series(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(appell_f2_series_multi(p, &[(p.z, p.w)], cfg)?.remove(0))
}

pub fn appell_f2_series_multi(p: &AppellParams, points: &[(C64, C64)], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    for &(z, w) in points {
        require_f2_domain(z, w)?;
    }
    f2_checks(p, cfg, F2_DEF)?;
    f2_series_core(&p.a1, &f2_default_bases(p, cfg)?, points, cfg)
}

pub fn appell_f2_integral(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    require_f2_domain(p.z, p.w)?;
    f2_checks(p, cfg, F2_INT)?;
    f2_integral_core(&p.a1, &f2_default_bases(p, cfg)?, p.z, p.w, cfg)
}

// ---------------------------------------------------------------------------
// F_D^(3)

const FD_DEF: &str = "Eq. (2eq3)";
const FD_INT: &str = "Thm 5.3, Eq. (3.12)";

fn fd_base(p: &AppellParams, cfg: &EvalConfig, anchor: &str) -> Result<NeBase> {
    lauricella_checks(p, &[&p.b1, &p.b2, p.b3()?], cfg, anchor)?;
    lauricella_base(Kernel::new(&p.a, &p.b, &p.y, cfg)?, &p.a1, &p.c1, cfg)
}

/// F_D^{(3;A,B)}(A₁, B₁, B₂, B₃; C₁; z, w, v) by its triple series.
pub fn lauricella_fd3_series(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(lauricella_fd3_series_multi(p, &[(p.z, p.w, p.v)], cfg)?.remove(0))
}

pub fn lauricella_fd3_series_multi(p: &AppellParams, points: &[(C64, C64, C64)], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    for (z, w, v) in points {
        require_small(&[*z, *w, *v], "F_D")?;
    }
    let base = fd_base(p, cfg, FD_DEF)?;
    let pts: Vec<Vec<C64>> = points.iter().map(|(z, w, v)| vec![*z, *w, *v]).collect();
    lauricella_series_core(&base, &[&p.b1, &p.b2, p.b3()?], &pts, cfg)
}

pub fn lauricella_fd3_integral(p: &AppellParams, cfg: &EvalConfig) -> Result<EvalReport> {
    require_small(&[p.z, p.w, p.v], "F_D")?;
    let base = fd_base(p, cfg, FD_INT)?;
    lauricella_integral_core(&base, &[&p.b1, &p.b2, p.b3()?], &[p.z, p.w, p.v], cfg)
}

// ---------------------------------------------------------------------------
// Individual series coefficients (without the argument powers)

fn multi_indices(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..degree {
        let mut stack = vec![(Vec::new(), total)];
        while let Some((prefix, left)) = stack.pop() {
            if prefix.len() + 1 == vars {
                let mut idx = prefix;
                idx.push(left);
                out.push(idx);
                continue;
            }
            for k in (0..=left).rev() {
                let mut next = prefix.clone();
                next.push(k);
                stack.push((next, left - k));
            }
        }
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn lauricella_coefficients(base: &NeBase, bs: &[&SquareMatrix], degree: usize, cfg: &EvalConfig) -> Result<Vec<(Vec<usize>, SquareMatrix)>> {
    let set = base.moments(degree, cfg)?;
    Ok(multi_indices(bs.len(), degree)
        .into_iter()
        .map(|idx| {
            let total: usize = idx.iter().sum();
            let mut c = &set.moments[total].value * &base.ninv.value;
            let mut fact = 1.0;
            for (b, &k) in bs.iter().zip(&idx) {
                c = &c * &pochhammer(b, k);
                fact *= factorial(k);
            }
            (idx, c.scale_real(1.0 / fact))
        })
        .collect())
}

/// Coefficients of zᵐwⁿ in F₁ for m + n < degree.
pub fn appell_f1_coefficients(p: &AppellParams, degree: usize, cfg: &EvalConfig) -> Result<Vec<(Vec<usize>, SquareMatrix)>> {
    let base = f1_base(p, cfg, F1_DEF)?;
    lauricella_coefficients(&base, &[&p.b1, &p.b2], degree, cfg)
}

pub fn lauricella_fd3_coefficients(p: &AppellParams, degree: usize, cfg: &EvalConfig) -> Result<Vec<(Vec<usize>, SquareMatrix)>> {
    let base = fd_base(p, cfg, FD_DEF)?;
    lauricella_coefficients(&base, &[&p.b1, &p.b2, p.b3()?], degree, cfg)
}

pub fn appell_f2_coefficients(p: &AppellParams, degree: usize, cfg: &EvalConfig) -> Result<Vec<(Vec<usize>, SquareMatrix)>> {
    f2_checks(p, cfg, F2_DEF)?;
    let bases = f2_default_bases(p, cfg)?;
    let s1 = bases.first.moments(degree, cfg)?;
    let s2 = bases.second.moments(degree, cfg)?;
    Ok(multi_indices(2, degree)
        .into_iter()
        .map(|idx| {
            let (m, n) = (idx[0], idx[1]);
            let u = &s1.moments[m].value * &bases.first.ninv.value;
            let v = &s2.moments[n].value * &bases.second.ninv.value;
            let c = &(&pochhammer(&p.a1, m + n) * &u) * &v;
            (idx, c.scale_real(1.0 / (factorial(m) * factorial(n))))
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Derivative right-hand sides

fn inv_pochhammer(c: &SquareMatrix, n: usize) -> Result<SquareMatrix> {
    pochhammer(c, n).inverse().map_err(|_| MatError::ParameterPole { n })
}

fn require_lauricella_commuting(p: &AppellParams, bs: &[&SquareMatrix], cfg: &EvalConfig, anchor: &str) -> Result<()> {
    cfg.require_commuting(&[("A", &p.a), ("A1", &p.a1), ("B", &p.b), ("C1", &p.c1), ("Y", &p.y)], anchor)?;
    let names = ["B1", "B2", "B3"];
    let named: Vec<(&str, &SquareMatrix)> = names.iter().copied().zip(bs.iter().copied()).collect();
    cfg.require_commuting(&named, anchor)
}

/// (A₁)_{m+n}(C₁)⁻¹_{m+n}·F₁(A₁+(m+n)I, B₁+mI, B₂+nI; C₁+(m+n)I; z, w)·(B₁)ₘ(B₂)ₙ,
/// in the stated factor order.
pub fn f1_derivative_rhs(p: &AppellParams, m: usize, n: usize, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 5.4, Eq. (5.1)";
    require_lauricella_commuting(p, &[&p.b1, &p.b2], cfg, ANCHOR)?;
    let s = (m + n) as f64;
    let q = AppellParams { a1: p.a1.shift_real(s), b1: p.b1.shift_real(m as f64), b2: p.b2.shift_real(n as f64), c1: p.c1.shift_real(s), ..p.clone() };
    let f = appell_f1_series(&q, cfg)?;
    let left = &pochhammer(&p.a1, m + n) * &inv_pochhammer(&p.c1, m + n)?;
    let right = &pochhammer(&p.b1, m) * &pochhammer(&p.b2, n);
    Ok(f.lmul_exact(&left).rmul_exact(&right))
}

/// (A₁)_{m+n}·F₂(A₁+(m+n)I, B₁+mI, B₂+nI; C₁+mI, C₂+nI; z, w)·R where R is
/// (B₁)ₘ(B₂)ₙ(C₁)⁻¹_{m+n} as stated, or (B₁)ₘ(C₁)ₘ⁻¹(B₂)ₙ(C₂)ₙ⁻¹ when `corrected`.
pub fn f2_derivative_rhs(p: &AppellParams, m: usize, n: usize, corrected: bool, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 5.5, Eq. (5.4)";
    let (ap, bp, c2) = (p.a_prime()?, p.b_prime()?, p.c2()?);
    cfg.require_commuting(
        &[("A", &p.a), ("A′", ap), ("B", &p.b), ("B′", bp), ("B1", &p.b1), ("B2", &p.b2), ("C1", &p.c1), ("C2", c2), ("Y", &p.y)],
        ANCHOR,
    )?;
    let q = AppellParams {
        a1: p.a1.shift_real((m + n) as f64),
        b1: p.b1.shift_real(m as f64),
        b2: p.b2.shift_real(n as f64),
        c1: p.c1.shift_real(m as f64),
        c2: Some(c2.shift_real(n as f64)),
        ..p.clone()
    };
    let f = appell_f2_series(&q, cfg)?;
    let right = if corrected {
        &(&(&pochhammer(&p.b1, m) * &inv_pochhammer(&p.c1, m)?) * &pochhammer(&p.b2, n)) * &inv_pochhammer(c2, n)?
    } else {
        &(&pochhammer(&p.b1, m) * &pochhammer(&p.b2, n)) * &inv_pochhammer(&p.c1, m + n)?
    };
    Ok(f.lmul_exact(&pochhammer(&p.a1, m + n)).rmul_exact(&right))
}

/// F_D^(3) derivative right-hand side. Stated form:
/// (A₁)_N(C₁)_N·F_D(shifted)·(B₁)ₘ(B₂)ₙ(B₃)_q⁻¹; corrected form:
/// (A₁)_N(C₁)_N⁻¹·F_D(shifted)·(B₁)ₘ(B₂)ₙ(B₃)_q, N = m+n+q.
pub fn fd3_derivative_rhs(p: &AppellParams, m: usize, n: usize, q: usize, corrected: bool, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 5.6, Eq. (5.5)";
    let b3 = p.b3()?;
    require_lauricella_commuting(p, &[&p.b1, &p.b2, b3], cfg, ANCHOR)?;
    let total = m + n + q;
    let s = total as f64;
    let shifted = AppellParams {
        a1: p.a1.shift_real(s),
        b1: p.b1.shift_real(m as f64),
        b2: p.b2.shift_real(n as f64),
        b3: Some(b3.shift_real(q as f64)),
        c1: p.c1.shift_real(s),
        ..p.clone()
    };
    let f = lauricella_fd3_series(&shifted, cfg)?;
    let (left, right) = if corrected {
        (
            &pochhammer(&p.a1, total) * &inv_pochhammer(&p.c1, total)?,
            &(&pochhammer(&p.b1, m) * &pochhammer(&p.b2, n)) * &pochhammer(b3, q),
        )
    } else {
        (
            &pochhammer(&p.a1, total) * &pochhammer(&p.c1, total),
            &(&pochhammer(&p.b1, m) * &pochhammer(&p.b2, n)) * &inv_pochhammer(b3, q)?,
        )
    };
    Ok(f.lmul_exact(&left).rmul_exact(&right))
}

// ---------------------------------------------------------------------------
// Kernel-shift recurrences

fn lauricella_with_kernel(
    p: &AppellParams,
    bs: &[&SquareMatrix],
    args: &[C64],
    (a, b): (&SquareMatrix, &SquareMatrix),
    (a1, c1): (&SquareMatrix, &SquareMatrix),
    cfg: &EvalConfig,
) -> Result<EvalReport> {
    let base = lauricella_base(Kernel::new(a, b, &p.y, cfg)?, a1, c1, cfg)?;
    Ok(lauricella_series_core(&base, bs, &[args.to_vec()], cfg)?.remove(0))
}

/// 𝔅(A₁−I, C₁−A₁−I)[𝔅(A₁, C₁−A₁)]⁻¹ style ratio for the lowered beta arguments.
fn lowered_beta_ratio(p1: &SquareMatrix, c1: &SquareMatrix, cfg: &EvalConfig, anchor: &str, roles: (&str, &str)) -> Result<EvalReport> {
    let q = c1 - p1;
    let lp = p1.shift_real(-1.0);
    let lq = q.shift_real(-1.0);
    cfg.require_positive_stable(&lp, roles.0, anchor)?;
    cfg.require_positive_stable(&lq, roles.1, anchor)?;
    let low = crate::gammabeta::beta_unit_integral(&lp, &lq, cfg)?;
    let ninv = crate::gammabeta::beta_unit_integral(p1, &q, cfg)?.inverse()?;
    Ok(ninv.mul(&low))
}

/// Shared F₁/F_D recurrence sides (kernel multiplies from the left).
fn lauricella_recurrence(
    p: &AppellParams,
    bs: &[&SquareMatrix],
    args: &[C64],
    which: Recurrence,
    corrected: bool,
    cfg: &EvalConfig,
    anchor: &str,
) -> Result<(EvalReport, EvalReport)> {
    lauricella_checks(p, bs, cfg, anchor)?;
    cfg.require_commuting(&[("A", &p.a), ("A1", &p.a1), ("B", &p.b), ("C1", &p.c1), ("Y", &p.y)], anchor)?;
    let n = p.order();
    let id = SquareMatrix::identity(n);
    let f = |a: &SquareMatrix, b: &SquareMatrix| lauricella_with_kernel(p, bs, args, (a, b), (&p.a1, &p.c1), cfg);
    match which {
        Recurrence::KernelShift566 => {
            let base = f(&p.a, &p.b)?;
            let lhs = base.lmul_exact(&(&(&p.b - &p.a) - &id));
            let lowered = f(&p.a, &p.b.shift_real(-1.0))?.lmul_exact(&p.b.shift_real(-1.0));
            let raised = f(&p.a.shift_real(1.0), &p.b)?.lmul_exact(&p.a);
            Ok((lhs, lowered.sub(&raised)))
        }
        Recurrence::KernelShift57 => {
            let ratio = lowered_beta_ratio(&p.a1, &p.c1, cfg, anchor, ("A1 − I", "C1 − A1 − I"))?;
            let base = f(&p.a, &p.b)?.lmul_exact(&p.b);
            let shifted_a = f(&p.a.shift_real(-1.0), &p.b)?;
            // The stated display multiplies the lowered-A term by B from the right.
            let second = if corrected { shifted_a.lmul_exact(&p.b) } else { shifted_a.rmul_exact(&p.b) };
            let lhs = base.sub(&second);
            let a1l = p.a1.shift_real(-1.0);
            let c1l = p.c1.shift_real(-2.0);
            let g = lauricella_with_kernel(p, bs, args, (&p.a, &p.b.shift_real(1.0)), (&a1l, &c1l), cfg)?;
            let rhs = ratio.mul(&g).lmul_exact(&p.y.scale_real(-1.0));
            Ok((lhs, rhs))
        }
    }
}

/// Both sides of a kernel-shift recurrence for F₁. For `KernelShift57` the
/// identity is completed as
/// B·F₁ − B·F₁^{(A−I,B)} = −Y·[𝔅(A₁,C₁−A₁)]⁻¹𝔅(A₁−I,C₁−A₁−I)·F₁^{(A,B+I)}(A₁−I, B₁, B₂; C₁−2I);
/// without `corrected` the second left term keeps the stated F₁^{(A−I,B)}·B order.
pub fn f1_recurrence_sides(p: &AppellParams, which: Recurrence, corrected: bool, cfg: &EvalConfig) -> Result<(EvalReport, EvalReport)> {
    require_small(&[p.z, p.w], "F₁")?;
    lauricella_recurrence(p, &[&p.b1, &p.b2], &[p.z, p.w], which, corrected, cfg, "Thm 5.7, Eqs. (5.66)/(5.7)")
}

/// F_D^(3) analogue; the stated second relation already has the completed form,
/// so `corrected` only affects nothing beyond the F₁ ordering convention.
pub fn fd3_recurrence_sides(p: &AppellParams, which: Recurrence, cfg: &EvalConfig) -> Result<(EvalReport, EvalReport)> {
    require_small(&[p.z, p.w, p.v], "F_D")?;
    let b3 = p.b3()?;
    lauricella_recurrence(p, &[&p.b1, &p.b2, b3], &[p.z, p.w, p.v], which, true, cfg, "Thm 5.9")
}

/// F₂ analogue, kernel factors multiplying from the right. The stated second
/// relation is F₂^{(A−I,B)}B − F₂B = [𝔅(B₁,C₁−B₁)]⁻¹𝔅(B₁−I,C₁−B₁−I)·F₂^{(A,B+I)}(A₁,B₁,B₂;C₁,C₂)·Y;
/// the `corrected` right side lowers the first beta pair to (B₁−I; C₁−2I).
pub fn f2_recurrence_sides(p: &AppellParams, which: Recurrence, corrected: bool, cfg: &EvalConfig) -> Result<(EvalReport, EvalReport)> {
    const ANCHOR: &str = "Thm 5.8";
    require_f2_domain(p.z, p.w)?;
    f2_checks(p, cfg, ANCHOR)?;
    let (ap, bp, c2) = (p.a_prime()?, p.b_prime()?, p.c2()?);
    cfg.require_commuting(
        &[("A", &p.a), ("A′", ap), ("B", &p.b), ("B′", bp), ("B1", &p.b1), ("B2", &p.b2), ("C1", &p.c1), ("C2", c2), ("Y", &p.y)],
        ANCHOR,
    )?;
    let id = SquareMatrix::identity(p.order());
    let f = |a: &SquareMatrix, b: &SquareMatrix, b1: &SquareMatrix, c1: &SquareMatrix| -> Result<EvalReport> {
        let bases = f2_bases((a, b), (ap, bp), &p.y, (b1, c1), (&p.b2, c2), cfg)?;
        Ok(f2_series_core(&p.a1, &bases, &[(p.z, p.w)], cfg)?.remove(0))
    };
    match which {
        Recurrence::KernelShift566 => {
            let lhs = f(&p.a, &p.b, &p.b1, &p.c1)?.rmul_exact(&(&(&p.b - &p.a) - &id));
            let lowered = f(&p.a, &p.b.shift_real(-1.0), &p.b1, &p.c1)?.rmul_exact(&p.b.shift_real(-1.0));
            let raised = f(&p.a.shift_real(1.0), &p.b, &p.b1, &p.c1)?.rmul_exact(&p.a);
            Ok((lhs, lowered.sub(&raised)))
        }
        Recurrence::KernelShift57 => {
            let ratio = lowered_beta_ratio(&p.b1, &p.c1, cfg, ANCHOR, ("B1 − I", "C1 − B1 − I"))?;
            let lhs = f(&p.a.shift_real(-1.0), &p.b, &p.b1, &p.c1)?.rmul_exact(&p.b).sub(&f(&p.a, &p.b, &p.b1, &p.c1)?.rmul_exact(&p.b));
            let g = if corrected {
                f(&p.a, &p.b.shift_real(1.0), &p.b1.shift_real(-1.0), &p.c1.shift_real(-2.0))?
            } else {
                f(&p.a, &p.b.shift_real(1.0), &p.b1, &p.c1)?
            };
            Ok((lhs, ratio.mul(&g).rmul_exact(&p.y)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: f64) -> SquareMatrix {
        SquareMatrix::real_scalar(1, v)
    }

    fn sample() -> AppellParams {
        AppellParams {
            a: s(1.6),
            b: s(2.4),
            a_prime: Some(s(1.3)),
            b_prime: Some(s(1.9)),
            a1: s(1.7),
            b1: s(1.6),
            b2: s(0.7),
            b3: Some(s(0.6)),
            c1: s(3.3),
            c2: Some(s(2.9)),
            y: s(0.2),
            z: C64::new(0.2, 0.0),
            w: C64::new(0.15, 0.0),
            v: C64::new(0.1, 0.0),
        }
    }

    fn close(a: &EvalReport, b: &EvalReport, tol: f64) -> bool {
        let d = (&a.value - &b.value).frobenius_norm() / a.value.frobenius_norm().max(1.0);
        if d > tol {
            eprintln!("{} vs {} ({d:e})", a.value.get(0, 0), b.value.get(0, 0));
        }
        d <= tol
    }

    #[test]
    fn series_match_integrals() {
        let cfg = EvalConfig::default();
        let p = sample();
        assert!(close(&appell_f1_series(&p, &cfg).unwrap(), &appell_f1_integral(&p, &cfg).unwrap(), 1e-9));
        assert!(close(&lauricella_fd3_series(&p, &cfg).unwrap(), &lauricella_fd3_integral(&p, &cfg).unwrap(), 1e-9));
        assert!(close(&appell_f2_series(&p, &cfg).unwrap(), &appell_f2_integral(&p, &cfg).unwrap(), 1e-8));
    }

    #[test]
    fn classical_f1_value() {
        // A = B and Y = 0 reduce to the classical F₁; compare with a brute-force double sum.
        let cfg = EvalConfig::default();
        let p = AppellParams { a: s(1.0), b: s(1.0), a1: s(0.9), b1: s(0.6), b2: s(0.7), c1: s(2.1), y: s(0.0), z: C64::new(0.2, 0.0), w: C64::new(0.3, 0.0), ..sample() };
        let mut want = 0.0;
        let mut row = 1.0;
        for m in 0..60 {
            if m > 0 {
                let k = (m - 1) as f64;
                row *= (0.9 + k) * (0.6 + k) / (2.1 + k) * 0.2 / m as f64;
            }
            let mut t = row;
            for n in 0..60 {
                if n > 0 {
                    let (k, j) = ((m + n - 1) as f64, (n - 1) as f64);
                    t *= (0.9 + k) * (0.7 + j) / (2.1 + k) * 0.3 / n as f64;
                }
                want += t;
            }
        }
        let got = appell_f1_series(&p, &cfg).unwrap().value.get(0, 0).re;
        assert!((got - want).abs() < 1e-10 * want, "{got} {want}");
    }

    #[test]
    fn recurrences_hold() {
        let cfg = EvalConfig::default();
        let p = sample();
        for which in [Recurrence::KernelShift566, Recurrence::KernelShift57] {
            let (l, r) = f1_recurrence_sides(&p, which, true, &cfg).unwrap();
            assert!(close(&l, &r, 1e-8), "F1 {which:?}");
            let (l, r) = fd3_recurrence_sides(&p, which, &cfg).unwrap();
            assert!(close(&l, &r, 1e-8), "FD {which:?}");
            let (l, r) = f2_recurrence_sides(&p, which, true, &cfg).unwrap();
            assert!(close(&l, &r, 1e-8), "F2 {which:?}");
        }
    }
}
