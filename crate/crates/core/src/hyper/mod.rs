//! One-variable hypergeometric matrix functions: classical ₁F₁ and ₂F₁, the
//! exponentially extended forms, and the ₁F₁-damped NEGHMF/NECHMF with their
//! integral representations, derivatives and transformations.

mod kernel;

pub use kernel::{kummer_1f1, kummer_1f1_series, kummer_1f1_with, Kernel, Method};

use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::gammabeta::{beta_extended_moments, beta_ne_moments, beta_unit_integral, finish_kernel_report};
use crate::matcalc::{alpha_beta_of, complex_power, eigenvalues, pochhammer, ExpPencil, SquareMatrix, C64, ONE};
use crate::quadrature::{
    accumulate_series, integrate_halfline, integrate_unit, merge_moment_state, with_growing_terms, EvalReport,
    MomentSet, SeriesSpec, SeriesTail,
};

/// Kernel pair (A, B), hypergeometric parameters A₁, B₁, C₁, extension Y and
/// the scalar argument z.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub a: SquareMatrix,
    pub b: SquareMatrix,
    #[serde(default)]
    pub a1: Option<SquareMatrix>,
    pub b1: SquareMatrix,
    pub c1: SquareMatrix,
    pub y: SquareMatrix,
    #[serde(default)]
    pub z: C64,
}

impl HyperParams {
    pub fn a1(&self) -> Result<&SquareMatrix> {
        self.a1.as_ref().ok_or_else(|| MatError::Parse("parameter A1 is required".into()))
    }

    pub fn with_z(&self, z: C64) -> Self {
        Self { z, ..self.clone() }
    }

    fn order(&self) -> usize {
        self.b1.order()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussForm {
    Unit,
    Halfline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfluentForm {
    Direct,
    Reflected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    PfaffZOverZm1,
    EulerOneMinusZ,
    ZOver1pz,
}

pub(crate) fn geometric_terms(z: f64, spec: &SeriesSpec) -> usize {
    if z < 1e-300 {
        return spec.tail_run + 1;
    }
    if z >= 1.0 {
        return spec.max_terms;
    }
    (spec.term_tol.ln() / z.ln()).ceil() as usize + 20
}

fn factorial_terms(z: f64) -> usize {
    (std::f64::consts::E * z).ceil() as usize + 30
}

fn require_inside_unit_disc(z: C64, what: &str) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(MatError::ConvergenceDomain(format!("{what} needs |z| < 1, got |z| = {}", z.norm())))
    }
}

/// ₂F₁(A₁, B₁; C₁; z) = Σ (A₁)ₙ(B₁)ₙ(C₁)ₙ⁻¹ zⁿ/n!.
pub fn gauss_2f1(a1: &SquareMatrix, b1: &SquareMatrix, c1: &SquareMatrix, z: C64, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = cfg.require_same_order(&[a1, b1, c1])?;
    let spec = &cfg.series;
    spec.validate()?;
    let r = z.norm();
    if r > 1.0 {
        return Err(MatError::ConvergenceDomain(format!("₂F₁ series needs |z| ≤ 1, got |z| = {r}")));
    }
    if r == 1.0 {
        let (aa, _) = alpha_beta_of(&eigenvalues(a1)?);
        let (ab, _) = alpha_beta_of(&eigenvalues(b1)?);
        let (_, bc) = alpha_beta_of(&eigenvalues(c1)?);
        if !(aa + ab < bc) {
            return Err(MatError::ConvergenceDomain(
                "₂F₁ series on |z| = 1 needs α(A1) + α(B1) < β(C1)".into(),
            ));
        }
    }
    let mut pa = SquareMatrix::identity(n);
    let mut pb = SquareMatrix::identity(n);
    let mut pc_inv = SquareMatrix::identity(n);
    let mut zk = ONE;
    let mut sum = SquareMatrix::identity(n);
    let mut tail = SeriesTail::new(spec);
    let mut terms = 1;
    for k in 0..spec.max_terms {
        pa = (&pa * &a1.shift_real(k as f64)).scale_real(1.0 / (k + 1) as f64);
        pb = &pb * &b1.shift_real(k as f64);
        let inv = c1.shift_real(k as f64).inverse().map_err(|_| MatError::ParameterPole { n: k })?;
        pc_inv = &pc_inv * &inv;
        zk *= z;
        let term = (&(&pa * &pb) * &pc_inv).scale(zk);
        sum += &term;
        terms += 1;
        tail.push(term.frobenius_norm(), sum.frobenius_norm());
        if tail.done() {
            break;
        }
    }
    Ok(tail.finish(sum, 0.0, terms))
}

fn extended_series(
    a1: Option<&SquareMatrix>,
    b1: &SquareMatrix,
    c1: &SquareMatrix,
    x: &SquareMatrix,
    z: C64,
    cfg: &EvalConfig,
    anchor: &str,
) -> Result<EvalReport> {
    let n = cfg.require_same_order(&[b1, c1, x])?;
    let cb = c1 - b1;
    cfg.require_positive_stable(b1, "B", anchor)?;
    cfg.require_positive_stable(c1, "C", anchor)?;
    cfg.require_positive_stable(&cb, "C − B", anchor)?;
    cfg.require_positive_stable_or_zero(x, "X", anchor)?;
    cfg.require_commuting(&[("B", b1), ("C", c1), ("X", x)], anchor)?;
    if a1.is_some() {
        require_inside_unit_disc(z, "the extended Gauss series")?;
    }
    let gc = crate::gammabeta::gamma_matrix(c1, cfg)?;
    let rb = crate::gammabeta::gamma_matrix(b1, cfg)?.inverse()?;
    let rcb = crate::gammabeta::gamma_matrix(&cb, cfg)?.inverse()?;
    let norm = EvalReport::product(&[&gc, &rb, &rcb]);
    let initial = match a1 {
        Some(_) => geometric_terms(z.norm(), &cfg.series),
        None => factorial_terms(z.norm()),
    };
    let series = with_growing_terms(initial, &cfg.series, |count| {
        let set = beta_extended_moments(b1, &cb, x, count, cfg)?;
        let mut coef = SquareMatrix::identity(n);
        let mut zk = ONE;
        let terms = set.moments.iter().enumerate().map(|(m, mom)| {
            if m > 0 {
                coef = match a1 {
                    Some(a1) => (&coef * &a1.shift_real((m - 1) as f64)).scale_real(1.0 / m as f64),
                    None => coef.scale_real(1.0 / m as f64),
                };
                zk *= z;
            }
            let t = (&coef * &mom.value).scale(zk);
            Ok((t, coef.frobenius_norm() * mom.error_estimate * zk.norm()))
        });
        let (mut r, done) = accumulate_series(n, terms, &cfg.series)?;
        let used = r.evaluations;
        merge_moment_state(&mut r, &set, used);
        Ok((r, done))
    })?;
    Ok(series.mul(&norm))
}

/// F^{(X)}(A₁, B₁; C₁; z) with the classical normalisation Γ(C₁)Γ⁻¹(B₁)Γ⁻¹(C₁−B₁).
pub fn eghmf(a1: &SquareMatrix, b1: &SquareMatrix, c1: &SquareMatrix, x: &SquareMatrix, z: C64, cfg: &EvalConfig) -> Result<EvalReport> {
    extended_series(Some(a1), b1, c1, x, z, cfg, "Eq. (eg1)")
}

/// φ^{(X)}(B₁; C₁; z).
pub fn ekhmf(b1: &SquareMatrix, c1: &SquareMatrix, x: &SquareMatrix, z: C64, cfg: &EvalConfig) -> Result<EvalReport> {
    extended_series(None, b1, c1, x, z, cfg, "Eq. (kh1)")
}

/// Shared ingredients of the new extended series: the damping kernel and the
/// inverse normaliser [𝔅(B₁, C₁−B₁)]⁻¹.
pub(crate) struct NeBase {
    pub kernel: Kernel,
    pub p: SquareMatrix,
    pub q: SquareMatrix,
    pub ninv: EvalReport,
}

impl NeBase {
    /// Beta arguments (p, q): moments are ∫ K t^{p−I}(1−t)^{q−I} tⁿ dt.
    pub fn new(
        a: &SquareMatrix,
        b: &SquareMatrix,
        y: &SquareMatrix,
        p: &SquareMatrix,
        q: &SquareMatrix,
        roles: (&str, &str),
        cfg: &EvalConfig,
        anchor: &str,
    ) -> Result<Self> {
        cfg.require_same_order(&[a, b, y, p, q])?;
        cfg.require_positive_stable(a, "A", anchor)?;
        cfg.require_positive_stable(b, "B", anchor)?;
        cfg.require_positive_stable_or_zero(y, "Y", anchor)?;
        cfg.require_positive_stable(p, roles.0, anchor)?;
        cfg.require_positive_stable(q, roles.1, anchor)?;
        Self::from_kernel(Kernel::new(a, b, y, cfg)?, p, q, cfg)
    }

    /// No hypothesis checks beyond what the kernel itself enforces; callers
    /// validate the beta arguments.
    pub fn from_kernel(kernel: Kernel, p: &SquareMatrix, q: &SquareMatrix, cfg: &EvalConfig) -> Result<Self> {
        let ninv = beta_unit_integral(p, q, cfg)?.inverse()?;
        Ok(Self { kernel, p: p.clone(), q: q.clone(), ninv })
    }

    pub fn moments(&self, count: usize, cfg: &EvalConfig) -> Result<MomentSet> {
        beta_ne_moments(&self.kernel, &self.p, &self.q, count, cfg)
    }

    pub fn finish(&self, r: &mut EvalReport) {
        finish_kernel_report(&self.kernel, r);
    }
}

fn ne_base_for(p: &HyperParams, cfg: &EvalConfig, anchor: &str) -> Result<NeBase> {
    NeBase::new(&p.a, &p.b, &p.y, &p.b1, &(&p.c1 - &p.b1), ("B1", "C1 − B1"), cfg, anchor)
}

/// Σ coefₙ·Mₙ·N⁻¹·zⁿ where coefₙ = (A₁)ₙ/n! (Gauss) or 1/n! (confluent).
fn ne_series_at(
    order: usize,
    set: &MomentSet,
    ninv: &EvalReport,
    a1: Option<&SquareMatrix>,
    z: C64,
    spec: &SeriesSpec,
) -> Result<(EvalReport, bool)> {
    let mut coef = SquareMatrix::identity(order);
    let mut zk = ONE;
    let ninv_norm = ninv.value.frobenius_norm();
    let terms = set.moments.iter().enumerate().map(|(k, m)| {
        if k > 0 {
            coef = match a1 {
                Some(a1) => (&coef * &a1.shift_real((k - 1) as f64)).scale_real(1.0 / k as f64),
                None => coef.scale_real(1.0 / k as f64),
            };
            zk *= z;
        }
        let t = (&(&coef * &m.value) * &ninv.value).scale(zk);
        let e = coef.frobenius_norm() * m.error_estimate * ninv_norm * zk.norm();
        Ok((t, e))
    });
    let (mut r, done) = accumulate_series(order, terms, spec)?;
    let used = r.evaluations;
    r.evaluations = 0;
    merge_moment_state(&mut r, set, used);
    r.error_estimate += r.value.frobenius_norm() * ninv.error_estimate / ninv_norm.max(f64::MIN_POSITIVE);
    Ok((r, done))
}

fn ne_series_multi(
    base: &NeBase,
    a1: Option<&SquareMatrix>,
    zs: &[C64],
    cfg: &EvalConfig,
) -> Result<Vec<EvalReport>> {
    let zmax = zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let initial = match a1 {
        Some(_) => geometric_terms(zmax, &cfg.series),
        None => factorial_terms(zmax),
    };
    let n = base.p.order();
    let mut out = with_growing_terms(initial, &cfg.series, |count| {
        let set = base.moments(count, cfg)?;
        let mut all_done = true;
        let mut reports = Vec::with_capacity(zs.len());
        for &z in zs {
            let (r, done) = ne_series_at(n, &set, &base.ninv, a1, z, &cfg.series)?;
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

fn gauss_guard(z: C64) -> Result<()> {
    require_inside_unit_disc(z, "the new extended Gauss series")
}

/// ₂F₁^{(A,B;Y)}(A₁, B₁; C₁; z) by its defining series.
pub fn neghmf_series(p: &HyperParams, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(neghmf_series_multi(p, &[p.z], cfg)?.remove(0))
}

/// The series at several arguments from one moment table.
pub fn neghmf_series_multi(p: &HyperParams, zs: &[C64], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    for &z in zs {
        gauss_guard(z)?;
    }
    let a1 = p.a1()?;
    cfg.require_same_order(&[a1, &p.b1])?;
    let base = ne_base_for(p, cfg, "Eq. (4.1)")?;
    ne_series_multi(&base, Some(a1), zs, cfg)
}

/// ₁F₁^{(A,B;Y)}(B₁; C₁; z) by its defining series.
pub fn nechmf_series(p: &HyperParams, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(nechmf_series_multi(p, &[p.z], cfg)?.remove(0))
}

pub fn nechmf_series_multi(p: &HyperParams, zs: &[C64], cfg: &EvalConfig) -> Result<Vec<EvalReport>> {
    let base = ne_base_for(p, cfg, "Eq. (4.2)")?;
    ne_series_multi(&base, None, zs, cfg)
}

/// Individual series coefficients coefₙ·Mₙ·N⁻¹ (without zⁿ), n < count.
pub fn neghmf_coefficients(p: &HyperParams, count: usize, cfg: &EvalConfig) -> Result<Vec<SquareMatrix>> {
    let base = ne_base_for(p, cfg, "Eq. (4.1)")?;
    ne_coefficients(&base, Some(p.a1()?), count, cfg)
}

pub fn nechmf_coefficients(p: &HyperParams, count: usize, cfg: &EvalConfig) -> Result<Vec<SquareMatrix>> {
    let base = ne_base_for(p, cfg, "Eq. (4.2)")?;
    ne_coefficients(&base, None, count, cfg)
}

fn ne_coefficients(base: &NeBase, a1: Option<&SquareMatrix>, count: usize, cfg: &EvalConfig) -> Result<Vec<SquareMatrix>> {
    let set = base.moments(count, cfg)?;
    let n = base.p.order();
    let mut coef = SquareMatrix::identity(n);
    let mut out = Vec::with_capacity(count);
    for (k, m) in set.moments.iter().enumerate() {
        if k > 0 {
            coef = match a1 {
                Some(a1) => (&coef * &a1.shift_real((k - 1) as f64)).scale_real(1.0 / k as f64),
                None => coef.scale_real(1.0 / k as f64),
            };
        }
        out.push(&(&coef * &m.value) * &base.ninv.value);
    }
    Ok(out)
}

/// Classical ₂F₁ / ₁F₁ coefficients (A₁)ₙ(B₁)ₙ(C₁)ₙ⁻¹/n! (or without (A₁)ₙ).
pub fn classical_coefficients(
    a1: Option<&SquareMatrix>,
    b1: &SquareMatrix,
    c1: &SquareMatrix,
    count: usize,
) -> Result<Vec<SquareMatrix>> {
    let n = b1.order();
    let mut pa = SquareMatrix::identity(n);
    let mut pb = SquareMatrix::identity(n);
    let mut pc_inv = SquareMatrix::identity(n);
    let mut out = vec![SquareMatrix::identity(n)];
    for k in 0..count.saturating_sub(1) {
        pa = match a1 {
            Some(a1) => (&pa * &a1.shift_real(k as f64)).scale_real(1.0 / (k + 1) as f64),
            None => pa.scale_real(1.0 / (k + 1) as f64),
        };
        pb = &pb * &b1.shift_real(k as f64);
        let inv = c1.shift_real(k as f64).inverse().map_err(|_| MatError::ParameterPole { n: k })?;
        pc_inv = &pc_inv * &inv;
        out.push(&(&pa * &pb) * &pc_inv);
    }
    Ok(out)
}

fn require_gauss_integral(p: &HyperParams, cfg: &EvalConfig, anchor: &str) -> Result<()> {
    cfg.require_positive_stable(p.a1()?, "A1", anchor)?;
    cfg.require_positive_stable(&p.c1, "C1", anchor)
}

/// Euler-type integral ∫₀¹ (1−zt)^{−A₁} K t^{B₁−I}(1−t)^{C₁−B₁−I} dt·N⁻¹, with z
/// checked by the caller (z = 1 is used for the value at one).
fn neghmf_unit_integral(base: &NeBase, a1: &SquareMatrix, z: C64, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = a1.order();
    let pa = ExpPencil::new(&a1.scale_real(-1.0));
    let pb = ExpPencil::new(&base.p.shift_real(-1.0));
    let pc = ExpPencil::new(&base.q.shift_real(-1.0));
    let at_one = z == ONE;
    let mut r = integrate_unit(
        n,
        |t, tc| {
            let Some(k) = base.kernel.eval_scaled(0.0, 1.0 / (t * tc))? else {
                return Ok(SquareMatrix::zeros(n));
            };
            // 1 − zt, formed from tc at z = 1 to keep full relative accuracy.
            let w = if at_one { C64::new(tc, 0.0) } else { ONE - z * t };
            let bin = pa.eval(w.ln());
            Ok(&(&(&bin * &k) * &pb.real_power(t)) * &pc.real_power(tc))
        },
        &cfg.quadrature,
    )?;
    base.finish(&mut r);
    let ninv = base.ninv.clone();
    Ok(r.mul(&ninv))
}

/// NEGHMF by the unit-interval or half-line integral.
pub fn neghmf_integral(p: &HyperParams, form: GaussForm, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 4.1, Eqs. (4.3)/(a4.4)";
    gauss_guard(p.z)?;
    require_gauss_integral(p, cfg, ANCHOR)?;
    let a1 = p.a1()?;
    let base = ne_base_for(p, cfg, ANCHOR)?;
    match form {
        GaussForm::Unit => neghmf_unit_integral(&base, a1, p.z, cfg),
        GaussForm::Halfline => {
            let n = p.order();
            let z = p.z;
            let pa = ExpPencil::new(&a1.scale_real(-1.0));
            let pb = ExpPencil::new(&p.b1.shift_real(-1.0));
            let pc = ExpPencil::new(&p.c1.scale_real(-1.0));
            let pcb = ExpPencil::new(&(&p.c1 - &p.b1).shift_real(1.0).scale_real(-1.0));
            let split = cfg.commute(&p.b1, &p.c1);
            let mut r = integrate_halfline(
                n,
                |u| {
                    let Some(k) = base.kernel.eval_scaled(0.0, 2.0 + u + 1.0 / u)? else {
                        return Ok(SquareMatrix::zeros(n));
                    };
                    if k.is_zero() {
                        return Ok(k);
                    }
                    // (1 + u(1−z))^{−A₁}(1+u)^{A₁} = ((1 + u(1−z))/(1+u))^{−A₁}.
                    let ratio = (ONE + (ONE - z) * u) / (1.0 + u);
                    let bin = pa.eval(ratio.ln());
                    let w = if split && u > 1.0 {
                        &pb.real_power(u / (1.0 + u)) * &pcb.real_power(1.0 + u)
                    } else {
                        &pb.real_power(u) * &pc.real_power(1.0 + u)
                    };
                    Ok(&(&bin * &k) * &w)
                },
                &cfg.quadrature,
            )?;
            base.finish(&mut r);
            Ok(r.mul(&base.ninv))
        }
    }
}

/// NECHMF by the direct or reflected unit-interval integral.
pub fn nechmf_integral(p: &HyperParams, form: ConfluentForm, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 4.2, Eqs. (4.5)/(4.6)";
    cfg.require_positive_stable(&p.c1, "C1", ANCHOR)?;
    let base = ne_base_for(p, cfg, ANCHOR)?;
    let n = p.order();
    let z = p.z;
    let pb = ExpPencil::new(&p.b1.shift_real(-1.0));
    let pc = ExpPencil::new(&(&p.c1 - &p.b1).shift_real(-1.0));
    let mut r = integrate_unit(
        n,
        |t, tc| {
            let Some(k) = base.kernel.eval_scaled(0.0, 1.0 / (t * tc))? else {
                return Ok(SquareMatrix::zeros(n));
            };
            Ok(match form {
                ConfluentForm::Direct => (&(&k * &pb.real_power(t)) * &pc.real_power(tc)).scale((z * t).exp()),
                ConfluentForm::Reflected => (&(&k * &pc.real_power(t)) * &pb.real_power(tc)).scale((z * tc).exp()),
            })
        },
        &cfg.quadrature,
    )?;
    base.finish(&mut r);
    Ok(r.mul(&base.ninv))
}

fn shifted(p: &HyperParams, n: usize) -> HyperParams {
    let s = n as f64;
    HyperParams {
        a1: p.a1.as_ref().map(|m| m.shift_real(s)),
        b1: p.b1.shift_real(s),
        c1: p.c1.shift_real(s),
        ..p.clone()
    }
}

fn pochhammer_ratio(b1: &SquareMatrix, c1: &SquareMatrix, n: usize) -> Result<SquareMatrix> {
    let pc = pochhammer(c1, n);
    let inv = pc.inverse().map_err(|_| MatError::ParameterPole { n })?;
    Ok(&pochhammer(b1, n) * &inv)
}

/// (A₁)ₙ·₂F₁^{(A,B;Y)}(A₁+nI, B₁+nI; C₁+nI; z)·(B₁)ₙ(C₁)ₙ⁻¹.
pub fn neghmf_derivative(p: &HyperParams, n: usize, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 4.3, Eq. (4.7)";
    cfg.require_commuting(&[("B1", &p.b1), ("C1", &p.c1)], ANCHOR)?;
    let a1 = p.a1()?;
    let f = neghmf_series(&shifted(p, n), cfg)?;
    Ok(f.lmul_exact(&pochhammer(a1, n)).rmul_exact(&pochhammer_ratio(&p.b1, &p.c1, n)?))
}

/// ₁F₁^{(A,B;Y)}(B₁+nI; C₁+nI; z)·(B₁)ₙ(C₁)ₙ⁻¹.
pub fn nechmf_derivative(p: &HyperParams, n: usize, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 4.4, Eq. (4.10)";
    cfg.require_commuting(&[("B1", &p.b1), ("C1", &p.c1)], ANCHOR)?;
    let f = nechmf_series(&shifted(p, n), cfg)?;
    Ok(f.rmul_exact(&pochhammer_ratio(&p.b1, &p.c1, n)?))
}

fn reflected(p: &HyperParams) -> HyperParams {
    HyperParams { b1: &p.c1 - &p.b1, ..p.clone() }
}

/// Both sides of a transformation formula. `corrected` selects, for the
/// 1 − z form, the statement with left argument 1 − 1/z; the printed statement
/// has argument z on the left.
pub fn neghmf_transform_sides(
    p: &HyperParams,
    which: Transform,
    corrected: bool,
    cfg: &EvalConfig,
) -> Result<(EvalReport, EvalReport)> {
    const ANCHOR: &str = "Thm 4.5, Eqs. (4.11)/(e4.11)/(a4.11)";
    cfg.require_commuting(&[("B1", &p.b1), ("C1", &p.c1)], ANCHOR)?;
    let a1 = p.a1()?;
    let z = p.z;
    let (lhs_z, rhs_z, prefactor) = match which {
        Transform::PfaffZOverZm1 => (z, z / (z - ONE), complex_power(ONE - z, &a1.scale_real(-1.0))?),
        Transform::EulerOneMinusZ => {
            let left = if corrected { ONE - ONE / z } else { z };
            (left, ONE - z, complex_power(z, a1)?)
        }
        Transform::ZOver1pz => (z / (ONE + z), -z, complex_power(ONE + z, a1)?),
    };
    let lhs = neghmf_series(&p.with_z(lhs_z), cfg)?;
    let rhs = neghmf_series(&reflected(p).with_z(rhs_z), cfg)?.lmul_exact(&prefactor);
    Ok((lhs, rhs))
}

/// The transformed right-hand side (corrected statement for the 1 − z form).
pub fn neghmf_transform(p: &HyperParams, which: Transform, cfg: &EvalConfig) -> Result<EvalReport> {
    Ok(neghmf_transform_sides(p, which, true, cfg)?.1)
}

fn require_at_one(p: &HyperParams, cfg: &EvalConfig) -> Result<SquareMatrix> {
    const ANCHOR: &str = "Eq. (4.16)";
    let a1 = p.a1()?;
    cfg.require_commuting(&[("A1", a1), ("A", &p.a)], ANCHOR)?;
    cfg.require_commuting(&[("A1", a1), ("B", &p.b)], ANCHOR)?;
    cfg.require_commuting(&[("A1", a1), ("B1", &p.b1)], ANCHOR)?;
    cfg.require_commuting(&[("A1", a1), ("C1", &p.c1)], ANCHOR)?;
    let cab = &(&p.c1 - a1) - &p.b1;
    cfg.require_positive_stable(&cab, "C1 − A1 − B1", ANCHOR)?;
    Ok(cab)
}

/// ₂F₁^{(A,B;Y)}(A₁, B₁; C₁; 1) = 𝔅_Y^{(A,B)}(B₁, C₁−A₁−B₁)[𝔅(B₁, C₁−B₁)]⁻¹.
pub fn neghmf_at_one(p: &HyperParams, cfg: &EvalConfig) -> Result<EvalReport> {
    let cab = require_at_one(p, cfg)?;
    let base = ne_base_for(p, cfg, "Eq. (4.16)")?;
    let value = NeBase::new(&p.a, &p.b, &p.y, &p.b1, &cab, ("B1", "C1 − A1 − B1"), cfg, "Eq. (4.16)")?;
    let mut m = value.moments(1, cfg)?.moments.remove(0);
    value.finish(&mut m);
    Ok(m.mul(&base.ninv))
}

/// The integral representation evaluated at z = 1 (its Abel limit) next to
/// the closed beta form.
pub fn neghmf_at_one_sides(p: &HyperParams, cfg: &EvalConfig) -> Result<(EvalReport, EvalReport)> {
    require_at_one(p, cfg)?;
    let base = ne_base_for(p, cfg, "Eq. (4.16)")?;
    let lhs = neghmf_unit_integral(&base, p.a1()?, ONE, cfg)?;
    Ok((lhs, neghmf_at_one(p, cfg)?))
}

/// ₁F₁^{(A,B;Y)}(B₁; C₁; z) and e^z·₁F₁^{(A,B;Y)}(C₁−B₁; C₁; −z).
pub fn kummer_first_theorem(p: &HyperParams, cfg: &EvalConfig) -> Result<(EvalReport, EvalReport)> {
    cfg.require_commuting(&[("B1", &p.b1), ("C1", &p.c1)], "Thm 4.6")?;
    let lhs = nechmf_series(p, cfg)?;
    let rhs = nechmf_series(&reflected(p).with_z(-p.z), cfg)?.scale(p.z.exp());
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: f64) -> SquareMatrix {
        SquareMatrix::real_scalar(1, v)
    }

    fn get(r: &EvalReport) -> C64 {
        r.value.get(0, 0)
    }

    fn sample() -> HyperParams {
        HyperParams { a: s(1.0), b: s(2.0), a1: Some(s(0.8)), b1: s(1.1), c1: s(2.3), y: s(0.2), z: C64::new(0.3, 0.0) }
    }

    #[test]
    fn gauss_closed_forms() {
        let cfg = EvalConfig::default();
        let r = gauss_2f1(&s(1.0), &s(1.0), &s(2.0), C64::new(0.5, 0.0), &cfg).unwrap();
        assert!((get(&r).re - 2.0 * 2f64.ln()).abs() < 1e-13);
        assert!(gauss_2f1(&s(1.0), &s(1.0), &s(2.0), C64::new(1.5, 0.0), &cfg).is_err());
    }

    #[test]
    fn reduction_to_classical() {
        let cfg = EvalConfig::default();
        let p = HyperParams { a: s(1.5), b: s(1.5), y: s(0.0), ..sample() };
        let ne = neghmf_series(&p, &cfg).unwrap();
        let cl = gauss_2f1(&s(0.8), &s(1.1), &s(2.3), p.z, &cfg).unwrap();
        assert!((get(&ne) - get(&cl)).norm() < 1e-10);
        let x = eghmf(&s(0.8), &s(1.1), &s(2.3), &s(0.0), p.z, &cfg).unwrap();
        assert!((get(&x) - get(&cl)).norm() < 1e-10);
    }

    #[test]
    fn series_and_integrals_agree() {
        let cfg = EvalConfig::default();
        let p = sample();
        let s0 = get(&neghmf_series(&p, &cfg).unwrap());
        let u = get(&neghmf_integral(&p, GaussForm::Unit, &cfg).unwrap());
        let h = get(&neghmf_integral(&p, GaussForm::Halfline, &cfg).unwrap());
        assert!((s0 - u).norm() < 1e-9 && (s0 - h).norm() < 1e-9, "{s0} {u} {h}");
        let c = get(&nechmf_series(&p, &cfg).unwrap());
        let d = get(&nechmf_integral(&p, ConfluentForm::Direct, &cfg).unwrap());
        let r = get(&nechmf_integral(&p, ConfluentForm::Reflected, &cfg).unwrap());
        assert!((c - d).norm() < 1e-9 && (c - r).norm() < 1e-9, "{c} {d} {r}");
    }

    #[test]
    fn transformations_hold() {
        let cfg = EvalConfig::default();
        let (l, r) = neghmf_transform_sides(&sample(), Transform::PfaffZOverZm1, false, &cfg).unwrap();
        assert!((get(&l) - get(&r)).norm() < 1e-9);
        let (l, r) = kummer_first_theorem(&sample(), &cfg).unwrap();
        assert!((get(&l) - get(&r)).norm() < 1e-9);
        let p = HyperParams { a1: Some(s(0.3)), ..sample() };
        let (l, r) = neghmf_at_one_sides(&p, &cfg).unwrap();
        assert!((get(&l) - get(&r)).norm() < 1e-8, "{} {}", get(&l), get(&r));
    }
}
