//! Gamma and beta matrix functions: classical, exponentially extended, and the
//! new ₁F₁-damped extensions, each in every integral form.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::hyper::Kernel;
use crate::matcalc::{pochhammer, spectral_alpha_beta, ExpPencil, SquareMatrix, C64};
use crate::quadrature::{
    integrate_halfline, integrate_unit, integrate_unit_moments, moment_series, CachedHalfline, EvalReport, MomentSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaForm {
    Unit,
    Halfline,
    GammaProduct,
}

/// Parameters of the new extended gamma/beta functions: kernel pair (A, B),
/// arguments X and Z, extension matrix Y.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaBetaParams {
    pub a: SquareMatrix,
    pub b: SquareMatrix,
    pub x: SquareMatrix,
    pub y: SquareMatrix,
    #[serde(default)]
    pub z: Option<SquareMatrix>,
}

impl GammaBetaParams {
    pub fn z(&self) -> Result<&SquareMatrix> {
        self.z.as_ref().ok_or_else(|| MatError::Parse("parameter Z is required".into()))
    }
}

/// Exponent beyond which exp(−s·X) is treated as zero.
const EXP_CUTOFF: f64 = 800.0;

fn smallest_real_part(m: &SquareMatrix) -> Result<f64> {
    Ok(spectral_alpha_beta(m)?.1)
}

/// Γ(A) = ∫₀^∞ e^{−t} t^{A−I} dt.
pub fn gamma_matrix(a: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    cfg.require_positive_stable(a, "A", "Eq. (1a1.4)")?;
    gamma_integral(a, cfg)
}

fn gamma_integral(a: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = a.order();
    let p = ExpPencil::new(&a.shift_real(-1.0));
    integrate_halfline(
        n,
        |t| {
            if t > EXP_CUTOFF {
                return Ok(SquareMatrix::zeros(n));
            }
            Ok(p.real_power(t).scale_real((-t).exp()))
        },
        &cfg.quadrature,
    )
}

/// Number of unit shifts that moves β(A) to at least `target`.
fn shift_count(a: &SquareMatrix, target: f64) -> Result<usize> {
    let beta = smallest_real_part(a)?;
    Ok(if beta >= target { 0 } else { (target - beta).ceil() as usize })
}

/// Γ(A) continued by Γ(A) = Γ(A + nI)[(A)ₙ]⁻¹; the quadrature runs at
/// β(A + nI) ≥ ½ where the endpoint exponent is comfortably integrable.
pub fn gamma_any(a: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = shift_count(a, 0.5)?;
    for k in 0..n {
        if a.shift_real(k as f64).inverse().is_err() {
            return Err(MatError::ShiftSingular { k });
        }
    }
    let g = gamma_integral(&a.shift_real(n as f64), cfg)?;
    if n == 0 {
        return Ok(g);
    }
    let p_inv = pochhammer(a, n).inverse()?;
    Ok(g.rmul_exact(&p_inv))
}

/// Γ⁻¹(A) = A(A+I)···(A+(n−1)I)·Γ⁻¹(A+nI).
pub fn gamma_reciprocal(a: &SquareMatrix, n_shift: usize, cfg: &EvalConfig) -> Result<EvalReport> {
    for k in 0..n_shift {
        if a.shift_real(k as f64).inverse().is_err() {
            return Err(MatError::ShiftSingular { k });
        }
    }
    let shifted = a.shift_real(n_shift as f64);
    cfg.require_positive_stable(&shifted, "A + n_shift·I", "Eq. (eq.07)")?;
    let g = gamma_integral(&shifted, cfg)?.inverse()?;
    Ok(g.lmul_exact(&pochhammer(a, n_shift)))
}

/// Γ⁻¹(A) with the shift chosen automatically.
///
/// Unlike [`gamma_reciprocal`] no invertibility of A + kI is needed: the product
/// form is continuous through the poles of Γ.
pub fn gamma_reciprocal_auto(a: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = shift_count(a, 0.5)?;
    let g = gamma_integral(&a.shift_real(n as f64), cfg)?.inverse()?;
    Ok(g.lmul_exact(&pochhammer(a, n)))
}

/// (A)ₙ = Γ⁻¹(A)Γ(A + nI).
pub fn pochhammer_via_gamma(a: &SquareMatrix, n: usize, cfg: &EvalConfig) -> Result<EvalReport> {
    cfg.require_positive_stable(a, "A", "Eq. (c1eq.010)")?;
    if n == 0 {
        return Ok(EvalReport::exact(SquareMatrix::identity(a.order())));
    }
    let inv = gamma_integral(a, cfg)?.inverse()?;
    let g = gamma_integral(&a.shift_real(n as f64), cfg)?;
    Ok(inv.mul(&g))
}

/// 𝔅(A, B) in the chosen form.
pub fn beta_matrix(a: &SquareMatrix, b: &SquareMatrix, form: BetaForm, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Eqs. (1ca1.4)/(1ca1.5)";
    cfg.require_same_order(&[a, b])?;
    cfg.require_positive_stable(a, "A", ANCHOR)?;
    cfg.require_positive_stable(b, "B", ANCHOR)?;
    cfg.require_commuting(&[("A", a), ("B", b)], ANCHOR)?;
    match form {
        BetaForm::Unit => beta_unit_integral(a, b, cfg),
        BetaForm::Halfline => {
            let n = a.order();
            let pa = ExpPencil::new(&a.shift_real(-1.0));
            let pab = ExpPencil::new(&(a + b).scale_real(-1.0));
            let pb = ExpPencil::new(&b.shift_real(1.0).scale_real(-1.0));
            integrate_halfline(
                n,
                |u| {
                    Ok(if u <= 1.0 {
                        &pa.real_power(u) * &pab.real_power(1.0 + u)
                    } else {
                        // (u/(1+u))^{A−I}(1+u)^{−(B+I)}: same value for commuting A, B, no overflow.
                        &pa.real_power(u / (1.0 + u)) * &pb.real_power(1.0 + u)
                    })
                },
                &cfg.quadrature,
            )
        }
        BetaForm::GammaProduct => {
            let ga = gamma_integral(a, cfg)?;
            let gb = gamma_integral(b, cfg)?;
            let gab = gamma_integral(&(a + b), cfg)?.inverse()?;
            Ok(EvalReport::product(&[&ga, &gb, &gab]))
        }
    }
}

/// ∫₀¹ t^{A−I}(1−t)^{B−I} dt with no hypothesis checks; used for the
/// normalising beta factors, which do not require commuting arguments.
pub(crate) fn beta_unit_integral(a: &SquareMatrix, b: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = a.order();
    let pa = ExpPencil::new(&a.shift_real(-1.0));
    let pb = ExpPencil::new(&b.shift_real(-1.0));
    integrate_unit(n, |t, tc| Ok(&pa.real_power(t) * &pb.real_power(tc)), &cfg.quadrature)
}

/// exp(−s·X) with the underflow short-cut.
struct Damping {
    pencil: ExpPencil,
    beta: f64,
    zero: bool,
}

impl Damping {
    fn new(x: &SquareMatrix) -> Result<Self> {
        Ok(Self { pencil: ExpPencil::new(x), beta: smallest_real_part(x)?, zero: x.is_zero() })
    }

    fn eval(&self, s: f64) -> Option<SquareMatrix> {
        if self.zero {
            return None;
        }
        if s * self.beta > EXP_CUTOFF {
            return Some(SquareMatrix::zeros(self.pencil.order()));
        }
        Some(self.pencil.eval(C64::new(-s, 0.0)))
    }
}

/// Γ_X(A) = ∫₀^∞ t^{A−I} exp(−tI − X/t) dt.
pub fn gamma_extended(a: &SquareMatrix, x: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "extended gamma (§2)";
    cfg.require_same_order(&[a, x])?;
    cfg.require_positive_stable(a, "A", ANCHOR)?;
    cfg.require_positive_stable_or_zero(x, "X", ANCHOR)?;
    cfg.require_commuting(&[("A", a), ("X", x)], ANCHOR)?;
    let n = a.order();
    let pa = ExpPencil::new(&a.shift_real(-1.0));
    let d = Damping::new(x)?;
    integrate_halfline(
        n,
        |t| {
            if t > EXP_CUTOFF {
                return Ok(SquareMatrix::zeros(n));
            }
            let base = pa.real_power(t).scale_real((-t).exp());
            Ok(match d.eval(1.0 / t) {
                Some(e) => &base * &e,
                None => base,
            })
        },
        &cfg.quadrature,
    )
}

/// 𝔅(A, B; X) = ∫₀¹ t^{A−I}(1−t)^{B−I} exp(−X/(t(1−t))) dt.
pub fn beta_extended(a: &SquareMatrix, b: &SquareMatrix, x: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Eq. (xb1)";
    cfg.require_same_order(&[a, b, x])?;
    cfg.require_positive_stable(a, "A", ANCHOR)?;
    cfg.require_positive_stable(b, "B", ANCHOR)?;
    cfg.require_positive_stable_or_zero(x, "X", ANCHOR)?;
    cfg.require_commuting(&[("A", a), ("B", b), ("X", x)], ANCHOR)?;
    beta_extended_integral(a, b, x, cfg)
}

fn beta_extended_integral(a: &SquareMatrix, b: &SquareMatrix, x: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = a.order();
    let pa = ExpPencil::new(&a.shift_real(-1.0));
    let pb = ExpPencil::new(&b.shift_real(-1.0));
    let d = Damping::new(x)?;
    integrate_unit(
        n,
        |t, tc| {
            let s = 1.0 / (t * tc);
            match d.eval(s) {
                Some(e) if e.is_zero() => Ok(e),
                Some(e) => Ok(&(&pa.real_power(t) * &pb.real_power(tc)) * &e),
                None => Ok(&pa.real_power(t) * &pb.real_power(tc)),
            }
        },
        &cfg.quadrature,
    )
}

/// ∫₀¹ t^{A−I}(1−t)^{B−I} exp(−X/(t(1−t))) tⁿ dt for n < count.
pub(crate) fn beta_extended_moments(
    a: &SquareMatrix,
    b: &SquareMatrix,
    x: &SquareMatrix,
    count: usize,
    cfg: &EvalConfig,
) -> Result<MomentSet> {
    let n = a.order();
    let pa = ExpPencil::new(&a.shift_real(-1.0));
    let pb = ExpPencil::new(&b.shift_real(-1.0));
    let d = Damping::new(x)?;
    integrate_unit_moments(
        n,
        count,
        |t, tc| {
            let base = || &pa.real_power(t) * &pb.real_power(tc);
            Ok(Some(match d.eval(1.0 / (t * tc)) {
                Some(e) if e.is_zero() => e,
                Some(e) => &base() * &e,
                None => base(),
            }))
        },
        &cfg.quadrature,
    )
}

/// Γ_X(A)Γ_X(B)Γ_X⁻¹(A+B) next to 𝔅(A, B; X). The two are reported for
/// comparison only; they differ for X ≠ 0.
pub fn extended_factorization_sides(
    a: &SquareMatrix,
    b: &SquareMatrix,
    x: &SquareMatrix,
    cfg: &EvalConfig,
) -> Result<(EvalReport, EvalReport)> {
    let lhs = beta_extended(a, b, x, cfg)?;
    let ga = gamma_extended(a, x, cfg)?;
    let gb = gamma_extended(b, x, cfg)?;
    let gab = gamma_extended(&(a + b), x, cfg)?.inverse()?;
    Ok((lhs, EvalReport::product(&[&ga, &gb, &gab])))
}

/// Convergence at infinity of the new extended gamma integral: the kernel decays
/// like t^{−A}, so A − X must be positive stable unless A = B.
fn require_gamma_ne_convergence(p: &GammaBetaParams, cfg: &EvalConfig, anchor: &str) -> Result<()> {
    if p.a != p.b {
        cfg.require_positive_stable(&(&p.a - &p.x), "A − X (convergence at infinity)", anchor)?;
    }
    Ok(())
}

/// Γ_Y^{(A,B)}(X) = ∫₀^∞ ₁F₁(A; B; −tI − Y/t) t^{X−I} dt.
pub fn gamma_new_extended(p: &GammaBetaParams, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Eq. (3.1)";
    cfg.require_same_order(&[&p.a, &p.b, &p.x, &p.y])?;
    cfg.require_positive_stable(&p.a, "A", ANCHOR)?;
    cfg.require_positive_stable(&p.b, "B", ANCHOR)?;
    cfg.require_positive_stable(&p.x, "X", ANCHOR)?;
    cfg.require_positive_stable_or_zero(&p.y, "Y", ANCHOR)?;
    require_gamma_ne_convergence(p, cfg, ANCHOR)?;
    let n = p.a.order();
    let k = Kernel::new(&p.a, &p.b, &p.y, cfg)?;
    let xm1 = p.x.shift_real(-1.0);
    let px = ExpPencil::new(&xm1);
    let mut r = integrate_halfline(
        n,
        |t| Ok(k.eval_scaled_power(t, 1.0 / t, &xm1, t, &px)?.unwrap_or_else(|| SquareMatrix::zeros(n))),
        &cfg.quadrature,
    )?;
    finish_kernel_report(&k, &mut r);
    Ok(r)
}

/// Γ(B)Γ⁻¹(A)Γ⁻¹(B−A) ∫₀¹ Γ_{Yμ²}(X) μ^{A−X−I}(1−μ)^{B−A−I} dμ.
pub fn gamma_new_extended_form2(p: &GammaBetaParams, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 3.1, Eq. (3.3)";
    cfg.require_same_order(&[&p.a, &p.b, &p.x, &p.y])?;
    let ba = &p.b - &p.a;
    cfg.require_positive_stable(&p.a, "A", ANCHOR)?;
    cfg.require_positive_stable(&p.b, "B", ANCHOR)?;
    cfg.require_positive_stable(&ba, "B − A", ANCHOR)?;
    cfg.require_positive_stable(&p.x, "X", ANCHOR)?;
    cfg.require_positive_stable_or_zero(&p.y, "Y", ANCHOR)?;
    cfg.require_commuting(&[("A", &p.a), ("B", &p.b), ("X", &p.x), ("Y", &p.y)], ANCHOR)?;
    require_gamma_ne_convergence(p, cfg, ANCHOR)?;
    let n = p.a.order();

    // Inner Γ_{Yμ²}(X): the factor e^{−t}t^{X−I} is shared by every μ.
    let px = ExpPencil::new(&p.x.shift_real(-1.0));
    let inner_rule = CachedHalfline::new(cfg.quadrature.max_levels.min(9), |t| {
        if t > EXP_CUTOFF {
            None
        } else {
            Some(px.real_power(t).scale_real((-t).exp()))
        }
    });
    let y_damp = Damping::new(&p.y)?;
    let inner_stats = Mutex::new((0.0f64, true, 0usize));
    let inner = |mu: f64| -> Result<SquareMatrix> {
        let r = inner_rule.integrate(
            n,
            |t, g| match g {
                None => SquareMatrix::zeros(n),
                Some(g) => match y_damp.eval(mu * mu / t) {
                    Some(e) => g * &e,
                    None => g.clone(),
                },
            },
            &cfg.quadrature,
        )?;
        let mut s = inner_stats.lock().expect("inner stats");
        s.0 = s.0.max(r.relative_error());
        s.1 &= r.converged;
        s.2 += r.evaluations;
        Ok(r.value)
    };
    let p1 = ExpPencil::new(&(&p.a - &p.x).shift_real(-1.0));
    let p2 = ExpPencil::new(&ba.shift_real(-1.0));
    let outer = integrate_unit(
        n,
        |mu, muc| Ok(&(&inner(mu)? * &p1.real_power(mu)) * &p2.real_power(muc)),
        &cfg.quadrature,
    )?;
    let (inner_rel, inner_ok, inner_evals) = *inner_stats.lock().expect("inner stats");
    let mut outer = outer;
    outer.error_estimate += inner_rel * outer.value.frobenius_norm();
    outer.evaluations += inner_evals;
    if !inner_ok {
        outer.converged = false;
        outer.warn("inner extended-gamma quadrature did not converge at some outer nodes");
    }
    let gb = gamma_integral(&p.b, cfg)?;
    let ra = gamma_integral(&p.a, cfg)?.inverse()?;
    let rba = gamma_integral(&ba, cfg)?.inverse()?;
    Ok(EvalReport::product(&[&gb, &ra, &rba, &outer]))
}

fn require_beta_ne(p: &GammaBetaParams, z: &SquareMatrix, cfg: &EvalConfig, anchor: &str) -> Result<()> {
    cfg.require_same_order(&[&p.a, &p.b, &p.x, &p.y, z])?;
    cfg.require_positive_stable(&p.a, "A", anchor)?;
    cfg.require_positive_stable(&p.b, "B", anchor)?;
    cfg.require_positive_stable(&p.x, "X", anchor)?;
    cfg.require_positive_stable(z, "Z", anchor)?;
    cfg.require_positive_stable_or_zero(&p.y, "Y", anchor)
}

/// Finishes a kernel-weighted quadrature: attaches kernel warnings and marks the
/// result unconverged when nodes had to be dropped.
pub(crate) fn finish_kernel_report(k: &Kernel, r: &mut EvalReport) {
    let ws = k.warnings();
    if ws.iter().any(|w| w.contains("dropped")) {
        r.converged = false;
    }
    for w in ws {
        r.warn(w);
    }
}

/// 𝔅_Y^{(A,B)}(X, Z) = ∫₀¹ ₁F₁(A; B; −Y/(t(1−t))) t^{X−I}(1−t)^{Z−I} dt.
pub fn beta_new_extended(p: &GammaBetaParams, cfg: &EvalConfig) -> Result<EvalReport> {
    let z = p.z()?;
    require_beta_ne(p, z, cfg, "Eq. (3.2)")?;
    let k = Kernel::new(&p.a, &p.b, &p.y, cfg)?;
    let mut r = beta_ne_integral(&k, &p.x, z, cfg)?;
    finish_kernel_report(&k, &mut r);
    Ok(r)
}

pub(crate) fn beta_ne_integral(k: &Kernel, x: &SquareMatrix, z: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let set = beta_ne_moments(k, x, z, 1, cfg)?;
    Ok(set.moments.into_iter().next().expect("one moment"))
}

/// ∫₀¹ ₁F₁(A; B; −Y/(t(1−t))) t^{X−I}(1−t)^{Z−I} tⁿ dt for n < count.
pub(crate) fn beta_ne_moments(
    k: &Kernel,
    x: &SquareMatrix,
    z: &SquareMatrix,
    count: usize,
    cfg: &EvalConfig,
) -> Result<MomentSet> {
    let n = x.order();
    let px = ExpPencil::new(&x.shift_real(-1.0));
    let pz = ExpPencil::new(&z.shift_real(-1.0));
    integrate_unit_moments(
        n,
        count,
        |t, tc| {
            Ok(k.eval_scaled(0.0, 1.0 / (t * tc))?
                .map(|v| &(&v * &px.real_power(t)) * &pz.real_power(tc)))
        },
        &cfg.quadrature,
    )
}

/// ∫₀^∞ ₁F₁(A; B; −2Y − Y(u + 1/u)) u^{X−I}(1+u)^{−(X+Z)} du.
pub fn beta_new_extended_halfline(p: &GammaBetaParams, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 3.2, Eq. (e3.7)";
    let z = p.z()?;
    require_beta_ne(p, z, cfg, ANCHOR)?;
    let xz = &p.x + z;
    cfg.require_positive_stable(&xz, "X + Z", ANCHOR)?;
    let n = p.a.order();
    let k = Kernel::new(&p.a, &p.b, &p.y, cfg)?;
    let px = ExpPencil::new(&p.x.shift_real(-1.0));
    let pxz = ExpPencil::new(&xz.scale_real(-1.0));
    let pz = ExpPencil::new(&z.shift_real(1.0).scale_real(-1.0));
    let split = cfg.commute(&p.x, z);
    let mut r = integrate_halfline(
        n,
        |u| {
            let Some(v) = k.eval_scaled(0.0, 2.0 + u + 1.0 / u)? else {
                return Ok(SquareMatrix::zeros(n));
            };
            if v.is_zero() {
                return Ok(v);
            }
            let w = if split && u > 1.0 {
                &px.real_power(u / (1.0 + u)) * &pz.real_power(1.0 + u)
            } else {
                &px.real_power(u) * &pxz.real_power(1.0 + u)
            };
            Ok(&v * &w)
        },
        &cfg.quadrature,
    )?;
    finish_kernel_report(&k, &mut r);
    Ok(r)
}

/// Σₙ 𝔅_Y^{(A,B)}(X + nI, I)·(Z)ₙ/n!, which equals 𝔅_Y^{(A,B)}(X, I − Z).
pub fn beta_ne_summation(p: &GammaBetaParams, cfg: &EvalConfig) -> Result<EvalReport> {
    const ANCHOR: &str = "Thm 3.4, Eq. (3.10)";
    let z = p.z()?;
    let n = p.a.order();
    let id = SquareMatrix::identity(n);
    require_beta_ne(p, &id, cfg, ANCHOR)?;
    cfg.require_positive_stable(&(&id - z), "I − Z", ANCHOR)?;
    let k = Kernel::new(&p.a, &p.b, &p.y, cfg)?;
    let mut r = beta_ne_summation_terms(&k, &p.x, z, cfg)?;
    finish_kernel_report(&k, &mut r);
    Ok(r)
}

fn beta_ne_summation_terms(k: &Kernel, x: &SquareMatrix, z: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    let n = x.order();
    let id = SquareMatrix::identity(n);
    let coef = Mutex::new(vec![id.clone()]);
    moment_series(
        n,
        64,
        &cfg.series,
        |count| beta_ne_moments(k, x, &id, count, cfg),
        |j, m| {
            let mut c = coef.lock().expect("coefficients");
            while c.len() <= j {
                let i = c.len() - 1;
                let next = (&c[i] * &z.shift_real(i as f64)).scale_real(1.0 / (i + 1) as f64);
                c.push(next);
            }
            let cj = &c[j];
            Ok((&m.value * cj, m.error_estimate * cj.frobenius_norm()))
        },
    )
}
