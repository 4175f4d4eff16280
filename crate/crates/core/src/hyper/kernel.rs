//! Matrix confluent hypergeometric function ₁F₁(A; B; M) with the ordering
//! convention Σ (A)ₙ·[(B)ₙ]⁻¹·Mⁿ/n!, plus a node-oriented evaluator for the
//! damping kernels ₁F₁(A; B; −(s·I + c·Y)) that appear inside every integral.
//!
//! Branches for a kernel argument X = s·I + c·Y (so M = −X):
//! - A = B: the series is exp(M).
//! - small ‖X‖: direct series.
//! - commuting A, B, Y and Re σ(X) large: algebraic asymptotic expansion
//!   Γ(B)Γ⁻¹(B−A) X^{−A} Σ (A)ₖ(A−B+I)ₖ X^{−k}/k!.
//! - commuting, moderate: Kummer transform e^{−X} ₁F₁(B−A; B; X), whose terms
//!   are all of one sign for positive spectra. The product with e^{−X} loses
//!   about e^{spread of Re σ(X)} in a non-normal basis, so it is limited to
//!   narrow spectra.
//! - commuting, wide spectrum: Euler integral
//!   𝔅(A, B−A)⁻¹ ∫₀¹ u^{A−I}(1−u)^{B−A−I} e^{−uX} du (needs A, B−A positive
//!   stable), which has no cancellation at all; failing that, spectral
//!   splitting Σₖ ₁F₁(A; B; −Xₖ)Pₖ over the eigenprojectors Pₖ of Y, where
//!   Yₖ = Y·Pₖ + λₖ(I − Pₖ) has a single eigenvalue.
//! - otherwise the direct series is tried while cancellation is tolerable and
//!   the node is dropped beyond that.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::gammabeta::{gamma_any, gamma_reciprocal_auto};
use crate::matcalc::{
    alpha_beta_of, eigenvalues, expm, logm, spectral_decompose, ExpPencil, SquareMatrix, C64, ONE, ZERO,
};
use crate::quadrature::{integrate_unit, EvalReport, QuadratureSpec, SeriesSpec};

const DIRECT_NORM: f64 = 2.0;
/// Largest argument norm at which the plain series is still attempted when no
/// cancellation-free branch applies.
const DIRECT_CANCEL_NORM: f64 = 30.0;
/// Kummer-series terms grow like e^{|X|}; stay well inside the f64 range.
const KUMMER_MAX: f64 = 600.0;
const ASYM_MIN: f64 = 40.0;
/// Widest real spread of σ(X) accepted by the Kummer branch (loss ≈ e^{spread}).
const KUMMER_SPREAD: f64 = 8.0;
const EULER_SPEC: QuadratureSpec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-13, max_levels: 12, max_evals: 20_000 };
const KERNEL_TERM_TOL: f64 = 1e-17;
const MAX_KERNEL_TERMS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Direct,
    Kummer,
    Asymptotic,
    Euler,
    Split,
}

struct Euler {
    a1: ExpPencil,
    ba1: ExpPencil,
    /// 𝔅(A, B−A)⁻¹ from the same rule, so ₁F₁(A; B; 0) = I to rounding.
    norm_inv: SquareMatrix,
}

struct Asymptotic {
    /// Γ(B)Γ⁻¹(B−A).
    prefactor: SquareMatrix,
    /// (A+kI)(A−B+(k+1)I)/(k+1).
    steps: Vec<SquareMatrix>,
    threshold: f64,
    /// For X = c·Y: prefactor·Y^{−A}·Cₖ·Y^{−k}, where Cₖ = (A)ₖ(A−B+I)ₖ/k!.
    scaled_terms: Option<Vec<SquareMatrix>>,
    a_pencil: ExpPencil,
}

/// Precomputed evaluator of ₁F₁(A; B; −(s·I + c·Y)).
pub struct Kernel {
    a: SquareMatrix,
    b: SquareMatrix,
    y: SquareMatrix,
    n: usize,
    identical: bool,
    commuting: bool,
    y_pencil: ExpPencil,
    y_eigs: Vec<C64>,
    y_beta: f64,
    y_norm: f64,
    /// (A)ₖ[(B)ₖ]⁻¹/k!, grown on demand.
    direct: OnceLock<Vec<SquareMatrix>>,
    /// (B−A+kI)(B+kI)⁻¹/(k+1).
    kummer: OnceLock<Vec<SquareMatrix>>,
    asym: OnceLock<Option<Asymptotic>>,
    euler: OnceLock<Option<Euler>>,
    split: OnceLock<Option<Vec<(SquareMatrix, Kernel)>>>,
    /// Sub-kernels of a split never split again.
    splittable: bool,
    cfg: EvalConfig,
    cancel_nodes: AtomicUsize,
    dropped: AtomicUsize,
}

fn check_poles(b: &SquareMatrix, count: usize) -> Result<Vec<SquareMatrix>> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        match b.shift_real(k as f64).inverse() {
            Ok(inv) => out.push(inv),
            Err(_) => return Err(MatError::ParameterPole { n: k }),
        }
    }
    Ok(out)
}

impl Kernel {
    pub fn new(a: &SquareMatrix, b: &SquareMatrix, y: &SquareMatrix, cfg: &EvalConfig) -> Result<Self> {
        cfg.require_same_order(&[a, b, y])?;
        Self::with_eigenvalues(a, b, y, eigenvalues(y)?, cfg)
    }

    fn with_eigenvalues(a: &SquareMatrix, b: &SquareMatrix, y: &SquareMatrix, y_eigs: Vec<C64>, cfg: &EvalConfig) -> Result<Self> {
        let n = cfg.require_same_order(&[a, b, y])?;
        let identical = a == b;
        let commuting = cfg.all_commute(&[a, b, y]);
        let (_, y_beta) = alpha_beta_of(&y_eigs);
        // Pole check up to the deepest direct-series depth that can be requested.
        if !identical {
            check_poles(b, 8)?;
        }
        Ok(Self {
            a: a.clone(),
            b: b.clone(),
            y: y.clone(),
            n,
            identical,
            commuting,
            y_pencil: ExpPencil::new(y),
            y_eigs,
            y_beta,
            y_norm: y.frobenius_norm(),
            direct: OnceLock::new(),
            kummer: OnceLock::new(),
            asym: OnceLock::new(),
            euler: OnceLock::new(),
            split: OnceLock::new(),
            splittable: true,
            cfg: *cfg,
            cancel_nodes: AtomicUsize::new(0),
            dropped: AtomicUsize::new(0),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    fn direct_coefficients(&self) -> Result<&Vec<SquareMatrix>> {
        if let Some(v) = self.direct.get() {
            return Ok(v);
        }
        let count = 260;
        let binv = check_poles(&self.b, count)?;
        let mut out = Vec::with_capacity(count);
        let mut pa = SquareMatrix::identity(self.n);
        let mut pb = SquareMatrix::identity(self.n);
        out.push(SquareMatrix::identity(self.n));
        for k in 0..count - 1 {
            pa = (&pa * &self.a.shift_real(k as f64)).scale_real(1.0 / (k + 1) as f64);
            pb = &binv[k] * &pb;
            out.push(&pa * &pb);
        }
        Ok(self.direct.get_or_init(|| out))
    }

    fn kummer_steps(&self) -> Result<&Vec<SquareMatrix>> {
        if let Some(v) = self.kummer.get() {
            return Ok(v);
        }
        let count = (KUMMER_MAX * 1.5) as usize + 400;
        let binv = check_poles(&self.b, count)?;
        let ba = &self.b - &self.a;
        let out: Vec<SquareMatrix> = (0..count)
            .map(|k| (&ba.shift_real(k as f64) * &binv[k]).scale_real(1.0 / (k + 1) as f64))
            .collect();
        Ok(self.kummer.get_or_init(|| out))
    }

    fn asymptotic(&self) -> Option<&Asymptotic> {
        self.asym.get_or_init(|| self.build_asymptotic()).as_ref()
    }

    fn build_asymptotic(&self) -> Option<Asymptotic> {
        if !self.commuting || self.identical {
            return None;
        }
        let ba = &self.b - &self.a;
        let gb = gamma_any(&self.b, &self.cfg).ok()?;
        let rba = gamma_reciprocal_auto(&ba, &self.cfg).ok()?;
        let ra = gamma_reciprocal_auto(&self.a, &self.cfg).ok()?;
        let prefactor = &gb.value * &rba.value;
        // Neglected exponentially small part relative to the algebraic part:
        // ‖Γ⁻¹(A)‖‖Γ(B−A)‖ e^{−x} x^{q}, q ≥ Re σ(2A − B).
        let g_ba_norm = rba.value.inverse().map(|m| m.frobenius_norm()).unwrap_or(f64::INFINITY);
        let rho = (ra.value.frobenius_norm() * g_ba_norm).max(1.0);
        if !rho.is_finite() {
            return None;
        }
        let q = alpha_beta_of(&eigenvalues(&(&self.a.scale_real(2.0) - &self.b)).ok()?).0.max(0.0);
        let target = KERNEL_TERM_TOL.ln();
        let mut threshold = ASYM_MIN;
        while rho.ln() - threshold + q * threshold.ln() > target {
            threshold += 1.0;
            if threshold > KUMMER_MAX {
                return None;
            }
        }
        let amb1 = (&self.a - &self.b).shift_real(1.0);
        let steps: Vec<SquareMatrix> = (0..200)
            .map(|k| {
                (&self.a.shift_real(k as f64) * &amb1.shift_real(k as f64)).scale_real(1.0 / (k + 1) as f64)
            })
            .collect();
        let scaled_terms = self.scaled_asymptotic_terms(&prefactor, &steps);
        Some(Asymptotic { prefactor, steps, threshold, scaled_terms, a_pencil: ExpPencil::new(&self.a) })
    }

    fn euler(&self) -> Option<&Euler> {
        self.euler.get_or_init(|| self.build_euler()).as_ref()
    }

    fn build_euler(&self) -> Option<Euler> {
        if !self.commuting || self.identical {
            return None;
        }
        let ba = &self.b - &self.a;
        let stable = |m: &SquareMatrix| eigenvalues(m).map(|e| alpha_beta_of(&e).1 > 0.0).unwrap_or(false);
        if !stable(&self.a) || !stable(&ba) {
            return None;
        }
        let a1 = ExpPencil::new(&self.a.shift_real(-1.0));
        let ba1 = ExpPencil::new(&ba.shift_real(-1.0));
        let norm = integrate_unit(self.n, |u, uc| Ok(&a1.real_power(u) * &ba1.real_power(uc)), &EULER_SPEC).ok()?;
        if !norm.converged {
            return None;
        }
        Some(Euler { a1, ba1, norm_inv: norm.value.inverse().ok()? })
    }

    fn euler_integral(&self, e: &Euler, s: f64, c: f64) -> Result<Option<(SquareMatrix, f64)>> {
        let r = integrate_unit(
            self.n,
            |u, uc| {
                let damp = self.y_pencil.eval(C64::new(-u * c, 0.0)).scale_real((-u * s).exp());
                Ok(&(&e.a1.real_power(u) * &e.ba1.real_power(uc)) * &damp)
            },
            &EULER_SPEC,
        )?;
        if !r.converged {
            return Ok(None);
        }
        Ok(Some((&e.norm_inv * &r.value, r.error_estimate * e.norm_inv.frobenius_norm())))
    }

    fn split(&self) -> Option<&[(SquareMatrix, Kernel)]> {
        self.split.get_or_init(|| self.build_split()).as_deref()
    }

    fn build_split(&self) -> Option<Vec<(SquareMatrix, Kernel)>> {
        if !self.commuting || self.identical || !self.splittable || self.n == 1 {
            return None;
        }
        let sd = spectral_decompose(&self.y).ok()?;
        let scale = self.y_norm.max(f64::MIN_POSITIVE);
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n {
            match clusters.iter_mut().find(|c| (sd.eigenvalues[c[0]] - sd.eigenvalues[i]).norm() <= 1e-8 * scale) {
                Some(c) => c.push(i),
                None => clusters.push(vec![i]),
            }
        }
        if clusters.len() == 1 {
            return None;
        }
        let id = SquareMatrix::identity(self.n);
        clusters
            .iter()
            .map(|members| {
                let mask: Vec<C64> = (0..self.n).map(|i| if members.contains(&i) { ONE } else { ZERO }).collect();
                let proj = sd.conjugate_diagonal(&mask);
                let mu = members.iter().map(|&i| sd.eigenvalues[i]).sum::<C64>() / members.len() as f64;
                let yk = &(&self.y * &proj) + &(&id - &proj).scale(mu);
                // σ(Yₖ) is known; a repeated eigenvalue is also where an
                // iterative Schur step is least reliable.
                let eigs = (0..self.n).map(|i| if members.contains(&i) { sd.eigenvalues[i] } else { mu }).collect();
                let mut k = Kernel::with_eigenvalues(&self.a, &self.b, &yk, eigs, &self.cfg).ok()?;
                k.splittable = false;
                k.commuting = true;
                Some((proj, k))
            })
            .collect()
    }

    fn split_eval(&self, parts: &[(SquareMatrix, Kernel)], s: f64, c: f64) -> Result<Option<(SquareMatrix, f64)>> {
        let mut value = SquareMatrix::zeros(self.n);
        let mut err = 0.0;
        for (proj, k) in parts {
            let Some((v, e)) = k.eval_with(s, c, Method::Auto)? else { return Ok(None) };
            value += &(&v * proj);
            err += e * proj.frobenius_norm();
        }
        Ok(Some((value, err)))
    }

    fn scaled_asymptotic_terms(&self, prefactor: &SquareMatrix, steps: &[SquareMatrix]) -> Option<Vec<SquareMatrix>> {
        if self.y.is_zero() {
            return None;
        }
        let log_y = logm(&self.y).ok()?;
        let y_neg_a = expm(&(&self.a * &log_y).scale_real(-1.0));
        let y_inv = self.y.inverse().ok()?;
        let mut c = prefactor * &y_neg_a;
        let mut out = Vec::with_capacity(steps.len() + 1);
        out.push(c.clone());
        for s in steps {
            c = &(&c * s) * &y_inv;
            if !c.is_finite() {
                break;
            }
            out.push(c.clone());
        }
        Some(out)
    }

    /// Warnings accumulated across node evaluations.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let sub = |f: fn(&Kernel) -> usize| -> usize {
            self.split.get().and_then(|p| p.as_ref()).map_or(0, |p| p.iter().map(|(_, k)| f(k)).sum())
        };
        let c = self.cancel_nodes.load(Ordering::Relaxed) + sub(|k| k.cancel_nodes.load(Ordering::Relaxed));
        if c > 0 {
            out.push(format!(
                "{c} kernel nodes used the plain series at large argument (non-commuting parameters); accuracy may be reduced by cancellation"
            ));
        }
        let d = self.dropped.load(Ordering::Relaxed) + sub(|k| k.dropped.load(Ordering::Relaxed));
        if d > 0 {
            out.push(format!("{d} kernel nodes dropped (argument outside every stable evaluation branch)"));
        }
        out
    }

    pub fn attach_warnings(&self, report: &mut EvalReport) {
        for w in self.warnings() {
            report.warn(w);
        }
    }

    /// ₁F₁(A; B; −(s·I + c·Y)), or `None` if no branch can represent it.
    pub fn eval_scaled(&self, s: f64, c: f64) -> Result<Option<SquareMatrix>> {
        self.eval_with(s, c, Method::Auto).map(|r| r.map(|(v, _)| v))
    }

    /// ₁F₁(A; B; −(s·I + c·Y))·t^E. Where the large-argument expansion applies,
    /// t^E is combined with X^{−A} in one exponential: a separately formed
    /// product of a decaying kernel and a growing power leaves rounding noise
    /// of their combined size, which need not be integrable.
    pub fn eval_scaled_power(&self, s: f64, c: f64, e: &SquareMatrix, t: f64, pencil: &ExpPencil) -> Result<Option<SquareMatrix>> {
        if self.commuting && !self.identical {
            let x_beta = s + c * self.y_beta;
            if x_beta >= ASYM_MIN {
                if let Some(asym) = self.asymptotic() {
                    if x_beta >= asym.threshold {
                        if let Some((v, _)) = self.asymptotic_series(asym, s, c, Some((e, t.ln()))) {
                            return Ok(Some(v));
                        }
                    }
                }
            }
        }
        Ok(self.eval_scaled(s, c)?.map(|v| if v.is_zero() { v } else { &v * &pencil.real_power(t) }))
    }

    /// Same as [`eval_scaled`](Self::eval_scaled) with a forced branch; returns the
    /// value together with a truncation estimate.
    pub fn eval_with(&self, s: f64, c: f64, method: Method) -> Result<Option<(SquareMatrix, f64)>> {
        if self.identical {
            let f = (-s).exp();
            return Ok(Some((self.y_pencil.eval(C64::new(-c, 0.0)).scale_real(f), 0.0)));
        }
        let x_norm = s * (self.n as f64).sqrt() + c.abs() * self.y_norm;
        let x_beta = s + c * self.y_beta;
        let x_max = self.y_eigs.iter().map(|l| (C64::new(s, 0.0) + l * c).norm()).fold(0.0, f64::max);
        let spread = self.y_eigs.iter().map(|l| (l * c).re).fold(f64::NEG_INFINITY, f64::max)
            - self.y_eigs.iter().map(|l| (l * c).re).fold(f64::INFINITY, f64::min);
        let method = match method {
            Method::Auto => self.choose(x_norm, x_beta, x_max, spread),
            m => Some(m),
        };
        let Some(method) = method else {
            self.dropped.fetch_add(1, Ordering::Relaxed);
            return Ok(None);
        };
        let x = || self.y.scale_real(c).shift_real(s);
        match method {
            Method::Direct => {
                if !self.commuting && x_norm > DIRECT_NORM {
                    self.cancel_nodes.fetch_add(1, Ordering::Relaxed);
                }
                self.direct_series(&x().scale_real(-1.0)).map(Some)
            }
            Method::Kummer => {
                let e = self.y_pencil.eval(C64::new(-c, 0.0)).scale_real((-s).exp());
                self.kummer_series(&x(), &e).map(Some)
            }
            Method::Asymptotic => {
                let Some(asym) = self.asymptotic() else {
                    return Err(MatError::Domain("asymptotic ₁F₁ branch unavailable for these parameters".into()));
                };
                Ok(self.asymptotic_series(asym, s, c, None))
            }
            Method::Euler => {
                let Some(e) = self.euler() else {
                    return Err(MatError::Domain("Euler integral branch needs A and B−A positive stable".into()));
                };
                let out = self.euler_integral(e, s, c)?;
                if out.is_none() {
                    self.dropped.fetch_add(1, Ordering::Relaxed);
                }
                Ok(out)
            }
            Method::Split => {
                let Some(parts) = self.split() else {
                    return Err(MatError::Domain("spectral splitting needs commuting parameters and a diagonalizable Y".into()));
                };
                // Drops are counted by the sub-kernels.
                self.split_eval(parts, s, c)
            }
            Method::Auto => unreachable!(),
        }
    }

    fn choose(&self, x_norm: f64, x_beta: f64, x_max: f64, spread: f64) -> Option<Method> {
        if x_norm <= DIRECT_NORM {
            return Some(Method::Direct);
        }
        if !self.commuting {
            return (x_norm <= DIRECT_CANCEL_NORM).then_some(Method::Direct);
        }
        if x_beta >= ASYM_MIN {
            if let Some(a) = self.asymptotic() {
                if x_beta >= a.threshold {
                    return Some(Method::Asymptotic);
                }
            }
        }
        if x_beta > 0.0 && x_max <= KUMMER_MAX && (self.n == 1 || spread <= KUMMER_SPREAD) {
            return Some(Method::Kummer);
        }
        if self.euler().is_some() {
            return Some(Method::Euler);
        }
        if spread > KUMMER_SPREAD && self.split().is_some() {
            return Some(Method::Split);
        }
        if x_norm <= DIRECT_CANCEL_NORM {
            return Some(Method::Direct);
        }
        None
    }

    fn direct_series(&self, m: &SquareMatrix) -> Result<(SquareMatrix, f64)> {
        let coeffs = self.direct_coefficients()?;
        let mut sum = SquareMatrix::identity(self.n);
        let mut power = SquareMatrix::identity(self.n);
        let mut small = 0;
        let mut last = 0.0;
        for q in coeffs.iter().skip(1) {
            power = &power * m;
            let term = q * &power;
            let tn = term.frobenius_norm();
            sum += &term;
            last = tn;
            if tn <= KERNEL_TERM_TOL * sum.frobenius_norm() {
                small += 1;
                if small >= 2 {
                    return Ok((sum, tn));
                }
            } else {
                small = 0;
            }
        }
        Ok((sum, last))
    }

    fn kummer_series(&self, x: &SquareMatrix, e: &SquareMatrix) -> Result<(SquareMatrix, f64)> {
        let steps = self.kummer_steps()?;
        let mut sum = SquareMatrix::identity(self.n);
        let mut term = SquareMatrix::identity(self.n);
        let mut small = 0;
        let mut last = 0.0;
        for r in steps.iter().take(MAX_KERNEL_TERMS) {
            term = &(&term * r) * x;
            let tn = term.frobenius_norm();
            sum += &term;
            last = tn;
            if tn <= KERNEL_TERM_TOL * sum.frobenius_norm() {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        let value = e * &sum;
        let scale = value.frobenius_norm() / sum.frobenius_norm().max(f64::MIN_POSITIVE);
        Ok((value, last * scale))
    }

    /// With `power = (E, ln t)` the result is multiplied by t^E, folded into
    /// the same exponential as X^{−A}.
    fn asymptotic_series(
        &self,
        asym: &Asymptotic,
        s: f64,
        c: f64,
        power: Option<(&SquareMatrix, f64)>,
    ) -> Option<(SquareMatrix, f64)> {
        if s == 0.0 && c > 0.0 && power.is_none() {
            if let Some(terms) = &asym.scaled_terms {
                // X^{−A} = c^{−A}·Y^{−A} and X^{−k} = c^{−k}Y^{−k}.
                let inv_c = 1.0 / c;
                let mut sum = SquareMatrix::zeros(self.n);
                let mut f = 1.0;
                let mut prev = f64::INFINITY;
                let mut last = 0.0;
                for t in terms {
                    let tn = t.frobenius_norm() * f;
                    if tn > prev {
                        break;
                    }
                    sum.axpy(C64::new(f, 0.0), t);
                    last = tn;
                    if tn <= KERNEL_TERM_TOL * sum.frobenius_norm() {
                        break;
                    }
                    prev = tn;
                    f *= inv_c;
                }
                let value = &asym.a_pencil.eval(C64::new(-c.ln(), 0.0)) * &sum;
                return Some((value, last));
            }
        }
        let x = self.y.scale_real(c).shift_real(s);
        let log_x = if self.y.is_zero() {
            SquareMatrix::real_scalar(self.n, s.ln())
        } else {
            logm(&x).ok()?
        };
        let mut exponent = (&self.a * &log_x).scale_real(-1.0);
        if let Some((e, ln_t)) = power {
            exponent.axpy(C64::new(ln_t, 0.0), e);
        }
        let x_neg_a = expm(&exponent);
        let x_inv = x.inverse().ok()?;
        let mut term = SquareMatrix::identity(self.n);
        let mut sum = SquareMatrix::identity(self.n);
        let mut prev = 1.0;
        let mut last = 0.0;
        for st in &asym.steps {
            let next = &(&term * st) * &x_inv;
            let tn = next.frobenius_norm();
            if tn > prev {
                break;
            }
            sum += &next;
            last = tn;
            if tn <= KERNEL_TERM_TOL * sum.frobenius_norm() {
                break;
            }
            prev = tn;
            term = next;
        }
        let value = &(&asym.prefactor * &x_neg_a) * &sum;
        let err = last * value.frobenius_norm();
        Some((value, err))
    }
}

/// ₁F₁(A; B; M) for a general matrix argument.
///
/// The branch (direct series, Kummer transform, large-argument expansion) is
/// chosen from σ(M) and from whether A, B and M commute, since the transformed
/// forms are only valid under commutation.
pub fn kummer_1f1(a: &SquareMatrix, b: &SquareMatrix, m: &SquareMatrix, cfg: &EvalConfig) -> Result<EvalReport> {
    kummer_1f1_with(a, b, m, Method::Auto, cfg)
}

pub fn kummer_1f1_with(
    a: &SquareMatrix,
    b: &SquareMatrix,
    m: &SquareMatrix,
    method: Method,
    cfg: &EvalConfig,
) -> Result<EvalReport> {
    cfg.require_same_order(&[a, b, m])?;
    if m.is_zero() {
        return Ok(EvalReport::exact(SquareMatrix::identity(a.order())));
    }
    if a == b {
        return Ok(EvalReport::exact(expm(m)));
    }
    let x = m.scale_real(-1.0);
    let kernel = Kernel::new(a, b, &x, cfg)?;
    if matches!(method, Method::Kummer | Method::Asymptotic | Method::Euler | Method::Split) && !kernel.commuting {
        return Err(MatError::precondition(
            "commuting",
            "A, B and M",
            "Kummer transformation of the confluent series",
        ));
    }
    let out = kernel.eval_with(0.0, 1.0, method)?;
    let mut report = match out {
        Some((value, err)) => EvalReport { value, error_estimate: err, evaluations: 1, converged: true, warnings: vec![] },
        None => {
            return Err(MatError::Domain(
                "₁F₁ argument too large for the plain series and the parameters do not commute".into(),
            ))
        }
    };
    if !report.value.is_finite() {
        return Err(MatError::Domain("₁F₁ value overflowed".into()));
    }
    kernel.attach_warnings(&mut report);
    Ok(report)
}

/// Plain series with an explicit [`SeriesSpec`] (used where the contract asks
/// for the truncated sum itself, e.g. termwise reduction checks).
pub fn kummer_1f1_series(a: &SquareMatrix, b: &SquareMatrix, m: &SquareMatrix, spec: &SeriesSpec) -> Result<EvalReport> {
    let n = a.order();
    let mut tail = crate::quadrature::SeriesTail::new(spec);
    let mut sum = SquareMatrix::identity(n);
    let mut pa = SquareMatrix::identity(n);
    let mut pb_inv = SquareMatrix::identity(n);
    let mut power = SquareMatrix::identity(n);
    let mut terms = 1;
    for k in 0..spec.max_terms {
        pa = (&pa * &a.shift_real(k as f64)).scale_real(1.0 / (k + 1) as f64);
        let inv = b.shift_real(k as f64).inverse().map_err(|_| MatError::ParameterPole { n: k })?;
        pb_inv = &inv * &pb_inv;
        power = &power * m;
        let term = &(&pa * &pb_inv) * &power;
        sum += &term;
        terms += 1;
        tail.push(term.frobenius_norm(), sum.frobenius_norm());
        if tail.done() {
            break;
        }
    }
    Ok(tail.finish(sum, 0.0, terms))
}
