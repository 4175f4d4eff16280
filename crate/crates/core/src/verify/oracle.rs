//! Independent scalar implementations used as reference values.
//!
//! Nothing here touches the matrix code paths: gamma is Lanczos, quadrature is
//! adaptive Gauss–Kronrod on the real line after logistic/exponential
//! substitution (the matrix side uses double-exponential rules), and ₁F₁ has its
//! own series/asymptotic switch.

use num_complex::Complex64 as C64;

use crate::error::{MatError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// ln Γ(z) for Re z ≥ 0.5.
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (i, &ci) in LANCZOS.iter().enumerate().skip(1) {
        x += ci / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        pi / ((pi * z).sin() * gamma(1.0 - z))
    } else {
        ln_gamma_right(z).exp()
    }
}

/// 1/Γ(z), exactly zero at the poles.
pub fn rgamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return c(0.0);
    }
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        (pi * z).sin() * gamma(1.0 - z) / pi
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

pub fn poch(a: C64, n: usize) -> C64 {
    (0..n).fold(c(1.0), |acc, k| acc * (a + k as f64))
}

pub fn beta(a: C64, b: C64) -> C64 {
    if a.re >= 0.5 && b.re >= 0.5 {
        (ln_gamma_right(a) + ln_gamma_right(b) - ln_gamma_right(a + b)).exp()
    } else {
        gamma(a) * gamma(b) * rgamma(a + b)
    }
}

/// ₁F₁(a; b; x).
pub fn hyp1f1(a: C64, b: C64, x: C64) -> Result<C64> {
    if a == b {
        return Ok(x.exp());
    }
    let r = x.norm();
    if r <= 1.0 || x.re >= 0.0 && r <= 60.0 {
        return plain_1f1(a, b, x);
    }
    if x.re < 0.0 && r <= 60.0 {
        return Ok(x.exp() * plain_1f1(b - a, b, -x)?);
    }
    if x.re < 0.0 {
        return asymptotic_1f1(a, b, -x);
    }
    Err(MatError::Oracle(format!("₁F₁ oracle has no branch for argument {x}")))
}

fn plain_1f1(a: C64, b: C64, x: C64) -> Result<C64> {
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut small = 0;
    for k in 0..5000 {
        let k = k as f64;
        let d = b + k;
        if d.norm() == 0.0 {
            return Err(MatError::Oracle("₁F₁ oracle hit a pole in b".into()));
        }
        term *= (a + k) / d * x / (k + 1.0);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(MatError::Oracle("₁F₁ oracle series did not converge".into()))
}

/// ₁F₁(a; b; −ξ) for large Re ξ: Γ(b)/Γ(b−a)·ξ^{−a} Σ (a)ₖ(a−b+1)ₖ/(k! ξᵏ).
fn asymptotic_1f1(a: C64, b: C64, xi: C64) -> Result<C64> {
    let pre = gamma(b) * rgamma(b - a) * (-a * xi.ln()).exp();
    if pre == c(0.0) {
        // b − a a non-positive integer: only the exponentially small part survives.
        return Ok(c(0.0));
    }
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut last = f64::INFINITY;
    for k in 0..400 {
        let k = k as f64;
        let next = term * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * xi);
        if next.norm() > last {
            break;
        }
        term = next;
        last = term.norm();
        sum += term;
        if last <= 1e-18 * sum.norm() {
            break;
        }
    }
    Ok(pre * sum)
}

/// ₂F₁(a, b; c; z), |z| < 1.
pub fn hyp2f1(a: C64, b: C64, cc: C64, z: C64) -> Result<C64> {
    if z.norm() >= 1.0 {
        return Err(MatError::Oracle("₂F₁ oracle needs |z| < 1".into()));
    }
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut small = 0;
    for k in 0..200_000 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((cc + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(MatError::Oracle("₂F₁ oracle series did not converge".into()))
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Kronrod (7/15)

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

struct Segment {
    lo: f64,
    hi: f64,
    value: Vec<C64>,
    err: Vec<f64>,
}

fn gk15<F: Fn(f64) -> Vec<C64>>(f: &F, lo: f64, hi: f64) -> Segment {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(mid);
    let m = fc.len();
    let mut k: Vec<C64> = fc.iter().map(|v| v * WGK[7]).collect();
    let mut g: Vec<C64> = fc.iter().map(|v| v * WG[3]).collect();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        for i in 0..m {
            let s = f1[i] + f2[i];
            k[i] += s * WGK[j];
            if j % 2 == 1 {
                g[i] += s * WG[j / 2];
            }
        }
    }
    let value: Vec<C64> = k.iter().map(|v| v * half).collect();
    let err = k.iter().zip(&g).map(|(a, b)| ((a - b) * half).norm()).collect();
    Segment { lo, hi, value, err }
}

/// ∫_lo^hi f(s) ds for a vector-valued integrand, every component to relative
/// accuracy `rel` (or absolute `abs`).
pub fn integrate<F: Fn(f64) -> Vec<C64>>(f: F, lo: f64, hi: f64, pieces: usize, rel: f64, abs: f64) -> Result<Vec<C64>> {
    let step = (hi - lo) / pieces as f64;
    let mut segs: Vec<Segment> = (0..pieces).map(|i| gk15(&f, lo + i as f64 * step, lo + (i + 1) as f64 * step)).collect();
    for _ in 0..4000 {
        let m = segs[0].value.len();
        let mut total = vec![c(0.0); m];
        let mut err = vec![0.0; m];
        for s in &segs {
            for i in 0..m {
                total[i] += s.value[i];
                err[i] += s.err[i];
            }
        }
        let scale: Vec<f64> = total.iter().map(|t| (rel * t.norm()).max(abs)).collect();
        if err.iter().zip(&scale).all(|(e, s)| e <= s) {
            if total.iter().any(|t| !t.is_finite()) {
                return Err(MatError::Oracle("non-finite oracle integral".into()));
            }
            return Ok(total);
        }
        let worst = (0..segs.len())
            .max_by(|&a, &b| {
                let ka = segs[a].err.iter().zip(&scale).map(|(e, s)| e / s).fold(0.0, f64::max);
                let kb = segs[b].err.iter().zip(&scale).map(|(e, s)| e / s).fold(0.0, f64::max);
                ka.total_cmp(&kb)
            })
            .expect("segments");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        segs.push(gk15(&f, s.lo, mid));
        segs.push(gk15(&f, mid, s.hi));
    }
    // Out of subdivisions: still usable if within the oracle's stated accuracy.
    let m = segs[0].value.len();
    let total: Vec<C64> = (0..m).map(|i| segs.iter().map(|s| s.value[i]).sum()).collect();
    let err: Vec<f64> = (0..m).map(|i| segs.iter().map(|s| s.err[i]).sum()).collect();
    if total.iter().zip(&err).all(|(t, e)| t.is_finite() && *e <= (ORACLE_FLOOR * t.norm()).max(abs)) {
        return Ok(total);
    }
    Err(MatError::Oracle("adaptive Gauss–Kronrod did not converge".into()))
}

/// Accuracy the oracle promises when the finer target cannot be reached.
const ORACLE_FLOOR: f64 = 1e-10;

const REL: f64 = 1e-13;
const ABS: f64 = 1e-300;

/// ln t and ln(1−t) for t = 1/(1+e^{−s}), both accurate in the tails.
fn logistic_logs(s: f64) -> (f64, f64) {
    let softplus = |x: f64| if x > 0.0 { x + (-x).exp().ln_1p() } else { x.exp().ln_1p() };
    (-softplus(-s), -softplus(s))
}

fn tail_length(rate: f64) -> f64 {
    (42.0 / rate.max(1e-3)).min(745.0)
}

/// ∫₀¹ w(t) t^{p−1+k}(1−t)^{q−1} dt for k < count, `w` receiving (t, 1−t).
pub fn unit_moments<W: Fn(f64, f64) -> Result<C64>>(w: W, p: C64, q: C64, count: usize) -> Result<Vec<C64>> {
    let failure = std::cell::Cell::new(None);
    let f = |s: f64| {
        let (lt, lu) = logistic_logs(s);
        let (t, u) = (lt.exp(), lu.exp());
        let kern = match w(t, u) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                c(0.0)
            }
        };
        // dt = t(1−t) ds
        let base = kern * (p * lt + q * lu).exp();
        let mut out = Vec::with_capacity(count);
        let mut cur = base;
        for _ in 0..count {
            out.push(cur);
            cur *= t;
        }
        out
    };
    let lo = -tail_length(p.re);
    let hi = tail_length(q.re);
    let r = integrate(f, lo, hi, 24, REL, ABS)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(r)
}

/// ∫₀^∞ g(u) du via u = e^s; `decay` bounds the integrand exponents near 0 and ∞.
pub fn halfline<G: Fn(f64) -> Result<C64>>(g: G, rate_zero: f64, rate_inf: f64) -> Result<C64> {
    let failure = std::cell::Cell::new(None);
    let f = |s: f64| {
        let u = s.exp();
        let v = match g(u) {
            Ok(v) => v * u,
            Err(e) => {
                failure.set(Some(e));
                c(0.0)
            }
        };
        vec![v]
    };
    let r = integrate(f, -tail_length(rate_zero), tail_length(rate_inf), 32, REL, ABS)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(r[0])
}

// ---------------------------------------------------------------------------
// Scalar analogues of the library functions

/// ₁F₁(a; b; −ξ), the damping kernel.
pub fn kernel(a: C64, b: C64, xi: C64) -> Result<C64> {
    hyp1f1(a, b, -xi)
}

pub fn gamma_extended(a: C64, x: C64) -> Result<C64> {
    halfline(|t| Ok(((a - 1.0) * t.ln() - t - x / t).exp()), a.re, 1.0)
}

pub fn beta_extended_moments(p: C64, q: C64, x: C64, count: usize) -> Result<Vec<C64>> {
    unit_moments(|t, u| Ok((-x / (t * u)).exp()), p, q, count)
}

pub fn gamma_ne(a: C64, b: C64, x: C64, y: C64) -> Result<C64> {
    let decay = if a == b { 1.0 } else { (a - x).re };
    halfline(|t| Ok(kernel(a, b, t + y / t)? * ((x - 1.0) * t.ln()).exp()), x.re, decay)
}

/// ∫₀¹ ₁F₁(a; b; −y/(t(1−t))) t^{p−1+k}(1−t)^{q−1} dt, k < count.
pub fn beta_ne_moments(a: C64, b: C64, y: C64, p: C64, q: C64, count: usize) -> Result<Vec<C64>> {
    unit_moments(|t, u| kernel(a, b, y / (t * u)), p, q, count)
}

pub fn beta_ne(a: C64, b: C64, y: C64, p: C64, q: C64) -> Result<C64> {
    Ok(beta_ne_moments(a, b, y, p, q, 1)?[0])
}

/// Sums Σ coef(k)·m[k] until `count` moments are exhausted or terms vanish;
/// doubles the moment count when the tail is still significant.
fn series_with_moments<M, T>(mut moments: M, coef: T, mut count: usize) -> Result<C64>
where
    M: FnMut(usize) -> Result<Vec<C64>>,
    T: Fn(usize) -> C64,
{
    loop {
        let m = moments(count)?;
        let mut sum = c(0.0);
        let mut small = 0;
        for (k, mk) in m.iter().enumerate() {
            let t = coef(k) * mk;
            sum += t;
            if t.norm() <= 1e-17 * sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
        if count >= 4000 {
            return Err(MatError::Oracle("oracle series did not converge".into()));
        }
        count *= 2;
    }
}

fn start_count(z: f64) -> usize {
    if z < 1e-12 {
        4
    } else {
        ((-40.0) / z.ln()).ceil() as usize + 10
    }
}

/// Scalar A, B, A₁, B₁, C₁, Y.
#[derive(Clone, Copy, Debug)]
pub struct HyperScalars {
    pub a: C64,
    pub b: C64,
    pub a1: C64,
    pub b1: C64,
    pub c1: C64,
    pub y: C64,
}

pub fn neghmf(p: &HyperScalars, z: C64) -> Result<C64> {
    let n = beta(p.b1, p.c1 - p.b1);
    let coef = |k: usize| poch(p.a1, k) * z.powu(k as u32) / poch(c(1.0), k) / n;
    series_with_moments(|m| beta_ne_moments(p.a, p.b, p.y, p.b1, p.c1 - p.b1, m), coef, start_count(z.norm()))
}

pub fn nechmf(p: &HyperScalars, z: C64) -> Result<C64> {
    let n = beta(p.b1, p.c1 - p.b1);
    let coef = |k: usize| z.powu(k as u32) / poch(c(1.0), k) / n;
    series_with_moments(|m| beta_ne_moments(p.a, p.b, p.y, p.b1, p.c1 - p.b1, m), coef, (z.norm() * 3.0) as usize + 30)
}

/// Extended Gauss (with `a1`) or Kummer (`None`) function with argument x.
pub fn extended_hyper(a1: Option<C64>, b1: C64, c1: C64, x: C64, z: C64) -> Result<C64> {
    let norm = gamma(c1) * rgamma(b1) * rgamma(c1 - b1);
    let coef = |k: usize| a1.map_or(c(1.0), |a| poch(a, k)) * z.powu(k as u32) / poch(c(1.0), k) * norm;
    let start = if a1.is_some() { start_count(z.norm()) } else { (z.norm() * 3.0) as usize + 30 };
    series_with_moments(|m| beta_extended_moments(b1, c1 - b1, x, m), coef, start)
}

/// Scalar Appell/Lauricella parameters.
#[derive(Clone, Copy, Debug)]
pub struct AppellScalars {
    pub a: C64,
    pub b: C64,
    pub ap: C64,
    pub bp: C64,
    pub a1: C64,
    pub b1: C64,
    pub b2: C64,
    pub b3: C64,
    pub c1: C64,
    pub c2: C64,
    pub y: C64,
}

/// F_D with as many variables as `bs` (two gives F₁).
pub fn lauricella(p: &AppellScalars, bs: &[C64], args: &[C64]) -> Result<C64> {
    let n = beta(p.a1, p.c1 - p.a1);
    let zmax = args.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut count = start_count(zmax) + 10;
    loop {
        let m = beta_ne_moments(p.a, p.b, p.y, p.a1, p.c1 - p.a1, count)?;
        // Shell sums by convolution of the single-variable tables.
        let table = |b: C64, z: C64| {
            let mut v = Vec::with_capacity(count);
            let mut t = c(1.0);
            for k in 0..count {
                if k > 0 {
                    t *= (b + (k - 1) as f64) * z / k as f64;
                }
                v.push(t);
            }
            v
        };
        let mut shell = table(bs[0], args[0]);
        for (b, z) in bs.iter().zip(args).skip(1) {
            let t = table(*b, *z);
            shell = (0..count).map(|nn| (0..=nn).map(|k| shell[k] * t[nn - k]).sum()).collect();
        }
        let mut sum = c(0.0);
        let mut small = 0;
        for (mk, sk) in m.iter().zip(&shell) {
            let t = mk * sk / n;
            sum += t;
            if t.norm() <= 1e-17 * sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
        if count >= 2000 {
            return Err(MatError::Oracle("Lauricella oracle did not converge".into()));
        }
        count *= 2;
    }
}

pub fn appell_f2(p: &AppellScalars, z: C64, w: C64) -> Result<C64> {
    let n1 = beta(p.b1, p.c1 - p.b1);
    let n2 = beta(p.b2, p.c2 - p.b2);
    let mut count = start_count(z.norm() + w.norm()) + 10;
    loop {
        let m1 = beta_ne_moments(p.a, p.b, p.y, p.b1, p.c1 - p.b1, count)?;
        let m2 = beta_ne_moments(p.ap, p.bp, p.y, p.b2, p.c2 - p.b2, count)?;
        let u: Vec<C64> = m1.iter().enumerate().map(|(k, m)| m / n1 * z.powu(k as u32) / poch(c(1.0), k)).collect();
        let v: Vec<C64> = m2.iter().enumerate().map(|(k, m)| m / n2 * w.powu(k as u32) / poch(c(1.0), k)).collect();
        let mut sum = c(0.0);
        let mut small = 0;
        for total in 0..count {
            let shell: C64 = (0..=total).map(|k| u[k] * v[total - k]).sum();
            let t = poch(p.a1, total) * shell;
            sum += t;
            if t.norm() <= 1e-17 * sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
        if count >= 2000 {
            return Err(MatError::Oracle("F₂ oracle did not converge".into()));
        }
        count *= 2;
    }
}
