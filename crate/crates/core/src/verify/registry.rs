//! Named entry points: JSON-driven evaluation of every library function, its
//! scalar oracle, and the oracle-equivalence check built from both.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::family::CommutingFamily;
use super::oracle as o;
use super::{residual, DrawRecord, DrawStatus, IdentityReport};
use crate::config::EvalConfig;
use crate::error::{MatError, Result};
use crate::gammabeta::{self as gbm, BetaForm, GammaBetaParams};
use crate::hyper::{self as hy, ConfluentForm, GaussForm, HyperParams, Transform};
use crate::matcalc::{self as mc, SquareMatrix, C64};
use crate::multivar::{self as mv, AppellParams, Recurrence};
use crate::quadrature::EvalReport;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FunctionSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    /// Matrix inputs, in the order `scalar_oracle` expects their eigenvalues.
    pub roles: &'static [&'static str],
    /// Scalar and option inputs.
    pub args: &'static [&'static str],
}

const fn f(id: &'static str, anchor: &'static str, roles: &'static [&'static str], args: &'static [&'static str]) -> FunctionSpec {
    FunctionSpec { id, anchor, roles, args }
}

const GB: &[&str] = &["A", "B", "X", "Y"];
const GBZ: &[&str] = &["A", "B", "X", "Z", "Y"];
const HY: &[&str] = &["A", "B", "A1", "B1", "C1", "Y"];
const AP: &[&str] = &["A", "B", "Aprime", "Bprime", "A1", "B1", "B2", "B3", "C1", "C2", "Y"];

pub static FUNCTIONS: &[FunctionSpec] = &[
    f("real_power", "functional calculus", &["A"], &["t"]),
    f("pochhammer", "Eq. c1eq.09", &["A"], &["n"]),
    f("binomial_series", "Eq. s11", &["A"], &["z"]),
    f("spectral_alpha_beta", "§2 spectral bounds", &["A"], &[]),
    f("commutator_norm", "§2 commutation", &["A", "B"], &[]),
    f("gamma", "Eq. 1a1.4", &["A"], &[]),
    f("gamma_reciprocal", "Eq. eq.07", &["A"], &["n_shift"]),
    f("pochhammer_via_gamma", "Eq. c1eq.010", &["A"], &["n"]),
    f("beta_matrix", "Eqs. 1ca1.4/1ca1.5", &["A", "B"], &["form"]),
    f("gamma_extended", "§2 extended gamma", &["A", "X"], &[]),
    f("beta_extended", "Eq. xb1", &["A", "B", "X"], &[]),
    f("extended_factorization_sides", "Eq. xb1", &["A", "B", "X"], &[]),
    f("gamma_new_extended", "Eq. 3.1", GB, &[]),
    f("gamma_new_extended_form2", "Thm 3.1, Eq. 3.3", GB, &[]),
    f("beta_new_extended", "Eq. 3.2", GBZ, &[]),
    f("beta_new_extended_halfline", "Thm 3.2, Eq. e3.7", GBZ, &[]),
    f("beta_ne_summation", "Thm 3.4, Eq. 3.10", GBZ, &[]),
    f("kummer_1f1", "confluent kernel", &["A", "B", "M"], &[]),
    f("gauss_2f1", "Eq. 52.9", &["A1", "B1", "C1"], &["z"]),
    f("eghmf", "Eq. eg1", &["A1", "B1", "C1", "X"], &["z"]),
    f("ekhmf", "Eq. kh1", &["B1", "C1", "X"], &["z"]),
    f("neghmf_series", "Eq. 4.1", HY, &["z"]),
    f("nechmf_series", "Eq. 4.2", HY, &["z"]),
    f("neghmf_integral", "Thm 4.1, Eqs. 4.3/a4.4", HY, &["z", "form"]),
    f("nechmf_integral", "Thm 4.2, Eqs. 4.5/4.6", HY, &["z", "form"]),
    f("neghmf_derivative", "Thm 4.3, Eq. 4.7", HY, &["z", "n"]),
    f("nechmf_derivative", "Thm 4.4, Eq. 4.10", HY, &["z", "n"]),
    f("neghmf_transform", "Thm 4.5, Eqs. 4.11/e4.11/a4.11", HY, &["z", "which", "corrected"]),
    f("neghmf_at_one", "Eq. 4.16", HY, &[]),
    f("kummer_first_theorem", "Thm 4.6", HY, &["z"]),
    f("appell_f1_series", "Eq. 2eq1", AP, &["z", "w"]),
    f("appell_f1_integral", "Thm 5.1, Eq. i1", AP, &["z", "w"]),
    f("appell_f2_series", "Eq. 2eq2", AP, &["z", "w"]),
    f("appell_f2_integral", "Thm 5.2, Eq. s33", AP, &["z", "w"]),
    f("lauricella_fd3_series", "Eq. 2eq3", AP, &["z", "w", "v"]),
    f("lauricella_fd3_integral", "Thm 5.3, Eq. 3.12", AP, &["z", "w", "v"]),
    f("f1_derivative_rhs", "Thm 5.4, Eq. 5.1", AP, &["z", "w", "m", "n"]),
    f("f2_derivative_rhs", "Thm 5.5, Eq. 5.4", AP, &["z", "w", "m", "n", "corrected"]),
    f("fd3_derivative_rhs", "Thm 5.6, Eq. 5.5", AP, &["z", "w", "v", "m", "n", "q", "corrected"]),
    f("f1_recurrence_sides", "Thm 5.7, Eqs. 5.66/5.7", AP, &["z", "w", "which", "corrected"]),
    f("f2_recurrence_sides", "Thm 5.8", AP, &["z", "w", "which", "corrected"]),
    f("fd3_recurrence_sides", "Thm 5.9", AP, &["z", "w", "v", "which"]),
];

pub fn function(id: &str) -> Result<&'static FunctionSpec> {
    FUNCTIONS.iter().find(|s| s.id == id).ok_or_else(|| MatError::UnknownId {
        id: id.to_string(),
        valid: FUNCTIONS.iter().map(|s| s.id).collect::<Vec<_>>().join(", "),
    })
}

/// Result of one evaluation.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum EvalOutput {
    Report(EvalReport),
    Sides { lhs: EvalReport, rhs: EvalReport },
    Data(Value),
}

impl EvalOutput {
    pub fn converged(&self) -> bool {
        match self {
            EvalOutput::Report(r) => r.converged,
            EvalOutput::Sides { lhs, rhs } => lhs.converged && rhs.converged,
            EvalOutput::Data(_) => true,
        }
    }
}

/// JSON object of named inputs; keys match case-insensitively.
pub struct Inputs<'a>(&'a Map<String, Value>);

fn parse_err(msg: String) -> MatError {
    MatError::Parse(msg)
}

impl<'a> Inputs<'a> {
    pub fn new(v: &'a Value) -> Result<Self> {
        v.as_object().map(Inputs).ok_or_else(|| parse_err("input must be a JSON object".into()))
    }

    fn raw(&self, key: &str) -> Option<&'a Value> {
        self.0.get(key).or_else(|| self.0.iter().find(|(k, _)| k.eq_ignore_ascii_case(key)).map(|(_, v)| v))
    }

    pub fn opt_mat(&self, key: &str) -> Result<Option<SquareMatrix>> {
        self.raw(key)
            .map(|v| SquareMatrix::deserialize(v).map_err(|e| parse_err(format!("matrix `{key}`: {e}"))))
            .transpose()
    }

    pub fn mat(&self, key: &str) -> Result<SquareMatrix> {
        self.opt_mat(key)?.ok_or_else(|| parse_err(format!("missing matrix `{key}`")))
    }

    pub fn scalar_or(&self, key: &str, default: C64) -> Result<C64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => parse_complex(v).ok_or_else(|| parse_err(format!("`{key}` must be a number or [re, im]"))),
        }
    }

    pub fn scalar(&self, key: &str) -> Result<C64> {
        if self.raw(key).is_none() {
            return Err(parse_err(format!("missing scalar `{key}`")));
        }
        self.scalar_or(key, C64::new(0.0, 0.0))
    }

    pub fn real(&self, key: &str) -> Result<f64> {
        let z = self.scalar(key)?;
        if z.im != 0.0 {
            return Err(parse_err(format!("`{key}` must be real")));
        }
        Ok(z.re)
    }

    pub fn count_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.as_u64().map(|n| n as usize).ok_or_else(|| parse_err(format!("`{key}` must be a nonnegative integer"))),
        }
    }

    pub fn flag_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| parse_err(format!("`{key}` must be true or false"))),
        }
    }

    pub fn choice<T: serde::de::DeserializeOwned>(&self, key: &str, default: T) -> Result<T> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("`{key}`: {e}"))),
        }
    }

    fn gamma_beta(&self) -> Result<GammaBetaParams> {
        Ok(GammaBetaParams { a: self.mat("A")?, b: self.mat("B")?, x: self.mat("X")?, y: self.mat("Y")?, z: self.opt_mat("Z")? })
    }

    fn hyper(&self) -> Result<HyperParams> {
        Ok(HyperParams {
            a: self.mat("A")?,
            b: self.mat("B")?,
            a1: self.opt_mat("A1")?,
            b1: self.mat("B1")?,
            c1: self.mat("C1")?,
            y: self.mat("Y")?,
            z: self.scalar_or("z", C64::new(0.0, 0.0))?,
        })
    }

    fn appell(&self) -> Result<AppellParams> {
        let zero = C64::new(0.0, 0.0);
        Ok(AppellParams {
            a: self.mat("A")?,
            b: self.mat("B")?,
            a_prime: self.opt_mat("Aprime")?,
            b_prime: self.opt_mat("Bprime")?,
            a1: self.mat("A1")?,
            b1: self.mat("B1")?,
            b2: self.mat("B2")?,
            b3: self.opt_mat("B3")?,
            c1: self.mat("C1")?,
            c2: self.opt_mat("C2")?,
            y: self.mat("Y")?,
            z: self.scalar_or("z", zero)?,
            w: self.scalar_or("w", zero)?,
            v: self.scalar_or("v", zero)?,
        })
    }
}

fn parse_complex(v: &Value) -> Option<C64> {
    if let Some(x) = v.as_f64() {
        return Some(C64::new(x, 0.0));
    }
    if let Some([re, im]) = v.as_array().map(|a| a.as_slice()) {
        return Some(C64::new(re.as_f64()?, im.as_f64()?));
    }
    let obj = v.as_object()?;
    Some(C64::new(obj.get("re")?.as_f64()?, obj.get("im").and_then(Value::as_f64).unwrap_or(0.0)))
}

fn sides((lhs, rhs): (EvalReport, EvalReport)) -> EvalOutput {
    EvalOutput::Sides { lhs, rhs }
}

/// Evaluates a registered function on JSON inputs.
pub fn eval_json(id: &str, input: &Value, cfg: &EvalConfig) -> Result<EvalOutput> {
    function(id)?;
    let p = Inputs::new(input)?;
    use EvalOutput::Report as R;
    Ok(match id {
        "real_power" => R(EvalReport::exact(mc::real_power(p.real("t")?, &p.mat("A")?)?)),
        "pochhammer" => R(EvalReport::exact(mc::pochhammer(&p.mat("A")?, p.count_or("n", 0)?))),
        "binomial_series" => R(mc::binomial_series(p.scalar("z")?, &p.mat("A")?, &cfg.series)?),
        "spectral_alpha_beta" => {
            let (alpha, beta) = mc::spectral_alpha_beta(&p.mat("A")?)?;
            let stable = beta > cfg.tolerances.stability_margin;
            EvalOutput::Data(serde_json::json!({ "alpha": alpha, "beta": beta, "positive_stable": stable }))
        }
        "commutator_norm" => {
            let (a, b) = (p.mat("A")?, p.mat("B")?);
            let norm = mc::commutator_norm(&a, &b)?;
            EvalOutput::Data(serde_json::json!({ "commutator_norm": norm, "commute": cfg.commute(&a, &b) }))
        }
        "gamma" => R(gbm::gamma_matrix(&p.mat("A")?, cfg)?),
        "gamma_reciprocal" => {
            let a = p.mat("A")?;
            match p.raw("n_shift") {
                None => R(gbm::gamma_reciprocal_auto(&a, cfg)?),
                Some(_) => R(gbm::gamma_reciprocal(&a, p.count_or("n_shift", 0)?, cfg)?),
            }
        }
        "pochhammer_via_gamma" => R(gbm::pochhammer_via_gamma(&p.mat("A")?, p.count_or("n", 0)?, cfg)?),
        "beta_matrix" => R(gbm::beta_matrix(&p.mat("A")?, &p.mat("B")?, p.choice("form", BetaForm::Unit)?, cfg)?),
        "gamma_extended" => R(gbm::gamma_extended(&p.mat("A")?, &p.mat("X")?, cfg)?),
        "beta_extended" => R(gbm::beta_extended(&p.mat("A")?, &p.mat("B")?, &p.mat("X")?, cfg)?),
        "extended_factorization_sides" => sides(gbm::extended_factorization_sides(&p.mat("A")?, &p.mat("B")?, &p.mat("X")?, cfg)?),
        "gamma_new_extended" => R(gbm::gamma_new_extended(&p.gamma_beta()?, cfg)?),
        "gamma_new_extended_form2" => R(gbm::gamma_new_extended_form2(&p.gamma_beta()?, cfg)?),
        "beta_new_extended" => R(gbm::beta_new_extended(&p.gamma_beta()?, cfg)?),
        "beta_new_extended_halfline" => R(gbm::beta_new_extended_halfline(&p.gamma_beta()?, cfg)?),
        "beta_ne_summation" => R(gbm::beta_ne_summation(&p.gamma_beta()?, cfg)?),
        "kummer_1f1" => R(hy::kummer_1f1(&p.mat("A")?, &p.mat("B")?, &p.mat("M")?, cfg)?),
        "gauss_2f1" => R(hy::gauss_2f1(&p.mat("A1")?, &p.mat("B1")?, &p.mat("C1")?, p.scalar("z")?, cfg)?),
        "eghmf" => R(hy::eghmf(&p.mat("A1")?, &p.mat("B1")?, &p.mat("C1")?, &p.mat("X")?, p.scalar("z")?, cfg)?),
        "ekhmf" => R(hy::ekhmf(&p.mat("B1")?, &p.mat("C1")?, &p.mat("X")?, p.scalar("z")?, cfg)?),
        "neghmf_series" => R(hy::neghmf_series(&p.hyper()?, cfg)?),
        "nechmf_series" => R(hy::nechmf_series(&p.hyper()?, cfg)?),
        "neghmf_integral" => R(hy::neghmf_integral(&p.hyper()?, p.choice("form", GaussForm::Unit)?, cfg)?),
        "nechmf_integral" => R(hy::nechmf_integral(&p.hyper()?, p.choice("form", ConfluentForm::Direct)?, cfg)?),
        "neghmf_derivative" => R(hy::neghmf_derivative(&p.hyper()?, p.count_or("n", 1)?, cfg)?),
        "nechmf_derivative" => R(hy::nechmf_derivative(&p.hyper()?, p.count_or("n", 1)?, cfg)?),
        "neghmf_transform" => {
            let which = p.choice("which", Transform::PfaffZOverZm1)?;
            sides(hy::neghmf_transform_sides(&p.hyper()?, which, p.flag_or("corrected", true)?, cfg)?)
        }
        "neghmf_at_one" => R(hy::neghmf_at_one(&p.hyper()?, cfg)?),
        "kummer_first_theorem" => sides(hy::kummer_first_theorem(&p.hyper()?, cfg)?),
        "appell_f1_series" => R(mv::appell_f1_series(&p.appell()?, cfg)?),
        "appell_f1_integral" => R(mv::appell_f1_integral(&p.appell()?, cfg)?),
        "appell_f2_series" => R(mv::appell_f2_series(&p.appell()?, cfg)?),
        "appell_f2_integral" => R(mv::appell_f2_integral(&p.appell()?, cfg)?),
        "lauricella_fd3_series" => R(mv::lauricella_fd3_series(&p.appell()?, cfg)?),
        "lauricella_fd3_integral" => R(mv::lauricella_fd3_integral(&p.appell()?, cfg)?),
        "f1_derivative_rhs" => R(mv::f1_derivative_rhs(&p.appell()?, p.count_or("m", 0)?, p.count_or("n", 0)?, cfg)?),
        "f2_derivative_rhs" => {
            R(mv::f2_derivative_rhs(&p.appell()?, p.count_or("m", 0)?, p.count_or("n", 0)?, p.flag_or("corrected", true)?, cfg)?)
        }
        "fd3_derivative_rhs" => R(mv::fd3_derivative_rhs(
            &p.appell()?,
            p.count_or("m", 0)?,
            p.count_or("n", 0)?,
            p.count_or("q", 0)?,
            p.flag_or("corrected", true)?,
            cfg,
        )?),
        "f1_recurrence_sides" => {
            let which = p.choice("which", Recurrence::KernelShift566)?;
            sides(mv::f1_recurrence_sides(&p.appell()?, which, p.flag_or("corrected", true)?, cfg)?)
        }
        "f2_recurrence_sides" => {
            let which = p.choice("which", Recurrence::KernelShift566)?;
            sides(mv::f2_recurrence_sides(&p.appell()?, which, p.flag_or("corrected", true)?, cfg)?)
        }
        "fd3_recurrence_sides" => {
            let which = p.choice("which", Recurrence::KernelShift566)?;
            sides(mv::fd3_recurrence_sides(&p.appell()?, which, cfg)?)
        }
        _ => unreachable!("registered id without a dispatch arm"),
    })
}

fn arg(args: &Map<String, Value>, key: &str, default: f64) -> Result<C64> {
    Inputs(args).scalar_or(key, C64::new(default, 0.0))
}

/// Independent scalar value of a function. `params` follows the order of the
/// function's `roles`; `args` holds its scalar and option inputs.
pub fn scalar_oracle(id: &str, params: &[C64], args: &Map<String, Value>) -> Result<C64> {
    let spec = function(id)?;
    if params.len() != spec.roles.len() {
        return Err(parse_err(format!("{id} takes {} scalar parameters, got {}", spec.roles.len(), params.len())));
    }
    let inp = Inputs(args);
    let p = params;
    let z = arg(args, "z", 0.0)?;
    let w = arg(args, "w", 0.0)?;
    let v = arg(args, "v", 0.0)?;
    let count = |k: &str, d: usize| inp.count_or(k, d);
    let hs = || o::HyperScalars { a: p[0], b: p[1], a1: p[2], b1: p[3], c1: p[4], y: p[5] };
    let aps = || o::AppellScalars {
        a: p[0],
        b: p[1],
        ap: p[2],
        bp: p[3],
        a1: p[4],
        b1: p[5],
        b2: p[6],
        b3: p[7],
        c1: p[8],
        c2: p[9],
        y: p[10],
    };
    let one = C64::new(1.0, 0.0);
    Ok(match id {
        "real_power" => arg(args, "t", 1.0)?.powc(p[0]),
        "pochhammer" | "pochhammer_via_gamma" => o::poch(p[0], count("n", 0)?),
        "binomial_series" => (one - z).powc(-p[0]),
        "gamma" => o::gamma(p[0]),
        "gamma_reciprocal" => o::rgamma(p[0]),
        "beta_matrix" => o::beta(p[0], p[1]),
        "gamma_extended" => o::gamma_extended(p[0], p[1])?,
        "beta_extended" => o::beta_extended_moments(p[0], p[1], p[2], 1)?[0],
        "gamma_new_extended" | "gamma_new_extended_form2" => o::gamma_ne(p[0], p[1], p[2], p[3])?,
        "beta_new_extended" | "beta_new_extended_halfline" => o::beta_ne(p[0], p[1], p[4], p[2], p[3])?,
        "beta_ne_summation" => o::beta_ne(p[0], p[1], p[4], p[2], one - p[3])?,
        "kummer_1f1" => o::hyp1f1(p[0], p[1], p[2])?,
        "gauss_2f1" => o::hyp2f1(p[0], p[1], p[2], z)?,
        "eghmf" => o::extended_hyper(Some(p[0]), p[1], p[2], p[3], z)?,
        "ekhmf" => o::extended_hyper(None, p[0], p[1], p[2], z)?,
        "neghmf_series" | "neghmf_integral" => o::neghmf(&hs(), z)?,
        "nechmf_series" | "nechmf_integral" => o::nechmf(&hs(), z)?,
        "neghmf_derivative" | "nechmf_derivative" => {
            let n = count("n", 1)?;
            let s = hs();
            let k = n as f64;
            let raised = o::HyperScalars { a1: s.a1 + k, b1: s.b1 + k, c1: s.c1 + k, ..s };
            let ratio = o::poch(s.b1, n) / o::poch(s.c1, n);
            if id == "neghmf_derivative" {
                o::poch(s.a1, n) * ratio * o::neghmf(&raised, z)?
            } else {
                ratio * o::nechmf(&raised, z)?
            }
        }
        "neghmf_transform" => {
            let s = hs();
            let refl = o::HyperScalars { b1: s.c1 - s.b1, ..s };
            match inp.choice("which", Transform::PfaffZOverZm1)? {
                Transform::PfaffZOverZm1 => (one - z).powc(-s.a1) * o::neghmf(&refl, z / (z - one))?,
                Transform::EulerOneMinusZ => z.powc(s.a1) * o::neghmf(&refl, one - z)?,
                Transform::ZOver1pz => (one + z).powc(s.a1) * o::neghmf(&refl, -z)?,
            }
        }
        "neghmf_at_one" => {
            let s = hs();
            o::beta_ne(s.a, s.b, s.y, s.b1, s.c1 - s.a1 - s.b1)? / o::beta(s.b1, s.c1 - s.b1)
        }
        "appell_f1_series" | "appell_f1_integral" => {
            let s = aps();
            o::lauricella(&s, &[s.b1, s.b2], &[z, w])?
        }
        "appell_f2_series" | "appell_f2_integral" => o::appell_f2(&aps(), z, w)?,
        "lauricella_fd3_series" | "lauricella_fd3_integral" => {
            let s = aps();
            o::lauricella(&s, &[s.b1, s.b2, s.b3], &[z, w, v])?
        }
        "f1_derivative_rhs" | "fd3_derivative_rhs" => {
            let s = aps();
            let three = id == "fd3_derivative_rhs";
            let orders: Vec<usize> =
                if three { vec![count("m", 0)?, count("n", 0)?, count("q", 0)?] } else { vec![count("m", 0)?, count("n", 0)?] };
            let bs = [s.b1, s.b2, s.b3];
            let total: usize = orders.iter().sum();
            let nn = total as f64;
            let shifted = o::AppellScalars { a1: s.a1 + nn, c1: s.c1 + nn, ..s };
            let raised: Vec<C64> = orders.iter().zip(bs).map(|(&k, b)| b + k as f64).collect();
            let mut c = o::poch(s.a1, total) / o::poch(s.c1, total);
            for (&k, b) in orders.iter().zip(bs) {
                c *= o::poch(b, k);
            }
            let args3 = [z, w, v];
            c * o::lauricella(&shifted, &raised, &args3[..orders.len()])?
        }
        "f2_derivative_rhs" => {
            let s = aps();
            let (m, n) = (count("m", 0)?, count("n", 0)?);
            let (mf, nf) = (m as f64, n as f64);
            let shifted = o::AppellScalars { a1: s.a1 + mf + nf, b1: s.b1 + mf, b2: s.b2 + nf, c1: s.c1 + mf, c2: s.c2 + nf, ..s };
            o::poch(s.a1, m + n) * o::poch(s.b1, m) / o::poch(s.c1, m) * o::poch(s.b2, n) / o::poch(s.c2, n)
                * o::appell_f2(&shifted, z, w)?
        }
        _ => return Err(MatError::Oracle(format!("`{id}` has no single scalar value (it returns data or two sides)"))),
    })
}

/// Matrix path vs the eigenbasis-conjugated scalar oracle for one family
/// draw. `assignment` maps each role of the function to a family member.
pub fn oracle_equivalence(
    id: &str,
    family: &CommutingFamily,
    assignment: &[(&str, &str)],
    args: &Map<String, Value>,
    tol: f64,
    cfg: &EvalConfig,
) -> Result<IdentityReport> {
    let spec = function(id)?;
    let mut input = args.clone();
    let mut eig = Vec::with_capacity(spec.roles.len());
    for role in spec.roles {
        let (_, member) = assignment
            .iter()
            .find(|(r, _)| r.eq_ignore_ascii_case(role))
            .ok_or_else(|| parse_err(format!("role `{role}` is not assigned")))?;
        let ev = family.eigenvalues(member).ok_or_else(|| parse_err(format!("family has no member `{member}`")))?;
        input.insert(role.to_string(), serde_json::to_value(family.conjugate(ev)).expect("matrix serializes"));
        eig.push(ev.to_vec());
    }
    let lib = match eval_json(id, &Value::Object(input), cfg)? {
        EvalOutput::Report(r) => r,
        _ => return Err(MatError::Oracle(format!("`{id}` has no single matrix value"))),
    };
    let want: Vec<C64> = (0..family.order)
        .map(|i| scalar_oracle(id, &eig.iter().map(|e| e[i]).collect::<Vec<_>>(), args))
        .collect::<Result<_>>()?;
    let rhs = EvalReport::exact(family.conjugate(&want));
    let res = residual(&lib, &rhs);
    let (status, note) = if !lib.converged {
        (DrawStatus::Skipped, Some("evaluation did not converge".to_string()))
    } else if res <= tol {
        (DrawStatus::Pass, None)
    } else {
        (DrawStatus::Fail, None)
    };
    let record = DrawRecord { draw: 0, seed: family.seed, stream: 0, order: family.order, residual: Some(res), budget: Some(tol), status, note };
    Ok(IdentityReport::from_records(&format!("oracle-{id}"), "oracle equivalence", super::cases::CaseClass::Assert, 1, vec![record]))
}
