//! `matspec` — evaluate matrix special functions on JSON input, run identity
//! checks, and list the catalog.
//!
//! Exit status: 0 success (converged / no failures), 2 evaluation did not
//! converge, 1 bad input, failed precondition or failed identity checks.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use matspec::verify::registry::{self, EvalOutput, FUNCTIONS};
use matspec::verify::{self, CheckOptions, IdentityReport, CATALOG};
use matspec::{EvalConfig, MatError};

#[derive(Parser, Debug)]
#[command(name = "matspec", version, about = "Matrix special functions and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Series term budget.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Use the corrected statement where a function offers both the stated
    /// and a corrected form, and skip checks of the stated forms.
    #[arg(long, global = true)]
    corrected: bool,
    /// Machine-readable output for `list`.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function.
    Eval {
        function_id: String,
        /// JSON file, `-` for stdin, or an inline JSON object.
        #[arg(long)]
        input: String,
    },
    /// Run identity checks (`all` for the whole catalog).
    Verify {
        #[arg(required = true)]
        case_ids: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        draws: Option<usize>,
        /// Matrix orders cycled over the draws.
        #[arg(long, num_args = 1..)]
        orders: Option<Vec<usize>>,
    },
    /// List functions and identity cases.
    List {
        #[arg(value_enum, default_value_t = ListWhat::All)]
        what: ListWhat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ListWhat {
    Functions,
    Cases,
    All,
}

/// Defaults file named by MATSPEC_CONFIG; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(alias = "abs-tol")]
    abs_tol: Option<f64>,
    #[serde(alias = "rel-tol")]
    rel_tol: Option<f64>,
    #[serde(alias = "max-terms")]
    max_terms: Option<usize>,
    seed: Option<u64>,
    draws: Option<usize>,
    orders: Option<Vec<usize>>,
    corrected: Option<bool>,
}

struct Failure {
    code: u8,
    body: Value,
}

fn error_body(e: &MatError) -> Value {
    let mut obj = json!({ "kind": e.kind(), "message": e.to_string() });
    match e {
        MatError::Precondition { hypothesis, role, anchor } => {
            obj["hypothesis"] = json!(hypothesis);
            obj["role"] = json!(role);
            obj["anchor"] = json!(anchor);
        }
        MatError::UnknownId { id, valid } => {
            obj["id"] = json!(id);
            obj["valid_ids"] = json!(valid.split(", ").collect::<Vec<_>>());
        }
        _ => {}
    }
    json!({ "error": obj })
}

impl From<MatError> for Failure {
    fn from(e: MatError) -> Self {
        Failure { code: 1, body: error_body(&e) }
    }
}

fn usage(kind: &str, message: String) -> Failure {
    Failure { code: 1, body: json!({ "error": { "kind": kind, "message": message } }) }
}

fn json_error(source: &str, e: &serde_json::Error) -> Failure {
    Failure {
        code: 1,
        body: json!({ "error": {
            "kind": "parse",
            "message": format!("{source}: {e}"),
            "line": e.line(),
            "column": e.column(),
        }}),
    }
}

fn load_file_config() -> Result<FileConfig, Failure> {
    let Ok(path) = std::env::var("MATSPEC_CONFIG") else { return Ok(FileConfig::default()) };
    let text = fs::read_to_string(&path).map_err(|e| usage("io", format!("MATSPEC_CONFIG {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| json_error(&format!("MATSPEC_CONFIG {path}"), &e))
}

fn eval_config(cli: &Cli, file: &FileConfig) -> Result<EvalConfig, Failure> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = cli.abs_tol.or(file.abs_tol) {
        cfg.quadrature.abs_tol = t;
    }
    if let Some(t) = cli.rel_tol.or(file.rel_tol) {
        cfg.quadrature.rel_tol = t;
    }
    if let Some(n) = cli.max_terms.or(file.max_terms) {
        cfg.series.max_terms = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_input(spec: &str) -> Result<Value, Failure> {
    let (source, text) = if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage("io", format!("stdin: {e}")))?;
        ("stdin".to_string(), s)
    } else if spec.trim_start().starts_with('{') {
        ("inline input".to_string(), spec.to_string())
    } else {
        let text = fs::read_to_string(spec).map_err(|e| usage("io", format!("{spec}: {e}")))?;
        (spec.to_string(), text)
    };
    serde_json::from_str(&text).map_err(|e| json_error(&source, &e))
}

fn run_eval(id: &str, input: &str, corrected: bool, cfg: &EvalConfig) -> Result<(u8, Value), Failure> {
    registry::function(id)?;
    let mut value = read_input(input)?;
    if let Some(obj) = value.as_object_mut() {
        obj.entry("corrected").or_insert(json!(corrected));
    }
    let out = registry::eval_json(id, &value, cfg)?;
    let code = if out.converged() { 0 } else { 2 };
    let body = match &out {
        EvalOutput::Data(v) => json!({ "function": id, "value": v }),
        other => {
            let mut v = serde_json::to_value(other).expect("reports serialize");
            v["function"] = json!(id);
            v
        }
    };
    Ok((code, body))
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    seed: u64,
    orders: &'a [usize],
    cases: &'a [IdentityReport],
    assert_failures: usize,
    passed: bool,
}

fn run_verify(ids: &[String], opts: &CheckOptions, corrected: bool, cfg: &EvalConfig) -> Result<(u8, Value), Failure> {
    let mut selected = Vec::new();
    for id in ids {
        if id == "all" {
            selected.extend(CATALOG.iter().filter(|c| !(corrected && c.corrected_variant == Some(false))));
        } else {
            selected.push(verify::find_case(id)?);
        }
    }
    let reports = selected.into_iter().map(|c| verify::check_identity(c, opts, cfg)).collect::<Result<Vec<_>, _>>()?;
    let assert_failures: usize = reports.iter().filter(|r| r.counts()).map(|r| r.failures).sum();
    let summary = VerifySummary { seed: opts.seed, orders: &opts.orders, cases: &reports, assert_failures, passed: assert_failures == 0 };
    Ok((if assert_failures == 0 { 0 } else { 1 }, serde_json::to_value(summary).expect("reports serialize")))
}

fn run_list(what: ListWhat, as_json: bool) -> String {
    let functions = matches!(what, ListWhat::Functions | ListWhat::All);
    let cases = matches!(what, ListWhat::Cases | ListWhat::All);
    if as_json {
        let mut v = json!({});
        if functions {
            v["functions"] = serde_json::to_value(FUNCTIONS).expect("serializes");
        }
        if cases {
            v["cases"] = serde_json::to_value(CATALOG).expect("serializes");
        }
        return serde_json::to_string_pretty(&v).expect("serializes") + "\n";
    }
    let mut out = String::new();
    if functions {
        out.push_str("functions:\n");
        for f in FUNCTIONS {
            let args = if f.args.is_empty() { String::new() } else { format!("; args: {}", f.args.join(", ")) };
            out.push_str(&format!("  {} ({})  roles: {}{}\n", f.id, f.anchor, f.roles.join(", "), args));
        }
    }
    if cases {
        out.push_str("cases:\n");
        for c in CATALOG {
            let class = match c.class {
                verify::CaseClass::Assert => "assert",
                verify::CaseClass::Diagnostic => "diagnostic",
                verify::CaseClass::Probe => "probe",
            };
            out.push_str(&format!("  {} ({})  [{}, criterion {}] {}\n", c.id, c.anchor, class, c.criterion, c.title));
        }
    }
    out
}

fn emit(output: Option<&Path>, text: &str) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializes") + "\n"
}

fn run(cli: &Cli) -> Result<(u8, String), Failure> {
    let file = load_file_config()?;
    let corrected = cli.corrected || file.corrected.unwrap_or(false);
    match &cli.command {
        Command::List { what } => Ok((0, run_list(*what, cli.json))),
        Command::Eval { function_id, input } => {
            let cfg = eval_config(cli, &file)?;
            let (code, v) = run_eval(function_id, input, corrected, &cfg)?;
            Ok((code, pretty(&v)))
        }
        Command::Verify { case_ids, seed, draws, orders } => {
            let cfg = eval_config(cli, &file)?;
            let defaults = CheckOptions::default();
            let opts = CheckOptions {
                draws: draws.or(file.draws),
                seed: seed.or(file.seed).unwrap_or(defaults.seed),
                orders: orders.clone().or(file.orders.clone()).unwrap_or(defaults.orders),
                safety_factor: None,
            };
            let (code, v) = run_verify(case_ids, &opts, corrected, &cfg)?;
            Ok((code, pretty(&v)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, text) = match run(&cli) {
        Ok(ok) => ok,
        Err(f) => {
            if let Some(msg) = f.body["error"]["message"].as_str() {
                eprintln!("matspec: {msg}");
            }
            (f.code, pretty(&f.body))
        }
    };
    if let Err(e) = emit(cli.output.as_deref(), &text) {
        eprintln!("matspec: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
