// One PASS/FAIL line per acceptance criterion. Runs the whole catalog through
// the library, then the determinism sweep through the binary.
//
// Criterion 7 is known to fail: the printed F₂ derivative formula disagrees
// with finite differences (the corrected variant passes). It is reported, not
// hidden; the process fails only if some other criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use matspec::verify::{self, CaseClass, CheckOptions, IdentityReport, CATALOG};
use matspec::EvalConfig;

const KNOWN_FAILING: &[u8] = &[7];

struct Line {
    criterion: u8,
    pass: bool,
    detail: String,
}

fn asserts_clean(reports: &[&IdentityReport]) -> (bool, String) {
    let asserts: Vec<_> = reports.iter().filter(|r| r.counts()).collect();
    let failures: usize = asserts.iter().map(|r| r.failures).sum();
    let draws: usize = asserts.iter().map(|r| r.draws).sum();
    let skipped: usize = asserts.iter().map(|r| r.skipped).sum();
    let worst = asserts.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let failing: Vec<_> = asserts.iter().filter(|r| r.failures > 0).map(|r| format!("{}({})", r.case_id, r.failures)).collect();
    let mut detail = format!("{} cases, {draws} draws, {failures} failures, {skipped} skipped, max residual {worst:.1e}", asserts.len());
    if !failing.is_empty() {
        detail.push_str(&format!("; failing: {}", failing.join(", ")));
    }
    (failures == 0 && !asserts.is_empty(), detail)
}

fn reported(reports: &[&IdentityReport], id: &str) -> (bool, String) {
    match reports.iter().find(|r| r.case_id == id) {
        Some(r) => (r.max_residual > 0.0 && r.records.iter().any(|d| d.residual.is_some()), format!("{id} max residual {:.1e}", r.max_residual)),
        None => (false, format!("{id} missing")),
    }
}

fn cli_sweep() -> (Vec<u8>, Duration, i32) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_matspec"))
        .args(["verify", "all", "--orders", "1", "2"])
        .env_remove("MATSPEC_CONFIG")
        .output()
        .expect("run matspec");
    (out.stdout, t.elapsed(), out.status.code().unwrap_or(-1))
}

fn main() {
    let cfg = EvalConfig::default();
    let opts = CheckOptions::default();
    let t = Instant::now();
    let reports: Vec<IdentityReport> = CATALOG.iter().map(|c| verify::check_identity(c, &opts, &cfg).expect("case runs")).collect();
    let sweep = t.elapsed();
    let by: BTreeMap<u8, Vec<&IdentityReport>> = CATALOG.iter().zip(&reports).fold(BTreeMap::new(), |mut m, (c, r)| {
        m.entry(c.criterion).or_default().push(r);
        m
    });
    let group = |n: u8| by.get(&n).cloned().unwrap_or_default();
    let mut lines = Vec::new();

    // 1: pass rate and skips over the oracle cases, plus sweep runtime.
    {
        let g = group(1);
        let draws: usize = g.iter().map(|r| r.draws).sum();
        let passes: usize = g.iter().map(|r| r.passes()).sum();
        let skipped: usize = g.iter().map(|r| r.skipped).sum();
        let failures: usize = g.iter().map(|r| r.failures).sum();
        let rate = passes as f64 / draws.max(1) as f64;
        let skip_rate = skipped as f64 / draws.max(1) as f64;
        let pass = rate >= 0.99 && skip_rate < 0.05 && sweep <= Duration::from_secs(600);
        lines.push(Line {
            criterion: 1,
            pass,
            detail: format!(
                "{} functions, {passes}/{draws} draws pass ({:.2}%), {failures} failures, {skipped} skipped ({:.2}%), full sweep {:.0?}",
                g.len(),
                100.0 * rate,
                100.0 * skip_rate,
                sweep
            ),
        });
    }

    for n in [2, 3, 4, 5, 8, 9] {
        let (pass, detail) = asserts_clean(&group(n));
        lines.push(Line { criterion: n, pass, detail });
    }

    {
        let g = group(6);
        let (ok, mut detail) = asserts_clean(&g);
        let (shown, d) = reported(&g, "euler-e4.11-printed");
        detail.push_str(&format!("; printed variant reported: {d}"));
        lines.push(Line { criterion: 6, pass: ok && shown, detail });
    }

    {
        let g = group(7);
        let (ok, mut detail) = asserts_clean(&g);
        let printed = g.iter().find(|r| r.case_id == "derivative-5.4").expect("printed F₂ derivative case");
        let (shown, d) = reported(&g, "derivative-5.5-printed");
        detail.push_str(&format!(
            "; printed F₂ derivative formula: {}/{} draws fail (max residual {:.1e}); printed F_D variant reported: {d}",
            printed.failures, printed.draws, printed.max_residual
        ));
        lines.push(Line { criterion: 7, pass: ok && shown && printed.failures == 0, detail });
    }

    {
        let diagnostics: Vec<&IdentityReport> =
            CATALOG.iter().zip(&reports).filter(|(c, _)| c.class == CaseClass::Diagnostic).map(|(_, r)| r).collect();
        let nonzero = diagnostics.iter().filter(|r| r.max_residual > 0.0).count();
        let xb1 = reported(&diagnostics, "xb1-factorization-diagnostic");
        let suite_ok = reports.iter().all(|r| r.passed());
        let (first, elapsed, code1) = cli_sweep();
        let (second, _, code2) = cli_sweep();
        let identical = first == second && !first.is_empty();
        let pass = xb1.0 && nonzero == diagnostics.len() && suite_ok && identical && code1 == 0 && code2 == 0 && elapsed <= Duration::from_secs(1800);
        lines.push(Line {
            criterion: 10,
            pass,
            detail: format!(
                "{nonzero}/{} diagnostics report nonzero residuals ({}), suite passes: {suite_ok}; `verify all --orders 1 2` byte-identical: {identical} ({} bytes, {elapsed:.0?}, exit {code1}/{code2})",
                diagnostics.len(),
                xb1.1,
                first.len()
            ),
        });
    }

    lines.sort_by_key(|l| l.criterion);
    let mut unexpected = Vec::new();
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let note = if !l.pass && KNOWN_FAILING.contains(&l.criterion) { " [known]" } else { "" };
        println!("criterion {:>2}: {verdict}{note}  {}", l.criterion, l.detail);
        if !l.pass && !KNOWN_FAILING.contains(&l.criterion) {
            unexpected.push(l.criterion);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance failures: {unexpected:?}");
        std::process::exit(1);
    }
}
