use std::f64::consts::PI;

use matspec::matcalc::{commutator_norm, is_positive_stable};
use matspec::par::{self, Execution};
use matspec::verify::family::{random_commuting_family, SpectrumBox};
use matspec::verify::registry::{oracle_equivalence, scalar_oracle, FUNCTIONS};
use matspec::verify::{self, CaseClass, CheckOptions, DrawStatus, CATALOG};
use matspec::{EvalConfig, SquareMatrix, C64};
use proptest::prelude::*;
use serde_json::{json, Map, Value};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn c(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn args(v: Value) -> Map<String, Value> {
    v.as_object().cloned().unwrap_or_default()
}

#[test]
fn scalar_family_uses_the_unit_basis() {
    let f = random_commuting_family(1, 3, SpectrumBox::real(0.5, 2.0), 11).unwrap();
    assert_eq!(f.basis, SquareMatrix::identity(1));
}

#[test]
fn family_members_commute_and_are_stable() {
    let f = random_commuting_family(2, 3, SpectrumBox::real(0.5, 2.0), 42).unwrap();
    let ms: Vec<_> = (0..3).map(|k| f.matrix(&format!("M{k}")).unwrap()).collect();
    for a in &ms {
        assert!(is_positive_stable(a, 0.0).unwrap());
        for b in &ms {
            assert!(commutator_norm(a, b).unwrap() <= 1e-12 * a.frobenius_norm() * b.frobenius_norm());
        }
    }
}

#[test]
fn scalar_oracle_examples() {
    let gamma = scalar_oracle("gamma", &[c(0.5)], &Map::new()).unwrap();
    assert!((gamma - PI.sqrt()).norm() < 1e-14);
    let beta = scalar_oracle("beta_matrix", &[c(2.0), c(3.0)], &Map::new()).unwrap();
    assert!((beta - 1.0 / 12.0).norm() < 1e-15);
    // a, b, x, z, y
    let b = scalar_oracle("beta_new_extended", &[c(1.0), c(2.0), c(1.0), c(1.0), c(0.3)], &Map::new()).unwrap();
    assert!(b.re > 0.0 && b.re < 1.0 && b.im == 0.0);
    assert!(scalar_oracle("gamma", &[c(0.5), c(1.0)], &Map::new()).is_err());
}

#[test]
fn oracle_equivalence_on_families() {
    let scalar = random_commuting_family(1, 2, SpectrumBox::real(0.6, 2.0), 5).unwrap();
    let r = oracle_equivalence("gamma", &scalar, &[("A", "M0")], &Map::new(), 1e-6, &cfg()).unwrap();
    assert_eq!(r.failures, 0);

    let diag = matspec::verify::family::CommutingFamily::with_basis(2, SquareMatrix::identity(2), SquareMatrix::identity(2), 0);
    let mut diag = diag;
    diag.push("P", vec![c(0.5), c(2.0)]);
    diag.push("Q", vec![c(0.5), c(3.0)]);
    let r = oracle_equivalence("beta_matrix", &diag, &[("A", "P"), ("B", "Q")], &args(json!({"form": "unit"})), 1e-8, &cfg()).unwrap();
    assert_eq!(r.failures, 0, "{r:?}");

    let f = random_commuting_family(2, 6, SpectrumBox::real(0.6, 1.6), 8).unwrap();
    let mut f = f;
    let c1 = f.eigenvalues("M4").unwrap().iter().map(|l| l + 1.5).collect();
    let b = f.eigenvalues("M1").unwrap().iter().map(|l| l + 1.0).collect();
    f.push("C", c1);
    f.push("Bk", b);
    let roles = [("A", "M0"), ("B", "Bk"), ("A1", "M2"), ("B1", "M3"), ("C1", "C"), ("Y", "M5")];
    let r = oracle_equivalence("neghmf_series", &f, &roles, &args(json!({"z": 0.3})), 1e-6, &cfg()).unwrap();
    assert_eq!(r.failures, 0, "{r:?}");
    assert_eq!(r.skipped, 0);
}

#[test]
fn beta_recurrence_holds_on_fifty_draws() {
    let case = verify::find_case("beta-recurrence-3.7").unwrap();
    let opts = CheckOptions { draws: Some(50), ..CheckOptions::default() };
    let r = verify::check_identity(case, &opts, &cfg()).unwrap();
    assert_eq!(r.draws, 50);
    assert_eq!(r.failures, 0);
    assert!(r.max_residual <= 1e-6);
    let orders: Vec<usize> = r.records.iter().map(|d| d.order).collect();
    assert!(orders.contains(&1) && orders.contains(&2) && orders.contains(&3));
}

#[test]
fn pfaff_classical_subcase_is_at_rounding_level() {
    let case = verify::find_case("pfaff-4.11").unwrap();
    let opts = CheckOptions { draws: Some(6), orders: vec![1], ..CheckOptions::default() };
    let r = verify::check_identity(case, &opts, &cfg()).unwrap();
    assert_eq!(r.failures, 0);
    assert!(r.max_residual < 1e-10, "{}", r.max_residual);
}

#[test]
fn factorization_diagnostic_reports_without_failing() {
    let case = verify::find_case("xb1-factorization-diagnostic").unwrap();
    assert_eq!(case.class, CaseClass::Diagnostic);
    let opts = CheckOptions { draws: Some(4), ..CheckOptions::default() };
    let r = verify::check_identity(case, &opts, &cfg()).unwrap();
    assert!(r.max_residual > 1e-4);
    assert!(!r.counts() && r.passed());
}

#[test]
fn reports_are_deterministic_across_runs_and_execution_modes() {
    let case = verify::find_case("form-4.1-vs-4.3").unwrap();
    let opts = CheckOptions { draws: Some(6), seed: 7, ..CheckOptions::default() };
    let first = verify::check_identity(case, &opts, &cfg()).unwrap();
    let again = verify::check_identity(case, &opts, &cfg()).unwrap();
    par::set_execution(Execution::Sequential);
    let sequential = verify::check_identity(case, &opts, &cfg()).unwrap();
    par::set_execution(Execution::Parallel);
    let a = serde_json::to_string(&first).unwrap();
    assert_eq!(a, serde_json::to_string(&again).unwrap());
    assert_eq!(a, serde_json::to_string(&sequential).unwrap());

    let other = verify::check_identity(case, &CheckOptions { seed: 8, ..opts }, &cfg()).unwrap();
    assert_ne!(first.records[0].residual, other.records[0].residual);
}

#[test]
fn draws_depend_only_on_case_seed_and_index() {
    let case = verify::find_case("beta-symmetry").unwrap();
    let few = verify::check_identity(case, &CheckOptions { draws: Some(3), ..CheckOptions::default() }, &cfg()).unwrap();
    let many = verify::check_identity(case, &CheckOptions { draws: Some(9), ..CheckOptions::default() }, &cfg()).unwrap();
    assert_eq!(few.records[..], many.records[..3]);
}

#[test]
fn skipped_draws_are_never_passes() {
    let case = verify::find_case("oracle-gamma_matrix").unwrap();
    let mut tight = cfg();
    tight.quadrature.max_levels = 3;
    tight.quadrature.rel_tol = 1e-15;
    tight.quadrature.abs_tol = 1e-300;
    let r = verify::check_identity(case, &CheckOptions { draws: Some(4), ..CheckOptions::default() }, &tight).unwrap();
    assert_eq!(r.passes() + r.failures + r.skipped, r.draws);
    for d in &r.records {
        if d.status == DrawStatus::Skipped {
            assert!(d.note.is_some());
        }
    }
    assert!(r.skipped > 0, "an unconverged catalog run should report skips");
}

#[test]
fn invalid_orders_are_rejected() {
    let case = verify::find_case("beta-symmetry").unwrap();
    assert!(verify::check_identity(case, &CheckOptions { orders: vec![], ..CheckOptions::default() }, &cfg()).is_err());
    assert!(verify::check_identity(case, &CheckOptions { orders: vec![0], ..CheckOptions::default() }, &cfg()).is_err());
}

#[test]
fn catalog_is_complete() {
    assert_eq!(CATALOG.len(), 86);
    for n in 1..=10u8 {
        assert!(CATALOG.iter().any(|c| c.criterion == n), "criterion {n} has no case");
    }
    for id in [
        "beta-recurrence-3.7",
        "pfaff-4.11",
        "xb1-factorization-diagnostic",
        "euler-e4.11-printed",
        "euler-e4.11-corrected",
        "recurrence-5.7-derived",
        "kummer-first-thm4.6",
        "gauss-at-one-4.16",
    ] {
        assert!(verify::find_case(id).is_ok(), "{id}");
    }
    // Every function with a single matrix value has an oracle case.
    for f in FUNCTIONS {
        let oracle_id = format!("oracle-{}", f.id);
        let has_oracle = CATALOG.iter().any(|c| c.id == oracle_id || (f.id == "gamma" && c.id == "oracle-gamma_matrix"));
        let data_only = matches!(
            f.id,
            "spectral_alpha_beta"
                | "commutator_norm"
                | "extended_factorization_sides"
                | "kummer_first_theorem"
                | "f1_recurrence_sides"
                | "f2_recurrence_sides"
                | "fd3_recurrence_sides"
        );
        assert!(has_oracle || data_only, "{} has no oracle case", f.id);
    }
    for c in CATALOG.iter().filter(|c| c.class != CaseClass::Assert) {
        assert!(c.criterion == 10 || c.corrected_variant == Some(false) || c.id == "derivative-5.4", "{}", c.id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_families_commute(seed in any::<u64>(), order in 1usize..=3) {
        let f = random_commuting_family(order, 3, SpectrumBox { re: (0.5, 2.0), im: (-0.1, 0.1) }, seed).unwrap();
        let a = f.matrix("M0").unwrap();
        let b = f.matrix("M2").unwrap();
        prop_assert!(commutator_norm(&a, &b).unwrap() <= 1e-12 * a.frobenius_norm() * b.frobenius_norm());
        prop_assert!(is_positive_stable(&a, 0.0).unwrap());
    }
}
