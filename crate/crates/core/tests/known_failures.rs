// Checks that are known not to hold. They stay here, ignored, so the gap is
// visible; run with `cargo test -- --ignored`.

use matspec::verify::{self, CheckOptions};
use matspec::EvalConfig;

/// The F₂ partial-derivative formula with the right factor exactly as stated,
/// (B1)ₘ(B2)ₙ[(C1)_{m+n}]⁻¹, against fourth-order finite differences.
#[test]
#[ignore = "stated right factor disagrees with finite differences; the corrected factor passes"]
fn stated_f2_derivative_matches_finite_differences() {
    let case = verify::find_case("derivative-5.4").unwrap();
    let r = verify::check_identity(case, &CheckOptions::default(), &EvalConfig::default()).unwrap();
    assert_eq!(r.failures, 0, "max residual {:.3e}", r.max_residual);
}
