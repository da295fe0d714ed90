//! Acceptance suite: one test per criterion. Each test prints a single
//! PASS/FAIL line (uncaptured) and, on failure, the offending checks.

use std::io::Write;

use adiashort::verify::{run_criterion, CriterionResult, Fault, Options};

fn report(result: &CriterionResult) {
    // bypass the harness's output capture so the verdict is always visible
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", result.summary_line()).unwrap();
    for c in result.failures() {
        writeln!(out, "    {c}").unwrap();
    }
}

fn criterion(id: u8) {
    let result = run_criterion(id, &Options::default());
    report(&result);
    assert!(result.passed(), "{result}");
}

#[test]
fn criterion_1_decoupling() {
    criterion(1);
}

#[test]
fn criterion_2_perfect_transfer() {
    criterion(2);
}

#[test]
fn criterion_3_endpoint_norm_unity() {
    criterion(3);
}

#[test]
fn criterion_4_hermitian_baseline() {
    criterion(4);
}

#[test]
fn criterion_5_closed_form_propagator() {
    criterion(5);
}

#[test]
fn criterion_6_no_complex_crossing() {
    criterion(6);
}

#[test]
fn criterion_7_sign_flip_asymmetry() {
    criterion(7);
}

#[test]
fn criterion_8_oracle_equivalence() {
    criterion(8);
}

#[test]
fn criterion_9_gamma_profile_values() {
    criterion(9);
}

#[test]
fn negative_control_sign_bug_breaks_decoupling() {
    let opts = Options { fast: false, fault: Some(Fault::FlipShortcutSign) };
    let result = run_criterion(1, &opts);
    assert!(!result.passed(), "decoupling survived a flipped γ sign:\n{result}");
    assert!(result.failures().any(|c| c.label.contains("|H12|")));
}
