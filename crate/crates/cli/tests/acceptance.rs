//! Acceptance gate: every validation criterion as its own test, one
//! pass/fail line each. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the PASS lines of passing criteria).

use fracspec::criteria::{self, CriterionOutcome};

fn check(c: CriterionOutcome) {
    let flag = if c.pass { "PASS" } else { "FAIL" };
    println!("[criterion {:2}] {:<24} {}  {}", c.id, c.name, flag, c.detail);
    assert!(c.pass, "criterion {} ({}) failed: {}", c.id, c.name, c.detail);
}

#[test]
fn criterion_01_laplacian_limit() {
    check(criteria::criterion_1());
}

#[test]
fn criterion_02_limit_trend() {
    check(criteria::criterion_2());
}

#[test]
fn criterion_03_symmetric_reality() {
    check(criteria::criterion_3());
}

#[test]
fn criterion_04_cone_bound() {
    check(criteria::criterion_4());
}

#[test]
fn criterion_05_principal_eigenpair() {
    check(criteria::criterion_5());
}

#[test]
fn criterion_06_cross_method_oracle() {
    check(criteria::criterion_6());
}

#[test]
fn criterion_07_assembly_cross_validation() {
    check(criteria::criterion_7(0.0));
}

#[test]
fn criterion_07_detects_injected_fault() {
    // the forced-failure fixture: a perturbed stiffness entry must trip
    // the cross-validation
    let c = criteria::criterion_7(1e-4);
    println!(
        "[criterion  7] fault-injection fixture correctly {}",
        if c.pass { "MISSED" } else { "detected" }
    );
    assert!(!c.pass, "perturbed stiffness passed the oracle cross-check");
}

#[test]
fn criterion_08_norm_inequality() {
    check(criteria::criterion_8(0));
}

#[test]
fn criterion_09_poincare_bound() {
    check(criteria::criterion_9());
}

#[test]
fn criterion_10_real_count_trend() {
    check(criteria::criterion_10());
}

#[test]
fn criterion_11_maximum_principle_hopf() {
    check(criteria::criterion_11());
}

#[test]
fn criterion_12_validate_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_fracspec"))
            .args(["validate", "--seed", "0", "--out"])
            .arg(&path)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("spawning fracspec validate");
        assert!(status.success(), "validate run failed");
        std::fs::read(&path).expect("reading validation report")
    };
    let first = run("report_a.json");
    let second = run("report_b.json");
    let pass = first == second;
    println!(
        "[criterion 12] determinism               {}  two binary runs, {} bytes each",
        if pass { "PASS" } else { "FAIL" },
        first.len()
    );
    assert!(pass, "validation reports differ between identical runs");
}
