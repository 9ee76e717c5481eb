//! Acceptance gate: every guarantee the tool makes, exercised end to end
//! with its stated tolerance and time budget. Each test prints a single
//! pass/fail line (visible with `--nocapture`; cargo's own per-test ok/FAILED
//! lines carry the same information).

use std::time::Instant;

use totpos::harness::{run_suite, ProbeConfig, ProbeStatus, Suite};

/// Run one suite under the default deterministic configuration and require
/// zero violations, zero errors, and completion inside `budget_secs`.
fn check(criterion: &str, suite: Suite, budget_secs: f64) {
    let mut cfg = ProbeConfig::default();
    cfg.suites = vec![suite];
    let start = Instant::now();
    let report = run_suite(&cfg);
    let elapsed = start.elapsed().as_secs_f64();
    let probe = &report.probes[0];
    let ok = report.is_clean() && elapsed <= budget_secs;
    println!(
        "{}: {} ({:.2}s / {:.0}s budget, violations: {})",
        criterion,
        if ok { "pass" } else { "FAIL" },
        elapsed,
        budget_secs,
        probe.violations,
    );
    assert!(
        report.is_clean(),
        "{criterion}: suite {suite} reported status {:?} with {} violations: {}",
        probe.status,
        probe.violations,
        serde_json::to_string_pretty(&probe.details).unwrap(),
    );
    assert!(
        elapsed <= budget_secs,
        "{criterion}: suite {suite} took {elapsed:.2}s, budget {budget_secs}s"
    );
    assert_eq!(probe.status, ProbeStatus::Confirmed);
}

#[test]
fn criterion_01_exact_determinants() {
    check("criterion 01 exact determinants", Suite::ExactReproduction, 1.0);
}

#[test]
fn criterion_02_homotopy_interval_endpoints() {
    check("criterion 02 homotopy interval endpoints", Suite::Homotopy, 1.0);
}

#[test]
fn criterion_03_power_trichotomy() {
    check("criterion 03 power trichotomy", Suite::PowerTrichotomy, 60.0);
}

#[test]
fn criterion_04_shift_scale_witnesses() {
    check("criterion 04 shift/scale witnesses", Suite::ShiftScaleWitness, 30.0);
}

#[test]
fn criterion_05_minor_sign_signature_law() {
    check("criterion 05 minor sign signature law", Suite::SignatureLaw, 60.0);
}

#[test]
fn criterion_06_oracle_equivalence() {
    check("criterion 06 oracle equivalence", Suite::OracleEquivalence, 120.0);
}

#[test]
fn criterion_07_entrywise_power_thresholds() {
    check("criterion 07 entrywise power thresholds", Suite::LoewnerThresholds, 60.0);
}

#[test]
fn criterion_08_transform_zero_locations() {
    check("criterion 08 transform zero locations", Suite::TransformZeros, 30.0);
}

#[test]
fn criterion_09_sector_and_convergence_bound() {
    check("criterion 09 sector and convergence bound", Suite::SectorBound, 60.0);
}

#[test]
fn criterion_10_transform_identities() {
    check("criterion 10 transform identities", Suite::TransformIdentities, 10.0);
}

#[test]
fn criterion_11_zero_count_bound() {
    check("criterion 11 zero count bound", Suite::DescartesBound, 30.0);
}

#[test]
fn criterion_12_tn3_power_failure() {
    check("criterion 12 order-3 power counterexamples", Suite::Tn3Power, 1.0);
}
