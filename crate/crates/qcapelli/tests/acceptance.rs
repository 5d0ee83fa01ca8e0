//! Acceptance suite: every identity the crate claims, at its full range,
//! with exact (zero-tolerance) equality and a wall-clock budget per check.
//!
//! Each test prints one pass/fail line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

use qcapelli::verify::*;

fn assert_report(r: &Report, budget_ms: u128) {
    println!("{}", r.summary_line());
    assert!(
        r.pass,
        "criterion {} failed: {:?}",
        r.name,
        r.witness.as_deref().unwrap_or("no witness")
    );
    assert!(
        r.millis < budget_ms,
        "criterion {} exceeded its {budget_ms} ms budget ({} ms)",
        r.name,
        r.millis
    );
}

#[test]
fn criterion_01_idempotent_system() {
    // e_U^2 = e_U, e_U e_V = 0, sum e_U = 1, x_a e_U = kappa_a(U) e_U, n <= 4
    assert_report(&criterion_idempotent_system(4), 60_000);
}

#[test]
fn criterion_02_module_realization() {
    // generator relations, projections, direct-sum decomposition, splits, n <= 4
    assert_report(&criterion_module_realization(4), 60_000);
}

#[test]
fn criterion_03_conjugation_and_characters() {
    // termwise conjugation sums and character elements, n = 3 and (3,1) at n = 4
    assert_report(&criterion_conjugation_characters(true), 300_000);
}

#[test]
fn criterion_04_supertrace_character() {
    // str(E_U Y_1..Y_n) = Q_lambda, n <= 4, N in {2, 3}, all tableaux
    assert_report(&criterion_supertrace_character(4, &[2, 3]), 120_000);
}

#[test]
fn criterion_05_universal_capelli_odd() {
    let cases = [(1, 1, 1), (1, 1, 2), (2, 2, 1), (2, 2, 2), (2, 2, 3)];
    let start = std::time::Instant::now();
    for (m, n_big, n) in cases {
        let out = qcapelli::weyl::verify_odd_capelli(m, n_big, n);
        assert!(out.exact_equal, "odd identity fails at ({m},{n_big},{n}): {out:?}");
    }
    let ms = start.elapsed().as_millis();
    println!("universal-capelli-odd: PASS [cases {cases:?}] ({ms} ms)");
    assert!(ms < 300_000);
}

#[test]
fn criterion_05_universal_capelli_even() {
    let cases = [(1, 1, 1), (1, 1, 2), (2, 2, 1), (2, 2, 2), (2, 2, 3)];
    let start = std::time::Instant::now();
    for (m, n_big, n) in cases {
        let out = qcapelli::weyl::verify_even_capelli(m, n_big, n);
        assert!(out.exact_equal, "even identity fails at ({m},{n_big},{n}): {out:?}");
    }
    let ms = start.elapsed().as_millis();
    println!("universal-capelli-even: PASS [cases {cases:?}] ({ms} ms)");
    assert!(ms < 300_000);
}

#[test]
fn criterion_06_tableau_capelli() {
    // per-tableau identity with the replacement step, n <= 3, M = N = 2
    assert_report(&criterion_tableau_capelli(3, 2, 2), 180_000);
}

#[test]
fn criterion_07_centrality() {
    // [S_lambda, F_ij] = 0 for all generators, n <= 3, N = 2
    assert_report(&criterion_centrality(3, 2), 120_000);
}

#[test]
fn criterion_08_harish_chandra_images() {
    // hc(S) = Q^+, tableau independence, linear independence, hc(C) = Q^-,
    // n <= 4, N in {2, 3}
    assert_report(&criterion_hc_images(4, &[2, 3]), 300_000);
}

#[test]
fn criterion_09_immanant_images_and_annihilation() {
    // operator image routes agree and annihilate degree n-1, n <= 3, M = N = 2
    assert_report(&criterion_immanant_images(3, 2, 2), 180_000);
}

#[test]
fn criterion_10_factorial_schur_q() {
    // supersymmetry, characterization, reflection, |lambda| <= 5, N in {2, 3}
    assert_report(&criterion_schur_q_properties(5, &[2, 3]), 60_000);
}
