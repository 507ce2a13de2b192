//! Acceptance battery: one line per criterion, all tolerances pinned in
//! `su21::suite::tol`. Run with `--nocapture` to see the table.

use su21::suite;

const SEED: u64 = 0;

fn check(id: usize) {
    let c = suite::CRITERIA[id - 1](SEED);
    println!("{c}");
    assert!(c.passed, "{c}");
}

#[test]
fn c01_trace_equation_oracle() {
    check(1);
}

#[test]
fn c02_transcription_regressions() {
    check(2);
}

#[test]
fn c03_discriminant_negativity() {
    check(3);
}

#[test]
fn c04_cross_ratio_variety() {
    check(4);
}

#[test]
fn c05_strike_identity() {
    check(5);
}

#[test]
fn c06_existence_round_trip() {
    check(6);
}

#[test]
fn c07_modular_family() {
    check(7);
}

#[test]
fn c08_unipotent_products() {
    check(8);
}

#[test]
fn c09_surface_identity() {
    check(9);
}

#[test]
fn c10_discreteness_tests() {
    check(10);
}

#[test]
fn c11_triangle_scans() {
    check(11);
}

#[test]
fn c12_eigensolver_and_classification() {
    check(12);
}
