//! Acceptance suite: runs every verification criterion at full scale and
//! prints one pass/fail line per criterion. All checks are exact integer
//! and group-theoretic identities; a single failing case fails the run.

use dcg_core::verify::{self, CriterionReport};

fn run(report: CriterionReport) {
    println!(
        "criterion {:2} ({}): {} [{} cases]{}{}",
        report.id,
        report.name,
        if report.pass { "PASS" } else { "FAIL" },
        report.cases,
        if report.details.is_empty() { "" } else { " " },
        report.details
    );
    assert!(
        report.pass,
        "criterion {} ({}) failed:\n{}",
        report.id,
        report.name,
        report.failures.join("\n")
    );
    assert!(report.cases > 0, "criterion {} ran no cases", report.id);
}

#[test]
fn criterion_01_recognition_equivalence() {
    run(verify::recognition_equivalence(None));
}

#[test]
fn criterion_02_decomposition_identity() {
    run(verify::decomposition_identity(None));
}

#[test]
fn criterion_03_automorphism_formula() {
    run(verify::automorphism_formula(None));
}

#[test]
fn criterion_04_coset_aut_from_cayley() {
    run(verify::coset_aut_from_cayley(None));
}

#[test]
fn criterion_05_cayley_aut_from_coset() {
    run(verify::cayley_aut_from_coset(None));
}

#[test]
fn criterion_06_unique_representative_bijection() {
    run(verify::unique_representative_bijection(None));
}

#[test]
fn criterion_07_isomorphism_transfer() {
    run(verify::isomorphism_transfer(None));
}

#[test]
fn criterion_08_octahedron_cross_group() {
    run(verify::octahedron_cross_group(None));
}

#[test]
fn criterion_09_dedekind_coset_condition() {
    run(verify::dedekind_coset_condition(None));
}

#[test]
fn criterion_10_generalized_wreath_bound() {
    run(verify::generalized_wreath_bound(None));
}

#[test]
fn criterion_11_wreath_quotient_multiple() {
    run(verify::wreath_quotient_multiple(None));
}

#[test]
fn criterion_12_wreath_aut_engine() {
    run(verify::wreath_aut_engine(None));
}
