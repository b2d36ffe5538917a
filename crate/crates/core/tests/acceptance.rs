//! Desk-scale acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 1 compares against the printed expansion
//! `θ_0 = 1 + 6(q + q^2 + q^4 + 2q^7 + …)`. The coset `P ⊂ Z[ζ_3]` has no
//! vector of norm 4 and six of norm 6, so the true series reads
//! `1 + 6q + 6q^3 + 6q^4 + 12q^7`; the printed `q^2` term should be `q^3`.
//! That criterion is reported as FAIL and the run pins down that the
//! disagreement is exactly those two coefficients of `θ_0`.

use theta_forge::suite::{run_all, CriterionResult};

/// Criteria that fail against the printed reference values, with the
/// mismatches they are expected to report.
const KNOWN_FAILURES: &[(u8, &[&str])] = &[(1, &["q^2 expected 6 got 0", "q^3 expected 0 got 6"])];

fn line(r: &CriterionResult) -> String {
    format!(
        "{} criterion {:>2} {:<40} {:>8.3}s  {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.seconds,
        r.detail
    )
}

/// Problems beyond the known failures; empty when the suite is as expected.
fn unexpected(results: &[CriterionResult]) -> Vec<String> {
    let mut problems = Vec::new();
    if results.len() != 11 {
        problems.push(format!("expected 11 criteria, got {}", results.len()));
    }
    for r in results {
        match KNOWN_FAILURES.iter().find(|(id, _)| *id == r.id) {
            Some((_, expected)) => {
                if r.pass {
                    problems.push(format!("criterion {} now passes; drop it from KNOWN_FAILURES", r.id));
                    continue;
                }
                let listed = r.detail.split("theta_0 mismatches: ").nth(1).unwrap_or("");
                let found: Vec<&str> = listed.split(" | ").filter(|s| !s.is_empty()).collect();
                if found != *expected || r.detail.contains("theta_1 mismatches") {
                    problems.push(format!("criterion {} fails differently: {}", r.id, r.detail));
                }
            }
            None if !r.pass => problems.push(line(r)),
            None => {}
        }
    }
    problems
}

// Runs without the libtest harness so the criterion lines are always shown.
fn main() {
    let results = run_all();
    println!();
    for r in &results {
        println!("{}", line(r));
    }
    let problems = unexpected(&results);
    let known = KNOWN_FAILURES.len();
    if problems.is_empty() {
        println!("acceptance: {} PASS, {known} known FAIL", results.len() - known);
    } else {
        for p in &problems {
            eprintln!("unexpected: {p}");
        }
        std::process::exit(1);
    }
}
