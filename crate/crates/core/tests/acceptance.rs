//! Runs every verification suite and prints one line per criterion.

use std::io::Write;
use std::time::Instant;

use uwrt_core::verify::{run_suite, SUITES};

#[test]
fn acceptance_criteria() {
    // written straight to stdout so the lines show without --nocapture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, what)) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let report = run_suite(name).expect("known suite");
        let secs = start.elapsed().as_secs_f64();
        let status = if report.all_passed() && report.run > 0 { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "criterion {:>2} [{status}] {name}: {}/{} cases, {secs:.1}s ({what})",
            i + 1,
            report.passed,
            report.run
        )
        .unwrap();
        if let Some(f) = &report.first_failure {
            writeln!(out, "              first failure: {f}").unwrap();
        }
        if status == "FAIL" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
