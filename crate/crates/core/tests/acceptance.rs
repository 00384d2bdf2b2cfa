//! One PASS/FAIL line per acceptance criterion, each backed by its check suite.

use dilator_core::suites::{run_suite, SuiteOptions, SUITES};

const TITLES: [&str; 7] = [
    "exact J, J' and J+ values",
    "collapse clause values",
    "gamma + psi D^gamma <= J+(D, gamma)",
    "J law suites",
    "semantic and symbolic coherence",
    "order-theoretic sanity",
    "well-foundedness fuzzing",
];

#[test]
fn acceptance() {
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for (i, name) in SUITES.iter().enumerate() {
        let report = run_suite(name, &opts).expect("suite runs");
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {}: {} [{name}, {} instances, {} ms]",
            i + 1,
            TITLES[i],
            report.instances,
            report.millis
        );
        for v in report.violations() {
            println!("    {v}");
        }
        if !report.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
