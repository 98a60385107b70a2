//! Acceptance run: one PASS/FAIL line per criterion, then the mutation and
//! seed-stability checks of the suite itself. Exact arithmetic, zero
//! tolerance; time budgets are pinned per item in the suite.
//!
//! Item 6 asks for depth 0 at d = 4 as well. Four planes in general position
//! in P^3 are projectively the coordinate tetrahedron x0*x1*x2*x3, a free
//! divisor whose Milnor algebra has depth 2, so that part cannot hold. The
//! line is printed as FAIL and the run only accepts that exact failure.

use std::process::ExitCode;

use milnor_alg::polyring::PrimeField;
use milnor_cli::verify::{run_seeds, run_suite, ItemResult, SuiteOptions};

/// The only failure accepted: d = 4 fails on depth alone, d = 5, 6 hold.
fn expected_arrangement_failure(item: &ItemResult) -> bool {
    let parts: Vec<&str> = item.detail.split("; ").collect();
    parts.len() == 3
        && parts[0].starts_with("d=4: reg 2 (want 2), depth 2 (want 0)")
        && parts[0].contains(r#""kind":"free""#)
        && parts[1] == "d=5: reg 4 (want 4), depth 0 (want 0)"
        && parts[2] == "d=6: reg 6 (want 6), depth 0 (want 0)"
}

fn main() -> ExitCode {
    let field = PrimeField::default();
    let opts = SuiteOptions { extended: true, ..Default::default() };
    let items = run_suite(field, 0, &opts);
    let mut unexpected = Vec::new();
    for item in &items {
        println!("criterion {}", item.line());
        let accepted = item.passed || (item.id == 6 && expected_arrangement_failure(item));
        if !accepted {
            unexpected.push(item.id);
        }
    }
    if items.len() != 9 {
        unexpected.push(0);
    }

    let mutated = run_suite(field, 0, &SuiteOptions { mutate_minimalize: true, only: vec![9], ..Default::default() });
    let caught = mutated.len() == 1 && !mutated[0].passed && mutated[0].detail.contains("(a) Hilbert series");
    println!("{} mutation: broken minimalization is caught by the Hilbert series cross-check", if caught { "PASS" } else { "FAIL" });

    let summary = run_seeds(field, &[0, 1, 2], &SuiteOptions::default());
    let stable = summary.seed_stable();
    println!("{} seed stability: seeds 0, 1, 2 give identical verdicts", if stable { "PASS" } else { "FAIL" });

    if unexpected.is_empty() && caught && stable {
        println!("acceptance: ok (criterion 6 fails only at d=4 on depth, as analysed)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results for {unexpected:?}");
        ExitCode::FAILURE
    }
}
