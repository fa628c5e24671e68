//! Run the default suite for N = 2 and print a table.

use rational_rmatrix::verify::{run_suite, suite_passed, SamplePlan, SuiteSelection};

fn main() -> rational_rmatrix::Result<()> {
    let reports = run_suite(&SuiteSelection::All, &[2], &SamplePlan::new(5, 0))?;
    for r in &reports {
        println!("{:<45} {}", r.id, if r.passed { "ok" } else { "FAIL" });
    }
    println!("{} checks, all passed: {}", reports.len(), suite_passed(&reports));
    Ok(())
}
