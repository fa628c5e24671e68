//! End-to-end acceptance run: one line per criterion. Runs without the test
//! harness so the lines always reach the output.

use rational_rmatrix::verify::{registry, run_suite, CheckReport, SamplePlan, SuiteSelection};
use rational_rmatrix::zoo::{Family, Params, Perturbation, Zoo};
use rational_rmatrix::Rat;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(names: &[&str], ns: std::ops::RangeInclusive<usize>, trials: usize) -> Outcome {
    let sel = SuiteSelection::Named(names.iter().map(|s| s.to_string()).collect());
    let ns: Vec<usize> = ns.collect();
    let reports = run_suite(&sel, &ns, &SamplePlan::new(trials, 2024)).expect("known names");
    summarize(&reports)
}

fn summarize(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} N={}", r.id, r.n))
        .collect();
    Outcome {
        passed: !reports.is_empty() && failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} reports", reports.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn merge(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        passed: parts.iter().all(|o| o.passed),
        detail: parts.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join("; "),
    }
}

/// Every single-entry perturbation of every family at N = 2 must be caught
/// by some check that touches the family; a clean family must not be
/// blamed by checks that do not touch it.
fn fault_injection() -> Outcome {
    let checks: Vec<_> = registry().into_iter().filter(|c| !c.optional && c.supports(2)).collect();
    let plan = SamplePlan::new(3, 7);
    let delta = Rat::new(1, 7);
    let mut missed = Vec::new();
    let mut blamed = Vec::new();
    let mut caught = 0;
    for family in Family::ALL {
        let dim = Family::build::<Rat>(family, 2, &sample_point()).expect("family builds").dim();
        let touching: Vec<_> = checks.iter().filter(|c| c.touches(family)).collect();
        for row in 0..dim {
            for col in 0..dim {
                let zoo = Zoo::perturbed(Perturbation {
                    family,
                    row,
                    col,
                    delta: delta.clone(),
                });
                if touching.iter().any(|c| !c.run(2, &plan, &zoo).passed) {
                    caught += 1;
                } else {
                    missed.push(format!("{family}[{row},{col}]"));
                }
            }
        }
        let zoo = Zoo::perturbed(Perturbation {
            family,
            row: 0,
            col: 0,
            delta: delta.clone(),
        });
        for c in checks.iter().filter(|c| !c.touches(family)) {
            if !c.run(2, &plan, &zoo).passed {
                blamed.push(format!("{} under {family}", c.id));
            }
        }
    }
    Outcome {
        passed: missed.is_empty() && blamed.is_empty(),
        detail: format!(
            "{caught} perturbations caught, missed: [{}], wrongly failed: [{}]",
            missed.join(", "),
            blamed.join(", ")
        ),
    }
}

fn sample_point() -> Params<Rat> {
    Params::new()
        .hbar(Rat::new(1, 3))
        .z(Rat::new(2, 5))
        .q(rational_rmatrix::gauge::DynParams::canonical(2))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("gauge-built vertex matrix equals the explicit form, N = 2..6", Box::new(|| suite(&["coincidence"], 2..=6, 10))),
        ("quantum Yang-Baxter for the explicit matrix, N = 2..4", Box::new(|| suite(&["qybe/explicit-appendix"], 2..=4, 20))),
        (
            "associative Yang-Baxter, explicit N = 2..4 and semi-dynamical N = 2..3",
            Box::new(|| {
                merge(vec![
                    suite(&["aybe/explicit-appendix"], 2..=4, 20),
                    suite(&["semi-aybe"], 2..=3, 20),
                ])
            }),
        ),
        (
            "unitarity and skew-symmetry: 11-vertex, explicit N = 2..5, semi-dynamical N = 2..3",
            Box::new(|| {
                merge(vec![
                    suite(&["unitarity-skew/eleven-vertex", "unitarity-skew/explicit-appendix"], 2..=5, 20),
                    suite(&["unitarity-skew/semi-dynamical"], 2..=3, 20),
                ])
            }),
        ),
        (
            "residues at z = 0, h = 0, z2 = 0 and the 11-vertex scaling limit",
            Box::new(|| {
                merge(vec![
                    suite(&["residues/explicit-appendix"], 2..=4, 20),
                    suite(&["residues/semi-dynamical"], 2..=3, 20),
                    suite(&["scaling-limit"], 2..=2, 20),
                ])
            }),
        ),
        ("dynamical and semi-dynamical Yang-Baxter, N = 2..3", Box::new(|| suite(&["dynamical-ybe", "semi-ybe"], 2..=3, 10))),
        ("twist: inverse, factorized form and twist relation, N = 2..4", Box::new(|| suite(&["twist"], 2..=4, 20))),
        ("gauge matrix: determinant, kernel, factorizations, inverses, N = 2..5", Box::new(|| suite(&["gauge"], 2..=5, 20))),
        ("q-independence, difference dependence and brackets, N = 2..3", Box::new(|| suite(&["gauge-props"], 2..=3, 20))),
        (
            "classical limit, CYBE, square identity, m and zero-point coefficients, N = 2..4",
            Box::new(|| suite(&["classical", "cybe/classical-explicit"], 2..=4, 20)),
        ),
        ("Lax trace formula, residue relation and trace of O, N = 2..3", Box::new(|| suite(&["lax"], 2..=3, 20))),
        (
            "symmetry of arguments, explicit and semi-dynamical, N = 2..4",
            Box::new(|| suite(&["argument-symmetry/explicit-appendix", "argument-symmetry/semi-dynamical"], 2..=4, 20)),
        ),
        ("single-entry fault injection is always detected", Box::new(fault_injection)),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "[{}] criterion {}: {name} ({}, {:.1?})",
            if o.passed { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed()
        );
    }
    if !all {
        eprintln!("some acceptance criteria failed");
        std::process::exit(1);
    }
}
