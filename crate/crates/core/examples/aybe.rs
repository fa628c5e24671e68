//! Associative Yang-Baxter equation through the verifier.

use rational_rmatrix::verify::{check_aybe, AybeKind, SamplePlan};
use rational_rmatrix::zoo::Family;

fn main() {
    let plan = SamplePlan::new(10, 1);
    for n in 2..=4 {
        let rep = check_aybe(AybeKind::Vertex, Family::ExplicitAppendix, n, &plan);
        println!("{} N={} passed={} ({} trials)", rep.id, n, rep.passed, rep.trials);
    }
    for n in 2..=3 {
        let rep = check_aybe(AybeKind::SemiDynamical, Family::SemiDynamical, n, &plan);
        println!("{} N={} passed={}", rep.id, n, rep.passed);
    }
}
