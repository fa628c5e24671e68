//! Pointwise verification of R-matrix identities at random rational points.
//!
//! A check is a trial function that draws its variables from a [`Sampler`],
//! builds both sides of an identity exactly and compares them entrywise.
//! Trials are independent and seeded from `(master seed, check id, N,
//! trial, attempt)`, so results do not depend on scheduling. A trial that
//! lands on a pole is redrawn up to `max_resamples` times.

mod checks;
mod registry;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Rat, TensorOperator};
use crate::error::{Error, Result};
use crate::gauge::DynParams;
use crate::zoo::{Family, Zoo};

pub use checks::{
    check_aybe, check_classical_ids, check_equiv, check_gauge_props, check_lax,
    check_residues_and_limits, check_unitary_skew, check_ybe, AybeKind, EquivCase, YbeKind,
};
pub use registry::{registry, run_suite, run_suite_with, select, suite_passed, SuiteSelection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePlan {
    /// Random rationals are `p/q` with `|p| <= bound`, `1 <= q <= bound`.
    pub bound: i64,
    pub trials: usize,
    pub seed: u64,
    pub max_resamples: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            bound: 20,
            trials: 20,
            seed: 0,
            max_resamples: 100,
        }
    }
}

impl SamplePlan {
    pub fn new(trials: usize, seed: u64) -> Self {
        SamplePlan {
            trials,
            seed,
            ..SamplePlan::default()
        }
    }
}

/// FNV-1a over a byte stream.
fn fnv1a(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        // separator so that ("ab", "c") and ("a", "bc") differ
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Deterministic source of named rational draws for one trial attempt.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
    drawn: Vec<(String, String)>,
}

impl Sampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
            drawn: Vec::new(),
        }
    }

    fn for_attempt(plan: &SamplePlan, id: &str, n: usize, trial: usize, attempt: usize) -> Self {
        let seed = fnv1a(&[
            &plan.seed.to_le_bytes(),
            id.as_bytes(),
            &(n as u64).to_le_bytes(),
            &(trial as u64).to_le_bytes(),
            &(attempt as u64).to_le_bytes(),
        ]);
        Sampler::new(seed, plan.bound)
    }

    fn record(&mut self, name: &str, value: String) {
        self.drawn.push((name.to_string(), value));
    }

    pub fn rat(&mut self, name: &str) -> Rat {
        let v = Rat::sample(&mut self.rng, self.bound);
        self.record(name, v.to_string());
        v
    }

    pub fn nonzero(&mut self, name: &str) -> Rat {
        loop {
            let v = Rat::sample(&mut self.rng, self.bound);
            if !v.is_zero() {
                self.record(name, v.to_string());
                return v;
            }
        }
    }

    pub fn rats(&mut self, name: &str, n: usize) -> Vec<Rat> {
        let v: Vec<Rat> = (0..n).map(|_| Rat::sample(&mut self.rng, self.bound)).collect();
        self.record(name, join(&v));
        v
    }

    /// Dynamical parameters; coinciding entries surface as a singular point.
    pub fn q(&mut self, name: &str, n: usize) -> Result<DynParams<Rat>> {
        DynParams::new(self.rats(name, n))
    }

    pub fn drawn(&self) -> &[(String, String)] {
        &self.drawn
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Entrywise disagreement between the two sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub label: String,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
    /// Largest `|lhs − rhs|` over all entries.
    pub discrepancy: String,
}

pub type Verdict = Option<Mismatch>;

/// `None` when `lhs == rhs`, otherwise the largest discrepancy.
pub fn compare(label: &str, lhs: &TensorOperator<Rat>, rhs: &TensorOperator<Rat>) -> Verdict {
    if lhs.n() != rhs.n() || lhs.slots() != rhs.slots() {
        return Some(Mismatch {
            label: label.to_string(),
            row: 0,
            col: 0,
            lhs: format!("N={} k={}", lhs.n(), lhs.slots()),
            rhs: format!("N={} k={}", rhs.n(), rhs.slots()),
            discrepancy: "shape".into(),
        });
    }
    lhs.max_discrepancy(rhs).map(|(r, c, d)| Mismatch {
        label: label.to_string(),
        row: r,
        col: c,
        lhs: lhs.get(r, c).to_string(),
        rhs: rhs.get(r, c).to_string(),
        discrepancy: d.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub point: Vec<(String, String)>,
    pub mismatch: Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub n: usize,
    pub passed: bool,
    pub trials: usize,
    pub resamples: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
    pub error: Option<String>,
}

pub type TrialFn = dyn Fn(usize, &Zoo, &mut Sampler) -> Result<Verdict> + Send + Sync;

/// A registered identity.
#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    /// Families whose output enters the identity.
    pub families: Vec<Family>,
    /// Excluded from `all`; run only when named.
    pub optional: bool,
    trial: Arc<TrialFn>,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("n", &(self.n_min..=self.n_max))
            .field("families", &self.families)
            .finish()
    }
}

enum TrialOutcome {
    Held,
    Failed(Counterexample),
    Errored(String),
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        anchor: &'static str,
        n_range: (usize, usize),
        families: Vec<Family>,
        trial: impl Fn(usize, &Zoo, &mut Sampler) -> Result<Verdict> + Send + Sync + 'static,
    ) -> Self {
        Check {
            id: id.into(),
            anchor,
            n_min: n_range.0,
            n_max: n_range.1,
            families,
            optional: false,
            trial: Arc::new(trial),
        }
    }

    pub fn optional(mut self) -> Self {
        self.optional = true;
        self
    }

    pub fn group(&self) -> &str {
        self.id.split('/').next().unwrap_or(&self.id)
    }

    pub fn supports(&self, n: usize) -> bool {
        (self.n_min..=self.n_max).contains(&n)
    }

    pub fn touches(&self, f: Family) -> bool {
        self.families.contains(&f)
    }

    fn run_trial(&self, n: usize, plan: &SamplePlan, zoo: &Zoo, trial: usize) -> (usize, TrialOutcome) {
        for attempt in 0..=plan.max_resamples {
            let mut s = Sampler::for_attempt(plan, &self.id, n, trial, attempt);
            match (self.trial)(n, zoo, &mut s) {
                Ok(None) => return (attempt, TrialOutcome::Held),
                Ok(Some(mismatch)) => {
                    return (
                        attempt,
                        TrialOutcome::Failed(Counterexample {
                            trial,
                            point: s.drawn,
                            mismatch,
                        }),
                    )
                }
                Err(e) if e.is_singular_point() => continue,
                Err(e) => return (attempt, TrialOutcome::Errored(e.to_string())),
            }
        }
        (
            plan.max_resamples,
            TrialOutcome::Errored(Error::SamplingExhausted(plan.max_resamples + 1).to_string()),
        )
    }

    /// Run every trial (in parallel) and fold the outcomes in trial order.
    pub fn run(&self, n: usize, plan: &SamplePlan, zoo: &Zoo) -> CheckReport {
        let mut report = CheckReport {
            id: self.id.clone(),
            anchor: self.anchor.to_string(),
            n,
            passed: true,
            trials: plan.trials,
            resamples: 0,
            seed: plan.seed,
            counterexample: None,
            error: None,
        };
        if !self.supports(n) {
            report.passed = false;
            report.trials = 0;
            report.error = Some(
                Error::UnsupportedN {
                    family: self.id.clone(),
                    n,
                }
                .to_string(),
            );
            return report;
        }
        let outcomes: Vec<(usize, TrialOutcome)> = (0..plan.trials)
            .into_par_iter()
            .map(|t| self.run_trial(n, plan, zoo, t))
            .collect();
        for (resamples, outcome) in outcomes {
            report.resamples += resamples;
            match outcome {
                TrialOutcome::Held => {}
                TrialOutcome::Failed(c) => {
                    report.passed = false;
                    if report.counterexample.is_none() && report.error.is_none() {
                        report.counterexample = Some(c);
                    }
                }
                TrialOutcome::Errored(e) => {
                    report.passed = false;
                    if report.counterexample.is_none() && report.error.is_none() {
                        report.error = Some(e);
                    }
                }
            }
        }
        report
    }
}
