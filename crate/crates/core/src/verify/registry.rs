//! The table of named checks and suite selection.

use crate::error::{Error, Result};
use crate::zoo::{Family, Zoo};

use super::checks::{self, AybeKind, EquivCase, YbeKind};
use super::{Check, CheckReport, SamplePlan};

/// Every registered check, optional ones included.
pub fn registry() -> Vec<Check> {
    use Family::*;
    let mut v = vec![
        checks::ybe(YbeKind::Quantum, Yang, (2, 4)),
        checks::ybe(YbeKind::Quantum, ElevenVertex, (2, 2)),
        checks::ybe(YbeKind::Quantum, ExplicitAppendix, (2, 4)),
        checks::ybe(YbeKind::Quantum, VertexGauge, (2, 3)),
        checks::ybe(YbeKind::Classical, ClassicalExplicit, (2, 4)),
        checks::cybe_as_printed(ClassicalExplicit, (2, 4)),
        checks::ybe(YbeKind::Dynamical, Dynamical, (2, 3)),
        checks::ybe(YbeKind::SemiDynamical, SemiDynamical, (2, 3)),
        checks::aybe(AybeKind::Vertex, Yang, (2, 3)),
        checks::aybe(AybeKind::Vertex, ElevenVertex, (2, 2)),
        checks::aybe(AybeKind::Vertex, ExplicitAppendix, (2, 4)),
        checks::aybe(AybeKind::Vertex, VertexGauge, (2, 3)),
        checks::aybe(AybeKind::SemiDynamical, SemiDynamical, (2, 3)),
        checks::unitary_skew(Yang, (2, 5)),
        checks::unitary_skew(ElevenVertex, (2, 2)),
        checks::unitary_skew(ExplicitAppendix, (2, 5)),
        checks::unitary_skew(VertexGauge, (2, 4)),
        checks::unitary_skew(Dynamical, (2, 4)),
        checks::unitary_skew(SemiDynamical, (2, 4)),
        checks::dynamical_unitarity_shifted((2, 3)),
        checks::residues(ExplicitAppendix, (2, 4)),
        checks::residues(Yang, (2, 4)),
        checks::residues(ElevenVertex, (2, 2)),
        checks::residues(SemiDynamical, (2, 3)),
        checks::residues(VertexGauge, (2, 3)),
        checks::scaling_limit(),
    ];
    v.extend(EquivCase::ALL.into_iter().map(checks::equiv));
    v.extend([
        checks::gauge_determinant((2, 5)),
        checks::gauge_kernel((2, 5)),
        checks::gauge_derivative((2, 5)),
        checks::q_independence((2, 3)),
        checks::difference_dependence((2, 3)),
        checks::brackets((2, 3)),
        checks::argument_symmetry(ExplicitAppendix, (2, 4)),
        checks::argument_symmetry(Yang, (2, 4)),
        checks::argument_symmetry(VertexGauge, (2, 3)),
        checks::argument_symmetry(SemiDynamical, (2, 4)),
        checks::classical_limit((2, 4)),
        checks::m_coefficient((2, 4)),
        checks::square_identity((2, 4)),
        checks::zero_point((2, 4)),
        checks::lax_trace(VertexGauge, (2, 3)),
        checks::lax_trace(ExplicitAppendix, (2, 3)),
        checks::lax_residue(VertexGauge, (2, 3)),
        checks::o_trace((2, 4)),
    ]);
    v
}

/// Which checks a suite runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    /// Every non-optional check.
    All,
    /// A group (the id prefix before `/`) or a single check id.
    Named(Vec<String>),
}

impl SuiteSelection {
    /// Comma-separated names; `all` selects the default suite.
    pub fn parse(s: &str) -> Self {
        let names: Vec<String> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect();
        if names.is_empty() || names.iter().any(|n| n == "all") {
            SuiteSelection::All
        } else {
            SuiteSelection::Named(names)
        }
    }
}

pub fn select(sel: &SuiteSelection) -> Result<Vec<Check>> {
    let all = registry();
    match sel {
        SuiteSelection::All => Ok(all.into_iter().filter(|c| !c.optional).collect()),
        SuiteSelection::Named(names) => {
            for name in names {
                if !all.iter().any(|c| &c.id == name || c.group() == name) {
                    return Err(Error::UnknownCheck(name.clone()));
                }
            }
            Ok(all
                .into_iter()
                .filter(|c| names.iter().any(|n| &c.id == n || c.group() == n))
                .collect())
        }
    }
}

/// Run the selection for every `N` in `ns` that each check supports.
pub fn run_suite(sel: &SuiteSelection, ns: &[usize], plan: &SamplePlan) -> Result<Vec<CheckReport>> {
    run_suite_with(&Zoo::new(), sel, ns, plan)
}

pub fn run_suite_with(
    zoo: &Zoo,
    sel: &SuiteSelection,
    ns: &[usize],
    plan: &SamplePlan,
) -> Result<Vec<CheckReport>> {
    let checks = select(sel)?;
    let mut out = Vec::new();
    for check in &checks {
        for &n in ns {
            if check.supports(n) {
                out.push(check.run(n, plan, zoo));
            }
        }
    }
    Ok(out)
}

pub fn suite_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let all = registry();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        let len = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), len);
    }

    #[test]
    fn selection_by_group_and_id() {
        let g = select(&SuiteSelection::parse("aybe")).unwrap();
        assert!(g.len() >= 4 && g.iter().all(|c| c.group() == "aybe"));
        let one = select(&SuiteSelection::parse("qybe/yang")).unwrap();
        assert_eq!(one.len(), 1);
        assert!(matches!(
            select(&SuiteSelection::parse("nope")),
            Err(Error::UnknownCheck(_))
        ));
        let all = select(&SuiteSelection::All).unwrap();
        assert!(all.iter().all(|c| !c.optional));
        let printed = select(&SuiteSelection::parse("cybe-as-printed")).unwrap();
        assert_eq!(printed.len(), 1);
    }
}
