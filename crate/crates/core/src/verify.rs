//! Cross-checks of one covering against the brute-force oracle and the
//! structural identities, packaged for the `verify` command.

use serde::{Deserialize, Serialize};

use crate::approx::{induced_partition_matroid, is_closure_operator, OperatorKind};
use crate::bridge::{independent_iff_flat_bound, matroid_from_lattice, SubmodularSystem};
use crate::error::Result;
use crate::lattice::{enumerate_lattice, FlatLattice};
use crate::matroid::{Limits, Matroid};
use crate::oracle::{brute_operator_axioms, brute_reduct_fixpoints, Oracle, OracleBudget};
use crate::reduction::reduct;
use crate::relations::{check_all, Outcome};
use crate::transversal::{ABDecomposition, TransversalMatroid};
use crate::universe::Covering;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn record(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs every applicable check on `c`. Oracle comparisons are skipped (and
/// say so) when `c` exceeds `budget`.
pub fn verify_covering(
    c: &Covering,
    limits: &Limits,
    budget: &OracleBudget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let tm = TransversalMatroid::of_covering(c);
    let lattice = enumerate_lattice(&tm, limits)?;
    let fmt = |x| c.format_set(x);

    match Oracle::new(c.family(), budget) {
        Ok(oracle) => {
            report.record(
                "independence matches oracle",
                c.ground()
                    .subsets()
                    .find(|&x| tm.is_independent(x) != oracle.independent(x))
                    .map(fmt),
            );
            report.record(
                "rank and closure match oracle",
                c.ground()
                    .subsets()
                    .find(|&x| tm.rank(x) != oracle.rank(x) || tm.closure(x) != oracle.closure(x))
                    .map(fmt),
            );
            report.record(
                "flats match oracle",
                (oracle.flats() != lattice.flats()).then(|| "flat families differ".to_string()),
            );
            for kind in OperatorKind::ALL {
                let criterion = is_closure_operator(c, kind).holds;
                let axioms = brute_operator_axioms(c, kind, budget)?;
                report.record(
                    &format!("{kind} criterion matches axioms"),
                    (criterion != axioms.holds())
                        .then(|| format!("criterion says {criterion}; axioms say {:?}", axioms)),
                );
            }
        }
        Err(e) => report.checks.push(CheckResult {
            name: "oracle comparisons".into(),
            passed: true,
            detail: Some(format!("skipped: {e}")),
        }),
    }

    report.record(
        "lattice is geometric",
        lattice.is_geometric().violation.map(|v| format!("{v:?}")),
    );
    let predicted = ABDecomposition::of(c).predicted_atoms();
    report.record(
        "atoms match A/B decomposition",
        (lattice.atoms() != predicted).then(|| "atom sets differ".to_string()),
    );
    report.record("modular atoms", modularity_failure(c, &tm, &lattice)?);

    let round_trip = matroid_from_lattice(SubmodularSystem::from_lattice(&lattice, &tm)?);
    report.record(
        "lattice round trip recovers the matroid",
        c.ground()
            .subsets()
            .find(|&x| {
                round_trip.is_independent(x) != tm.is_independent(x)
                    || round_trip.rank(x) != tm.rank(x)
                    || independent_iff_flat_bound(&tm, &lattice, x) != tm.is_independent(x)
            })
            .map(fmt),
    );
    for kind in OperatorKind::ALL {
        if let Ok(pm) = induced_partition_matroid(c, kind) {
            let l = enumerate_lattice(&pm, limits)?;
            let rt = matroid_from_lattice(SubmodularSystem::from_lattice(&l, &pm)?);
            report.record(
                &format!("{kind} lattice round trip"),
                c.ground()
                    .subsets()
                    .find(|&x| {
                        rt.is_independent(x) != pm.is_independent(x) || rt.rank(x) != pm.rank(x)
                    })
                    .map(fmt),
            );
            report.record(
                &format!("{kind} lattice joins are unions"),
                flat_pairs(&l).find_map(|(x, y)| match l.join(x, y) {
                    Ok(j) if j == x | y => None,
                    _ => Some(format!("{} ∨ {}", fmt(x), fmt(y))),
                }),
            );
        }
    }

    if c.len() <= 12 {
        let ends = brute_reduct_fixpoints(c);
        let mut ours = reduct(c)?.blocks().to_vec();
        ours.sort();
        report.record(
            "reduct is order independent",
            (ends.len() != 1 || !ends.contains(&ours))
                .then(|| format!("{} distinct end states", ends.len())),
        );
    }

    let relations = check_all(c, limits)?;
    for v in &relations.claims {
        if let Outcome::Violated { witness } = &v.outcome {
            report.record(&v.claim, Some(witness.clone()));
        }
    }
    report.record(
        "structure relations",
        (!relations.all_hold()).then(|| "see violated claims above".to_string()),
    );
    Ok(report)
}

fn flat_pairs(
    l: &FlatLattice,
) -> impl Iterator<Item = (crate::ElementSet, crate::ElementSet)> + '_ {
    l.flats()
        .iter()
        .flat_map(move |&x| l.flats().iter().map(move |&y| (x, y)))
}

/// Every atom is a modular element, and for every pair of flats the rank and
/// height forms of the modular-pair test agree.
fn modularity_failure(
    c: &Covering,
    tm: &TransversalMatroid,
    l: &FlatLattice,
) -> Result<Option<String>> {
    for a in l.atoms() {
        if !l.is_modular_element(tm, a)? {
            return Ok(Some(format!("atom {} is not modular", c.format_set(a))));
        }
    }
    for (x, y) in flat_pairs(l) {
        if l.is_modular_pair(tm, x, y)? != l.is_modular_pair_height(x, y)? {
            return Ok(Some(format!(
                "rank and height tests disagree on {}, {}",
                c.format_set(x),
                c.format_set(y)
            )));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_coverings_pass() {
        for (u, blocks) in [
            (
                &["1", "2", "3", "4", "5"][..],
                &[&["1", "2"][..], &["1", "3"], &["2", "3"], &["4", "5"]][..],
            ),
            (
                &["1", "2", "3"],
                &[&["1", "2"], &["1", "3"], &["1", "2", "3"]],
            ),
            (
                &["1", "2", "3"],
                &[&["1"], &["1", "2"], &["2", "3"], &["3"]],
            ),
        ] {
            let c = Covering::from_labels(u, blocks).unwrap();
            let r = verify_covering(&c, &Limits::default(), &OracleBudget::default()).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
