//! Executable checks relating the transversal matroid of a covering to the
//! partition matroids induced by `SH`, `XH` and `VH`.
//!
//! Each claim is gated on its own precondition. A claim whose precondition
//! fails is reported as inapplicable and carries no verdict. Statements that
//! are only known to fail sometimes (for instance, that deleting a reducible
//! block can break `SH`) are recorded as observations, never as violations.

use serde::{Deserialize, Serialize};

use crate::approx::{
    equ_condition, forms_partition, induced_partition_matroid, tra_condition, NeighborhoodTable,
    OperatorKind,
};
use crate::error::Result;
use crate::lattice::enumerate_lattice;
use crate::matroid::{Limits, Matroid};
use crate::partition_matroid::PartitionMatroid;
use crate::reduction::{exclusion, immured_blocks, reducible_blocks, reduct};
use crate::transversal::TransversalMatroid;
use crate::universe::{Covering, SetFamily};
use crate::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Violated {
        witness: String,
    },
    Inapplicable {
        precondition: String,
    },
    /// Reported, not asserted.
    Observation {
        broken: bool,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub claims: Vec<ClaimVerdict>,
}

impl RelationReport {
    fn push(&mut self, claim: impl Into<String>, outcome: Outcome) {
        self.claims.push(ClaimVerdict {
            claim: claim.into(),
            outcome,
        });
    }

    fn check(&mut self, claim: impl Into<String>, counterexample: Option<String>) {
        let outcome = match counterexample {
            None => Outcome::Holds,
            Some(witness) => Outcome::Violated { witness },
        };
        self.push(claim, outcome);
    }

    fn inapplicable(&mut self, claim: impl Into<String>, precondition: &str) {
        self.push(
            claim,
            Outcome::Inapplicable {
                precondition: precondition.to_string(),
            },
        );
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.claims.extend(other.claims);
    }

    pub fn violations(&self) -> impl Iterator<Item = &ClaimVerdict> {
        self.claims
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Violated { .. }))
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    /// Claims whose precondition held and which therefore carry a verdict.
    pub fn applicable(&self) -> impl Iterator<Item = &ClaimVerdict> {
        self.claims
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Holds | Outcome::Violated { .. }))
    }

    pub fn get(&self, claim: &str) -> Option<&Outcome> {
        self.claims
            .iter()
            .find(|c| c.claim == claim)
            .map(|c| &c.outcome)
    }
}

/// First subset of the ground set of `f` failing `pred`, rendered with labels.
fn first_failure(
    f: &SetFamily,
    limits: &Limits,
    pred: impl Fn(ElementSet) -> bool,
) -> Result<Option<String>> {
    limits.check_enumeration(f.n())?;
    Ok(f.ground()
        .subsets()
        .find(|&x| !pred(x))
        .map(|x| f.format_set(x)))
}

fn first_separating(f: &SetFamily, pred: impl Fn(ElementSet) -> bool) -> Option<ElementSet> {
    let mut all: Vec<ElementSet> = f.ground().subsets().collect();
    all.sort();
    all.into_iter().find(|&x| pred(x))
}

/// Flats of `inner` that are not flats of `outer`, the first one rendered.
fn first_non_flat<M: Matroid>(f: &SetFamily, flats: &[ElementSet], outer: &M) -> Option<String> {
    flats
        .iter()
        .find(|&&x| !outer.is_flat(x))
        .map(|&x| f.format_set(x))
}

fn same_flats(f: &SetFamily, a: &[ElementSet], b: &[ElementSet]) -> Option<String> {
    if a == b {
        return None;
    }
    let diff = a
        .iter()
        .find(|x| !b.contains(x))
        .or_else(|| b.iter().find(|x| !a.contains(x)))
        .copied()
        .unwrap_or(ElementSet::EMPTY);
    Some(format!("flat families differ at {}", f.format_set(diff)))
}

/// Containments and equalities between `I(C)`, `L(M(C))` and the induced
/// partition structures.
pub fn check_containments(c: &Covering, limits: &Limits) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let tm = TransversalMatroid::of_covering(c);
    let table = NeighborhoodTable::new(c);
    let sh = induced_partition_matroid(c, OperatorKind::SH).ok();
    let xh = induced_partition_matroid(c, OperatorKind::XH).ok();
    let vh = induced_partition_matroid(c, OperatorKind::VH).ok();

    report.check(
        "tra-condition-matches-sh-criterion",
        (tra_condition(c) != forms_partition(&table.class_sets(OperatorKind::SH)))
            .then(|| "TRA and the I(x) partition test disagree".to_string()),
    );
    if equ_condition(c) {
        report.check(
            "equ-implies-neighbourhood-partition",
            (!forms_partition(&table.class_sets(OperatorKind::XH)))
                .then(|| "EQU holds but {N(x)} is not a partition".to_string()),
        );
    } else {
        report.inapplicable("equ-implies-neighbourhood-partition", "EQU condition");
    }

    match &sh {
        Some(sh) => {
            report.check(
                "sh-independent-sets-are-transversal",
                first_failure(c, limits, |x| !sh.is_independent(x) || tm.is_independent(x))?,
            );
            let l_sh = enumerate_lattice(sh, limits)?;
            report.check(
                "sh-flats-are-transversal-flats",
                first_non_flat(c, l_sh.flats(), &tm),
            );
            report.check(
                "indiscernible-neighbourhoods-are-transversal-flats",
                (0..c.n())
                    .find(|&x| !tm.is_flat(table.indiscernible(x)))
                    .map(|x| {
                        format!(
                            "I({}) = {}",
                            c.universe().label(x),
                            c.format_set(table.indiscernible(x))
                        )
                    }),
            );
        }
        None => {
            for claim in [
                "sh-independent-sets-are-transversal",
                "sh-flats-are-transversal-flats",
                "indiscernible-neighbourhoods-are-transversal-flats",
            ] {
                report.inapplicable(claim, "SH is a closure operator");
            }
        }
    }

    match &xh {
        Some(xh_m) => {
            report.check(
                "xh-equals-vh",
                first_failure(c, limits, |x| {
                    table.apply(OperatorKind::XH, x) == table.apply(OperatorKind::VH, x)
                })?,
            );
            report.check(
                "xh-and-vh-induce-the-same-matroid",
                match &vh {
                    Some(vh_m) if vh_m == xh_m => None,
                    Some(_) => Some("class families differ".into()),
                    None => Some("VH is not a closure operator".into()),
                },
            );
            let in_xh_only =
                first_separating(c, |x| xh_m.is_independent(x) && !tm.is_independent(x));
            let in_tm_only =
                first_separating(c, |x| tm.is_independent(x) && !xh_m.is_independent(x));
            report.push(
                "xh-and-transversal-independence-separated",
                Outcome::Observation {
                    broken: in_xh_only.is_some() && in_tm_only.is_some(),
                    detail: format!(
                        "only XH-independent: {}; only transversal-independent: {}",
                        in_xh_only.map_or("none".into(), |x| c.format_set(x)),
                        in_tm_only.map_or("none".into(), |x| c.format_set(x)),
                    ),
                },
            );
        }
        None => {
            for claim in ["xh-equals-vh", "xh-and-vh-induce-the-same-matroid"] {
                report.inapplicable(claim, "XH is a closure operator");
            }
        }
    }

    match (&sh, &xh) {
        (Some(sh), Some(xh)) => report.check(
            "sh-independent-sets-are-xh-independent",
            first_failure(c, limits, |x| !sh.is_independent(x) || xh.is_independent(x))?,
        ),
        _ => report.inapplicable(
            "sh-independent-sets-are-xh-independent",
            "SH and XH are closure operators",
        ),
    }

    if c.is_partition() {
        let induced: Vec<PartitionMatroid> = [&sh, &xh, &vh]
            .iter()
            .filter_map(|m| (*m).clone())
            .collect();
        if induced.len() != 3 {
            report.check(
                "partition-structures-coincide",
                Some("an operator is not a closure operator on a partition".into()),
            );
        } else {
            report.check(
                "partition-independent-sets-coincide",
                first_failure(c, limits, |x| {
                    induced
                        .iter()
                        .all(|m| m.is_independent(x) == tm.is_independent(x))
                })?,
            );
            let l_tm = enumerate_lattice(&tm, limits)?;
            let mut flat_mismatch = None;
            for m in &induced {
                let l = enumerate_lattice(m, limits)?;
                flat_mismatch = flat_mismatch.or_else(|| same_flats(c, l.flats(), l_tm.flats()));
            }
            report.check("partition-flats-coincide", flat_mismatch);
        }
    } else {
        for claim in [
            "partition-independent-sets-coincide",
            "partition-flats-coincide",
        ] {
            report.inapplicable(claim, "the covering is a partition");
        }
    }
    Ok(report)
}

/// `I(F − K) ⊆ I(F)` and `L(M(F − K)) ⊆ L(M(F))` for block `k`, plus the
/// same containments for the reduct and exclusion when `f` is a covering.
pub fn check_deletion_monotonicity(
    f: &SetFamily,
    k: usize,
    limits: &Limits,
) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    if f.len() < 2 {
        report.inapplicable("deletion-keeps-independence", "at least two blocks");
        report.inapplicable("deletion-keeps-flats", "at least two blocks");
        return Ok(report);
    }
    let whole = TransversalMatroid::new(f.clone());
    let smaller = f.without_block(k)?;
    subfamily_containment(&mut report, "deletion", f, &whole, &smaller, limits)?;

    if let Ok(c) = Covering::new(f.clone()) {
        let r = reduct(&c)?;
        subfamily_containment(&mut report, "reduct", f, &whole, r.family(), limits)?;
        let e = exclusion(&c)?;
        subfamily_containment(&mut report, "exclusion", f, &whole, e.family(), limits)?;
    } else {
        for prefix in ["reduct", "exclusion"] {
            report.inapplicable(
                format!("{prefix}-keeps-independence"),
                "the family is a covering",
            );
            report.inapplicable(format!("{prefix}-keeps-flats"), "the family is a covering");
        }
    }
    Ok(report)
}

fn subfamily_containment(
    report: &mut RelationReport,
    prefix: &str,
    f: &SetFamily,
    whole: &TransversalMatroid,
    sub: &SetFamily,
    limits: &Limits,
) -> Result<()> {
    let part = TransversalMatroid::new(sub.clone());
    report.check(
        format!("{prefix}-keeps-independence"),
        first_failure(f, limits, |x| {
            !part.is_independent(x) || whole.is_independent(x)
        })?,
    );
    let l = enumerate_lattice(&part, limits)?;
    report.check(
        format!("{prefix}-keeps-flats"),
        first_non_flat(f, l.flats(), whole),
    );
    Ok(())
}

/// Whether removing immured or reducible blocks preserves each operator's
/// closure status and induced matroid.
pub fn check_reduction_preservation(c: &Covering) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let table = NeighborhoodTable::new(c);
    let induced = |cov: &Covering, kind| induced_partition_matroid(cov, kind).ok();
    let label = |k: usize| c.name(k);

    for k in immured_blocks(c) {
        let rest = c.without_block(k)?;
        let rest_table = NeighborhoodTable::new(&rest);
        report.check(
            format!(
                "removing-immured-{}-keeps-indiscernible-neighbourhoods",
                label(k)
            ),
            (0..c.n())
                .find(|&x| table.indiscernible(x) != rest_table.indiscernible(x))
                .map(|x| format!("I({}) changes", c.universe().label(x))),
        );
        match induced(c, OperatorKind::SH) {
            Some(before) => report.check(
                format!("removing-immured-{}-keeps-sh", label(k)),
                preserved(&before, induced(&rest, OperatorKind::SH)),
            ),
            None => report.inapplicable(
                format!("removing-immured-{}-keeps-sh", label(k)),
                "SH is a closure operator",
            ),
        }
        for kind in [OperatorKind::XH, OperatorKind::VH] {
            if induced(c, kind).is_some() {
                let broken = induced(&rest, kind).is_none();
                report.push(
                    format!(
                        "removing-immured-{}-may-break-{}",
                        label(k),
                        kind.name().to_lowercase()
                    ),
                    Outcome::Observation {
                        broken,
                        detail: format!(
                            "{kind} {} a closure operator afterwards",
                            if broken { "is not" } else { "is still" }
                        ),
                    },
                );
            }
        }
    }

    for k in reducible_blocks(c) {
        let rest = c.without_block(k)?;
        let rest_table = NeighborhoodTable::new(&rest);
        report.check(
            format!("removing-reducible-{}-keeps-neighbourhoods", label(k)),
            (0..c.n())
                .find(|&x| table.neighborhood(x) != rest_table.neighborhood(x))
                .map(|x| format!("N({}) changes", c.universe().label(x))),
        );
        for kind in [OperatorKind::XH, OperatorKind::VH] {
            let claim = format!(
                "removing-reducible-{}-keeps-{}",
                label(k),
                kind.name().to_lowercase()
            );
            match induced(c, kind) {
                Some(before) => report.check(claim, preserved(&before, induced(&rest, kind))),
                None => report.inapplicable(claim, &format!("{kind} is a closure operator")),
            }
        }
        if induced(c, OperatorKind::SH).is_some() {
            let broken = induced(&rest, OperatorKind::SH).is_none();
            report.push(
                format!("removing-reducible-{}-may-break-sh", label(k)),
                Outcome::Observation {
                    broken,
                    detail: format!(
                        "SH {} a closure operator afterwards",
                        if broken { "is not" } else { "is still" }
                    ),
                },
            );
        }
    }

    let ex = exclusion(c)?;
    match induced(c, OperatorKind::SH) {
        Some(before) => report.check(
            "exclusion-keeps-sh",
            preserved(&before, induced(&ex, OperatorKind::SH)),
        ),
        None => report.inapplicable("exclusion-keeps-sh", "SH is a closure operator"),
    }
    let red = reduct(c)?;
    for kind in [OperatorKind::XH, OperatorKind::VH] {
        let claim = format!("reduct-keeps-{}", kind.name().to_lowercase());
        match induced(c, kind) {
            Some(before) => report.check(claim, preserved(&before, induced(&red, kind))),
            None => report.inapplicable(claim, &format!("{kind} is a closure operator")),
        }
    }

    if ex.is_partition() {
        report.check(
            "partition-exclusion-gives-indiscernible-partition",
            (!forms_partition(&table.class_sets(OperatorKind::SH)))
                .then(|| "{I(x)} is not a partition".into()),
        );
    } else {
        report.inapplicable(
            "partition-exclusion-gives-indiscernible-partition",
            "the exclusion is a partition",
        );
    }
    if red.is_partition() {
        report.check(
            "partition-reduct-gives-neighbourhood-partition",
            (!forms_partition(&table.class_sets(OperatorKind::XH)))
                .then(|| "{N(x)} is not a partition".into()),
        );
    } else {
        report.inapplicable(
            "partition-reduct-gives-neighbourhood-partition",
            "the reduct is a partition",
        );
    }
    Ok(report)
}

/// Same classes means the same independent sets and the same flats.
fn preserved(before: &PartitionMatroid, after: Option<PartitionMatroid>) -> Option<String> {
    match after {
        None => Some("no longer a closure operator".into()),
        Some(a) if a.classes() == before.classes() => None,
        Some(_) => Some("induced classes changed".into()),
    }
}

/// Every check above, once per block for the deletion suite.
pub fn check_all(c: &Covering, limits: &Limits) -> Result<RelationReport> {
    let mut report = check_containments(c, limits)?;
    for k in 0..c.len() {
        let mut deletion = check_deletion_monotonicity(c.family(), k, limits)?;
        for v in &mut deletion.claims {
            v.claim = format!("{}: {}", c.name(k), v.claim);
        }
        report.extend(deletion);
    }
    report.extend(check_reduction_preservation(c)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cov(u: &[&str], blocks: &[&[&str]]) -> Covering {
        Covering::from_labels(u, blocks).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn two_component_containments() {
        let c = cov(
            &["1", "2", "3", "4", "5"],
            &[&["1", "2"], &["1", "3"], &["2", "3"], &["4", "5"]],
        );
        let r = check_containments(&c, &limits()).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(
            r.get("sh-flats-are-transversal-flats"),
            Some(&Outcome::Holds)
        );
        assert_eq!(
            r.get("sh-independent-sets-are-xh-independent"),
            Some(&Outcome::Holds)
        );
        assert!(matches!(
            r.get("partition-flats-coincide"),
            Some(Outcome::Inapplicable { .. })
        ));
    }

    #[test]
    fn nine_elements_separate_both_ways() {
        let c = cov(
            &["a", "b", "c", "d", "e", "f", "g", "h", "i"],
            &[
                &["a", "b", "i"],
                &["a", "b", "c", "d", "e", "f"],
                &["f", "g", "h"],
                &["c", "d", "e", "g", "h", "i"],
            ],
        );
        let r = check_containments(&c, &limits()).unwrap();
        assert!(r.all_hold());
        assert!(matches!(
            r.get("xh-and-transversal-independence-separated"),
            Some(Outcome::Observation { broken: true, .. })
        ));
    }

    #[test]
    fn partition_structures_coincide() {
        let c = cov(&["a", "b", "c", "d"], &[&["a", "b"], &["c"], &["d"]]);
        let r = check_containments(&c, &limits()).unwrap();
        assert_eq!(
            r.get("partition-independent-sets-coincide"),
            Some(&Outcome::Holds)
        );
        assert_eq!(r.get("partition-flats-coincide"), Some(&Outcome::Holds));
    }

    #[test]
    fn deleting_a_block_from_three_blocks() {
        let f =
            SetFamily::from_labels(&["1", "2", "3"], &[&["1", "2"], &["1", "3"], &["3"]]).unwrap();
        let r = check_deletion_monotonicity(&f, 2, &limits()).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.get("deletion-keeps-flats"), Some(&Outcome::Holds));

        let one = SetFamily::from_labels(&["1"], &[&["1"]]).unwrap();
        let r = check_deletion_monotonicity(&one, 0, &limits()).unwrap();
        assert_eq!(r.applicable().count(), 0);
    }

    #[test]
    fn breakage_is_observed_not_asserted() {
        let c = cov(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"], &["1", "2", "3"]],
        );
        let r = check_reduction_preservation(&c).unwrap();
        assert!(r.all_hold());
        assert!(matches!(
            r.get("removing-reducible-K3-may-break-sh"),
            Some(Outcome::Observation { broken: true, .. })
        ));

        let c1 = cov(
            &["1", "2", "3"],
            &[&["1"], &["1", "2"], &["2", "3"], &["3"]],
        );
        let r = check_reduction_preservation(&c1).unwrap();
        assert!(r.all_hold());
        assert!(matches!(
            r.get("removing-immured-K1-may-break-xh"),
            Some(Outcome::Observation { broken: true, .. })
        ));

        let c2 = cov(
            &["1", "2", "3"],
            &[&["1"], &["1", "2"], &["2", "3"], &["1", "2", "3"]],
        );
        let r = check_reduction_preservation(&c2).unwrap();
        assert!(r.all_hold());
        assert!(matches!(
            r.get("removing-immured-K1-may-break-vh"),
            Some(Outcome::Observation { broken: true, .. })
        ));
    }

    #[test]
    fn report_round_trips_through_json() {
        let c = cov(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"], &["1", "2", "3"]],
        );
        let r = check_all(&c, &limits()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RelationReport>(&json).unwrap(), r);
    }
}
