//! Serializable reports. Sets are rendered as label lists so the JSON is
//! readable without the universe at hand.

use std::fmt::Write as _;

use covmat::matroid::{loops_and_parallel_classes, Limits};
use covmat::{
    enumerate_lattice, equ_condition, immured_blocks, is_closure_operator, neighborhood_table,
    reducible_blocks, tra_condition, ABDecomposition, Covering, ElementSet, Error, Matroid,
    OperatorKind, PartitionMatroid, SetFamily, TransversalMatroid, Witness,
};
use serde::{Deserialize, Serialize};

pub type Labels = Vec<String>;

pub fn labels(f: &SetFamily, x: ElementSet) -> Labels {
    f.universe()
        .labels_of(x)
        .into_iter()
        .map(String::from)
        .collect()
}

fn label_sets(f: &SetFamily, xs: &[ElementSet]) -> Vec<Labels> {
    xs.iter().map(|&x| labels(f, x)).collect()
}

fn braces(l: &[String]) -> String {
    format!("{{{}}}", l.join(", "))
}

fn words(ws: &[String]) -> String {
    if ws.is_empty() {
        "none".into()
    } else {
        ws.join(" ")
    }
}

fn brace_list(ls: &[Labels]) -> String {
    if ls.is_empty() {
        return "none".into();
    }
    ls.iter().map(|l| braces(l)).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringSummary {
    pub n: usize,
    pub m: usize,
    pub is_partition: bool,
    pub blocks: Vec<NamedSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub name: String,
    pub members: Labels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodRow {
    pub element: String,
    pub indiscernible: Labels,
    pub neighborhood: Labels,
    pub minimal_description: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub operator: OperatorKind,
    /// Whether the operator's class sets partition the universe.
    pub closure_operator: bool,
    pub classes: Vec<Labels>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbStats {
    pub a_parts: Vec<NamedSet>,
    pub b: Labels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidStats {
    pub kind: String,
    pub rank: usize,
    pub base_count: u64,
    pub circuits: Vec<Labels>,
    pub loops: Labels,
    pub parallel_classes: Vec<Labels>,
    pub simple: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Labels>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ab_decomposition: Option<AbStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeStats {
    pub flats: usize,
    pub rank: usize,
    pub atoms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub covering: CoveringSummary,
    pub neighborhoods: Vec<NeighborhoodRow>,
    pub tra: bool,
    pub equ: bool,
    pub operators: Vec<OperatorReport>,
    pub reducible: Vec<String>,
    pub immured: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeStats>,
    /// Why matroid or lattice stats are missing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

pub fn describe_witness(f: &SetFamily, w: &Witness) -> String {
    match w {
        Witness::Idempotence {
            set,
            image,
            image_of_image,
        } => format!(
            "H({}) = {} but H({}) = {}",
            f.format_set(*set),
            f.format_set(*image),
            f.format_set(*image),
            f.format_set(*image_of_image)
        ),
        Witness::Exchange { set, x, y } => {
            let (lx, ly) = (f.universe().label(*x), f.universe().label(*y));
            format!(
                "{ly} ∈ H({} + {lx}) − H({0}) but {lx} ∉ H({0} + {ly})",
                f.format_set(*set)
            )
        }
    }
}

pub fn transversal_stats(
    f: &SetFamily,
    c: Option<&Covering>,
    limits: &Limits,
) -> Result<MatroidStats, Error> {
    let m = TransversalMatroid::new(f.clone());
    let base_count = m.bases(limits)?.len() as u64;
    let circuits = m.circuits(limits)?;
    let (loops, parallel) = m.loops_and_parallel_classes();
    Ok(MatroidStats {
        kind: "transversal".into(),
        rank: m.rank(f.ground()),
        base_count,
        circuits: label_sets(f, &circuits),
        loops: labels(f, loops),
        parallel_classes: label_sets(f, &parallel),
        simple: m.is_simple(),
        classes: None,
        ab_decomposition: c.map(|c| {
            let ab = ABDecomposition::of(c);
            AbStats {
                a_parts: ab
                    .a_parts
                    .iter()
                    .map(|&(i, a)| NamedSet {
                        name: c.name(i),
                        members: labels(f, a),
                    })
                    .collect(),
                b: labels(f, ab.b_part),
            }
        }),
    })
}

pub fn partition_stats(c: &Covering, kind: OperatorKind, pm: &PartitionMatroid) -> MatroidStats {
    let (loops, parallel) = loops_and_parallel_classes(pm);
    MatroidStats {
        kind: kind.name().to_lowercase(),
        rank: pm.rank(c.ground()),
        base_count: pm.base_count(),
        circuits: label_sets(c, &pm.circuits()),
        loops: labels(c, loops),
        parallel_classes: label_sets(c, &parallel),
        simple: loops.is_empty() && parallel.is_empty(),
        classes: Some(label_sets(c, pm.classes())),
        ab_decomposition: None,
    }
}

impl AnalysisReport {
    pub fn new(c: &Covering, limits: &Limits) -> Self {
        let t = neighborhood_table(c);
        let u = c.universe();
        let neighborhoods = (0..c.n())
            .map(|x| NeighborhoodRow {
                element: u.label(x).to_string(),
                indiscernible: labels(c, t.indiscernible(x)),
                neighborhood: labels(c, t.neighborhood(x)),
                minimal_description: t
                    .minimal_description(x)
                    .iter()
                    .map(|&k| c.name(k))
                    .collect(),
            })
            .collect();
        let operators = OperatorKind::ALL
            .iter()
            .map(|&kind| {
                let v = is_closure_operator(c, kind);
                OperatorReport {
                    operator: kind,
                    closure_operator: v.holds,
                    classes: label_sets(c, &v.classes),
                    witness: v.witness.as_ref().map(|w| describe_witness(c, w)),
                }
            })
            .collect();
        let names = |ks: Vec<usize>| ks.into_iter().map(|k| c.name(k)).collect();
        let mut skipped = Vec::new();
        let matroid = transversal_stats(c, Some(c), limits)
            .map_err(|e| skipped.push(format!("matroid stats: {e}")))
            .ok();
        let lattice = enumerate_lattice(&TransversalMatroid::of_covering(c), limits)
            .map(|l| LatticeStats {
                flats: l.len(),
                rank: l.heights().iter().copied().max().unwrap_or(0),
                atoms: l.atoms().len(),
            })
            .map_err(|e| skipped.push(format!("lattice stats: {e}")))
            .ok();
        AnalysisReport {
            covering: CoveringSummary {
                n: c.n(),
                m: c.len(),
                is_partition: c.is_partition(),
                blocks: (0..c.len())
                    .map(|k| NamedSet {
                        name: c.name(k),
                        members: labels(c, c.block(k)),
                    })
                    .collect(),
            },
            neighborhoods,
            tra: tra_condition(c),
            equ: equ_condition(c),
            operators,
            reducible: names(reducible_blocks(c)),
            immured: names(immured_blocks(c)),
            matroid,
            lattice,
            skipped,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.covering;
        let _ = writeln!(out, "elements: {}", c.n);
        let _ = writeln!(out, "blocks: {}", c.m);
        for b in &c.blocks {
            let _ = writeln!(out, "  {}: {}", b.name, braces(&b.members));
        }
        let _ = writeln!(out, "partition: {}", c.is_partition);
        let _ = writeln!(out, "neighborhoods:");
        for r in &self.neighborhoods {
            let _ = writeln!(
                out,
                "  {}: I = {}  N = {}  Md = {}",
                r.element,
                braces(&r.indiscernible),
                braces(&r.neighborhood),
                r.minimal_description.join(" ")
            );
        }
        let _ = writeln!(out, "TRA: {}", self.tra);
        let _ = writeln!(out, "EQU: {}", self.equ);
        for o in &self.operators {
            let _ = writeln!(
                out,
                "{} closure operator: {}  classes: {}",
                o.operator,
                o.closure_operator,
                brace_list(&o.classes)
            );
            if let Some(w) = &o.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        let _ = writeln!(out, "reducible: {}", words(&self.reducible));
        let _ = writeln!(out, "immured: {}", words(&self.immured));
        if let Some(m) = &self.matroid {
            out.push_str(&m.to_text());
        }
        if let Some(l) = &self.lattice {
            let _ = writeln!(
                out,
                "lattice: {} flats, rank {}, {} atoms",
                l.flats, l.rank, l.atoms
            );
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped {s}");
        }
        out
    }
}

impl MatroidStats {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "matroid: {}", self.kind);
        let _ = writeln!(out, "  rank: {}", self.rank);
        let _ = writeln!(out, "  bases: {}", self.base_count);
        let _ = writeln!(out, "  circuits: {}", brace_list(&self.circuits));
        let _ = writeln!(out, "  loops: {}", braces(&self.loops));
        let _ = writeln!(
            out,
            "  parallel classes: {}",
            brace_list(&self.parallel_classes)
        );
        let _ = writeln!(out, "  simple: {}", self.simple);
        if let Some(cls) = &self.classes {
            let _ = writeln!(out, "  classes: {}", brace_list(cls));
        }
        if let Some(ab) = &self.ab_decomposition {
            for a in &ab.a_parts {
                let _ = writeln!(out, "  A[{}]: {}", a.name, braces(&a.members));
            }
            let _ = writeln!(out, "  B: {}", braces(&ab.b));
        }
        out
    }
}
