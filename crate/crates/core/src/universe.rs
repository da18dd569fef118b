//! Universes, indexed set families, coverings and partitions.
//!
//! Elements are opaque labels mapped to dense indices when a family is
//! parsed; everything downstream works on [`ElementSet`] bit masks.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! universe: 1 2 3 4 5
//! block: 1 2
//! block K4: 4 5
//! ```
//!
//! A JSON object `{"universe": [...], "blocks": [[...], ...]}` is accepted
//! anywhere the text format is.

use std::fmt::Write as _;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// The ground set `E`, as an ordered list of distinct labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(parse_err(0, "universe is empty"));
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::UniverseTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(parse_err(0, format!("invalid element label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(parse_err(
                    0,
                    format!("element `{l}` listed twice in universe"),
                ));
            }
        }
        Ok(Universe { labels })
    }

    /// `{0, .., n-1}` labelled by the decimal strings `"1"`..`"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels.iter().try_fold(ElementSet::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownElement(l.to_string()))
        })
    }

    /// Parses a whitespace-separated list of labels.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        self.set_of(&toks)
    }

    pub fn labels_of(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// `{a, b, c}` with members in universe order.
    pub fn format_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(", "))
    }
}

/// An indexed family `F_1, .., F_m` of nonempty subsets of a universe.
///
/// Duplicates are kept: a family is indexed, so two equal blocks still
/// contribute two representatives to a transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Arc<Universe>,
    blocks: Vec<ElementSet>,
    names: Vec<Option<String>>,
}

impl SetFamily {
    pub fn new(universe: Arc<Universe>, blocks: Vec<ElementSet>) -> Result<Self> {
        let names = vec![None; blocks.len()];
        SetFamily::with_names(universe, blocks, names)
    }

    pub fn with_names(
        universe: Arc<Universe>,
        blocks: Vec<ElementSet>,
        names: Vec<Option<String>>,
    ) -> Result<Self> {
        assert_eq!(blocks.len(), names.len());
        let full = universe.full();
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(parse_err(0, format!("block {} is empty", i + 1)));
            }
            if !b.is_subset(full) {
                return Err(parse_err(0, format!("block {} leaves the universe", i + 1)));
            }
        }
        Ok(SetFamily {
            universe,
            blocks,
            names,
        })
    }

    /// Builds a family from label lists.
    ///
    /// ```
    /// use covmat::SetFamily;
    /// let f = SetFamily::from_labels(&["1", "2", "3", "4"], &[&["2", "3"], &["4"], &["2", "4"]]).unwrap();
    /// assert_eq!(f.len(), 3);
    /// ```
    pub fn from_labels(universe: &[&str], blocks: &[&[&str]]) -> Result<Self> {
        let u = Arc::new(Universe::new(universe.iter().copied())?);
        let sets = blocks
            .iter()
            .map(|b| u.set_of(b))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(u, sets)
    }

    /// Parses the text format, or JSON when the input starts with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            SetFamily::from_json(text)
        } else {
            SetFamily::parse_text(text)
        }
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut universe: Option<Arc<Universe>> = None;
        let mut blocks = Vec::new();
        let mut names = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((head, body)) = line.split_once(':') else {
                return Err(parse_err(
                    lineno,
                    format!("expected `universe:` or `block:`, got `{line}`"),
                ));
            };
            let head = head.trim();
            let toks: Vec<&str> = body.split_whitespace().collect();

            if head == "universe" {
                if universe.is_some() {
                    return Err(parse_err(lineno, "second `universe:` line"));
                }
                let u = Universe::new(toks.iter().copied()).map_err(|e| match e {
                    Error::Parse { message, .. } => parse_err(lineno, message),
                    other => other,
                })?;
                universe = Some(Arc::new(u));
                continue;
            }

            let name = match head.strip_prefix("block") {
                Some("") => None,
                Some(rest) if rest.starts_with(char::is_whitespace) => {
                    Some(rest.trim().to_string())
                }
                _ => return Err(parse_err(lineno, format!("unknown directive `{head}`"))),
            };
            let Some(u) = universe.as_ref() else {
                return Err(parse_err(lineno, "`block:` before `universe:`"));
            };
            if toks.is_empty() {
                return Err(parse_err(lineno, "empty block"));
            }
            let mut set = ElementSet::EMPTY;
            for t in &toks {
                let i = u.index_of(t).ok_or_else(|| {
                    parse_err(lineno, format!("element `{t}` is not in the universe"))
                })?;
                if set.contains(i) {
                    return Err(parse_err(
                        lineno,
                        format!("element `{t}` repeated in block"),
                    ));
                }
                set = set.with(i);
            }
            blocks.push(set);
            names.push(name);
        }

        let universe = universe.ok_or_else(|| parse_err(0, "missing `universe:` line"))?;
        if blocks.is_empty() {
            return Err(parse_err(0, "no `block:` lines"));
        }
        SetFamily::with_names(universe, blocks, names)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        doc.into_family()
    }

    /// Renders the text format; [`SetFamily::parse`] reads it back.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "universe: {}", self.universe.labels().join(" "));
        for (i, b) in self.blocks.iter().enumerate() {
            let members = self.universe.labels_of(*b).join(" ");
            match &self.names[i] {
                Some(n) => {
                    let _ = writeln!(out, "block {n}: {members}");
                }
                None => {
                    let _ = writeln!(out, "block: {members}");
                }
            }
        }
        out
    }

    pub fn to_doc(&self) -> FamilyDoc {
        FamilyDoc {
            universe: self.universe.labels().to_vec(),
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    self.universe
                        .labels_of(*b)
                        .into_iter()
                        .map(String::from)
                        .collect()
                })
                .collect(),
            names: self
                .names
                .iter()
                .any(Option::is_some)
                .then(|| (0..self.len()).map(|i| self.name(i)).collect()),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Number of elements, `|E|`.
    pub fn n(&self) -> usize {
        self.universe.len()
    }

    /// Number of blocks, `m`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> ElementSet {
        self.blocks[i]
    }

    /// Report name of block `i`: the name given in the input, else `K{i+1}`.
    pub fn name(&self, i: usize) -> String {
        self.names[i]
            .clone()
            .unwrap_or_else(|| format!("K{}", i + 1))
    }

    pub fn ground(&self) -> ElementSet {
        self.universe.full()
    }

    pub fn union(&self) -> ElementSet {
        self.blocks.iter().fold(ElementSet::EMPTY, |a, &b| a | b)
    }

    /// Indices of the blocks containing element `x`.
    pub fn blocks_containing(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter(move |(_, b)| b.contains(x))
            .map(|(i, _)| i)
    }

    /// The same family with block `k` removed.
    pub fn without_block(&self, k: usize) -> Result<SetFamily> {
        self.check_block(k)?;
        let mut blocks = self.blocks.clone();
        let mut names = self.names.clone();
        blocks.remove(k);
        names.remove(k);
        Ok(SetFamily {
            universe: self.universe.clone(),
            blocks,
            names,
        })
    }

    /// The subfamily formed by the given block indices, in the given order.
    pub fn select(&self, keep: &[usize]) -> Result<SetFamily> {
        for &k in keep {
            self.check_block(k)?;
        }
        Ok(SetFamily {
            universe: self.universe.clone(),
            blocks: keep.iter().map(|&k| self.blocks[k]).collect(),
            names: keep.iter().map(|&k| self.names[k].clone()).collect(),
        })
    }

    pub fn format_set(&self, set: ElementSet) -> String {
        self.universe.format_set(set)
    }

    /// Extensional equality: same universe labels and same block sequence.
    pub fn same_blocks(&self, other: &SetFamily) -> bool {
        self.universe.labels() == other.universe.labels() && self.blocks == other.blocks
    }

    fn check_block(&self, k: usize) -> Result<()> {
        if k < self.blocks.len() {
            Ok(())
        } else {
            Err(Error::NoSuchBlock {
                index: k,
                blocks: self.blocks.len(),
            })
        }
    }
}

/// JSON form of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub universe: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl FamilyDoc {
    pub fn into_family(self) -> Result<SetFamily> {
        let u = Arc::new(Universe::new(self.universe)?);
        if self.blocks.is_empty() {
            return Err(Error::Json("no blocks".into()));
        }
        if let Some(names) = &self.names {
            if names.len() != self.blocks.len() {
                return Err(Error::Json("`names` and `blocks` differ in length".into()));
            }
        }
        let mut sets = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Json(format!("block {} is empty", i + 1)));
            }
            let mut set = ElementSet::EMPTY;
            for l in b {
                let x = u
                    .index_of(l)
                    .ok_or_else(|| Error::UnknownElement(l.clone()))?;
                if set.contains(x) {
                    return Err(Error::Json(format!(
                        "element `{l}` repeated in block {}",
                        i + 1
                    )));
                }
                set = set.with(x);
            }
            sets.push(set);
        }
        let names = match self.names {
            Some(ns) => ns.into_iter().map(Some).collect(),
            None => vec![None; sets.len()],
        };
        SetFamily::with_names(u, sets, names)
    }
}

/// A block that was dropped because an earlier block had the same members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DroppedDuplicate {
    pub kept: usize,
    pub dropped: usize,
}

/// A family of nonempty, pairwise distinct blocks whose union is the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    family: SetFamily,
    dropped: Vec<DroppedDuplicate>,
}

impl Covering {
    /// Validates that `f` covers its universe, dropping repeated blocks.
    ///
    /// Indices in the returned [`DroppedDuplicate`] records refer to `f`.
    pub fn new(f: SetFamily) -> Result<Self> {
        let missing = f.ground() - f.union();
        if !missing.is_empty() {
            return Err(Error::Uncovered(
                f.universe
                    .labels_of(missing)
                    .into_iter()
                    .map(String::from)
                    .collect(),
            ));
        }
        let mut dropped = Vec::new();
        let mut keep = Vec::with_capacity(f.len());
        for (i, b) in f.blocks.iter().enumerate() {
            match keep.iter().find(|&&k: &&usize| f.blocks[k] == *b) {
                Some(&k) => dropped.push(DroppedDuplicate {
                    kept: k,
                    dropped: i,
                }),
                None => keep.push(i),
            }
        }
        let family = if dropped.is_empty() {
            f
        } else {
            f.select(&keep)?
        };
        Ok(Covering { family, dropped })
    }

    pub fn from_labels(universe: &[&str], blocks: &[&[&str]]) -> Result<Self> {
        Covering::new(SetFamily::from_labels(universe, blocks)?)
    }

    /// Parses either input format and validates the covering.
    pub fn parse(text: &str) -> Result<Self> {
        Covering::new(SetFamily::parse(text)?)
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn into_family(self) -> SetFamily {
        self.family
    }

    pub fn dropped_duplicates(&self) -> &[DroppedDuplicate] {
        &self.dropped
    }

    pub fn is_partition(&self) -> bool {
        self.first_overlap().is_none()
    }

    /// The covering with block `k` removed, if what remains still covers.
    pub fn without_block(&self, k: usize) -> Result<Covering> {
        Covering::new(self.family.without_block(k)?)
    }

    /// The covering restricted to the given blocks.
    pub fn select(&self, keep: &[usize]) -> Result<Covering> {
        Covering::new(self.family.select(keep)?)
    }

    fn first_overlap(&self) -> Option<(usize, usize)> {
        let b = self.family.blocks();
        (0..b.len())
            .flat_map(|i| (i + 1..b.len()).map(move |j| (i, j)))
            .find(|&(i, j)| b[i].meets(b[j]))
    }
}

impl Deref for Covering {
    type Target = SetFamily;
    fn deref(&self) -> &SetFamily {
        &self.family
    }
}

/// A covering whose blocks are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    covering: Covering,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn new(covering: Covering) -> Result<Self> {
        if let Some((i, j)) = covering.first_overlap() {
            return Err(Error::NotAPartition(i, j));
        }
        let mut class_of = vec![0; covering.n()];
        for (k, b) in covering.blocks().iter().enumerate() {
            for x in b.iter() {
                class_of[x] = k;
            }
        }
        Ok(Partition { covering, class_of })
    }

    pub fn from_labels(universe: &[&str], blocks: &[&[&str]]) -> Result<Self> {
        Partition::new(Covering::from_labels(universe, blocks)?)
    }

    pub fn covering(&self) -> &Covering {
        &self.covering
    }

    pub fn classes(&self) -> &[ElementSet] {
        self.covering.blocks()
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }
}

impl Deref for Partition {
    type Target = Covering;
    fn deref(&self) -> &Covering {
        &self.covering
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_family_with_uncovered_element() {
        let f = SetFamily::parse("universe: 1 2 3 4\nblock: 2 3\nblock: 4\nblock: 2 4").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.block(0), f.universe().set_of(&["2", "3"]).unwrap());
        assert_eq!(f.name(1), "K2");

        let err = Covering::new(f).unwrap_err();
        assert_eq!(err, Error::Uncovered(vec!["1".into()]));
    }

    #[test]
    fn minimal_covering_is_a_partition() {
        let c = Covering::parse("universe: a\nblock: a").unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.is_partition());
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("universe: 1 2\nblock:", "empty block"),
            ("universe: 1 2\nblock: 1 3", "not in the universe"),
            ("universe: 1 2\nblock: 1 1", "repeated"),
            ("block: 1\nuniverse: 1", "before"),
            ("universe: 1\nuniverse: 1\nblock: 1", "second"),
            ("universe: 1 2\nblocks: 1", "unknown directive"),
            ("universe: 1 2\njust words", "expected"),
            ("universe: 1 1\nblock: 1", "twice"),
            ("universe: 1 2", "no `block:`"),
            ("# only a comment", "missing"),
        ];
        for (text, needle) in cases {
            let err = SetFamily::parse(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn named_blocks_and_comments() {
        let f = SetFamily::parse("# demo\n\nuniverse: x y\nblock left: x\nblock: y\n").unwrap();
        assert_eq!(f.name(0), "left");
        assert_eq!(f.name(1), "K2");
        let again = SetFamily::parse(&f.to_text()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn json_form_is_accepted() {
        let f = SetFamily::parse(r#"{"universe": ["1","2","3"], "blocks": [["1","2"], ["3"]]}"#)
            .unwrap();
        assert_eq!(f.len(), 2);
        let doc = serde_json::to_string(&f.to_doc()).unwrap();
        assert_eq!(SetFamily::parse(&doc).unwrap(), f);
        assert!(SetFamily::parse(r#"{"universe": ["1"], "blocks": [[]]}"#).is_err());
        assert!(SetFamily::parse(r#"{"universe": ["1"], "blocks": [["2"]]}"#).is_err());
    }

    #[test]
    fn covering_drops_duplicates_but_family_keeps_them() {
        let f = SetFamily::from_labels(&["a", "b"], &[&["a", "b"], &["a"], &["a", "b"]]).unwrap();
        assert_eq!(f.len(), 3);
        let c = Covering::new(f).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(
            c.dropped_duplicates(),
            &[DroppedDuplicate {
                kept: 0,
                dropped: 2
            }]
        );
    }

    #[test]
    fn partition_detection() {
        let overlapping = Covering::from_labels(
            &["1", "2", "3", "4", "5"],
            &[&["1", "2"], &["1", "3"], &["2", "3"], &["4", "5"]],
        )
        .unwrap();
        assert!(!overlapping.is_partition());
        assert!(Partition::new(overlapping).is_err());

        let singletons =
            Covering::from_labels(&["1", "2", "3"], &[&["1"], &["2"], &["3"]]).unwrap();
        assert!(singletons.is_partition());

        let p = Partition::from_labels(&["a", "b", "c"], &[&["a", "b"], &["c"]]).unwrap();
        assert_eq!(p.class_of(1), 0);
        assert_eq!(p.class_of(2), 1);
    }

    #[test]
    fn universe_limits() {
        assert!(matches!(
            Universe::numbered(65),
            Err(Error::UniverseTooLarge(65))
        ));
        assert_eq!(Universe::numbered(64).unwrap().full().len(), 64);
    }
}
