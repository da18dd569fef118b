//! The lattice of flats of a matroid.
//!
//! Flats are generated breadth-first from `cl(∅)`: the upper covers of a
//! flat `F` are the minimal sets among `cl(F + e)` for `e ∉ F`. Flats are
//! stored in canonical order, so a strict subset always precedes its
//! supersets and every index-based table below is deterministic.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matroid::{Limits, Matroid};
use crate::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    /// Cover pairs `(lower, upper)` as indices into `flats`, sorted.
    edges: Vec<(usize, usize)>,
    heights: Vec<usize>,
}

/// Builds the flat lattice of `m`, failing once more than
/// `limits.max_lattice_size` flats have been discovered.
pub fn enumerate_lattice<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<FlatLattice> {
    let bottom = m.closure(ElementSet::EMPTY);
    let ground = m.ground();
    let mut seen: HashSet<ElementSet> = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    let mut edges = Vec::new();
    while let Some(f) = queue.pop_front() {
        let mut candidates: Vec<ElementSet> = Vec::new();
        let mut rest = ground - f;
        while let Some(e) = rest.first() {
            let g = m.closure(f.with(e));
            rest = rest - g;
            candidates.push(g);
        }
        let covers: Vec<ElementSet> = candidates
            .iter()
            .copied()
            .filter(|&g| !candidates.iter().any(|&h| h.is_strict_subset(g)))
            .collect();
        for g in covers {
            edges.push((f, g));
            if seen.insert(g) {
                if seen.len() > limits.max_lattice_size {
                    return Err(Error::GuardExceeded {
                        what: "lattice size",
                        limit: limits.max_lattice_size,
                        reached: seen.len(),
                    });
                }
                queue.push_back(g);
            }
        }
    }
    let lattice = FlatLattice::assemble(seen.into_iter().collect(), &edges)?;
    if lattice.top() != ground {
        return Err(Error::Inconsistent(format!(
            "top flat {:?} differs from the ground set",
            lattice.top()
        )));
    }
    for (i, &f) in lattice.flats.iter().enumerate() {
        let r = m.rank(f);
        if lattice.heights[i] != r {
            return Err(Error::Inconsistent(format!(
                "flat {f:?} has height {} but rank {r}",
                lattice.heights[i]
            )));
        }
    }
    Ok(lattice)
}

impl FlatLattice {
    /// A lattice given directly by its elements and cover pairs.
    ///
    /// Heights are longest-chain lengths from the minimal elements. Nothing
    /// is validated beyond membership, so this is how malformed diagrams are
    /// fed to [`FlatLattice::is_geometric`].
    pub fn from_hasse(flats: Vec<ElementSet>, edges: &[(ElementSet, ElementSet)]) -> Result<Self> {
        FlatLattice::assemble(flats, edges)
    }

    fn assemble(mut flats: Vec<ElementSet>, edges: &[(ElementSet, ElementSet)]) -> Result<Self> {
        flats.sort();
        flats.dedup();
        if flats.is_empty() {
            return Err(Error::InvalidSystem(
                "a lattice needs at least one element".into(),
            ));
        }
        let index: HashMap<ElementSet, usize> =
            flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let lookup = |f: &ElementSet| index.get(f).copied().ok_or(Error::NotAFlat(*f));
        let mut idx_edges = edges
            .iter()
            .map(|(lo, hi)| Ok((lookup(lo)?, lookup(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        idx_edges.sort_unstable();
        idx_edges.dedup();

        // Canonical order is a linear extension of inclusion, so one pass
        // in index order settles every longest chain for subset-respecting edges.
        let mut heights = vec![0usize; flats.len()];
        let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); flats.len()];
        for &(lo, hi) in &idx_edges {
            incoming[hi].push(lo);
        }
        let order = topological_order(flats.len(), &idx_edges)?;
        for &v in &order {
            heights[v] = incoming[v]
                .iter()
                .map(|&u| heights[u] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(FlatLattice {
            flats,
            index,
            edges: idx_edges,
            heights,
        })
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// All flats in canonical order.
    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> ElementSet {
        self.flats[i]
    }

    pub fn index_of(&self, f: ElementSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn contains(&self, f: ElementSet) -> bool {
        self.index.contains_key(&f)
    }

    /// Cover pairs `(lower, upper)` as flat indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn hasse_edges(&self) -> Vec<(ElementSet, ElementSet)> {
        self.edges
            .iter()
            .map(|&(lo, hi)| (self.flats[lo], self.flats[hi]))
            .collect()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn height(&self, f: ElementSet) -> Result<usize> {
        Ok(self.heights[self.require(f)?])
    }

    pub fn bottom(&self) -> ElementSet {
        self.flats[0]
    }

    pub fn top(&self) -> ElementSet {
        self.flats[self.flats.len() - 1]
    }

    /// Flat indices grouped by height, lowest first.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let max = self.heights.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); max + 1];
        for (i, &h) in self.heights.iter().enumerate() {
            levels[h].push(i);
        }
        levels
    }

    fn require(&self, f: ElementSet) -> Result<usize> {
        self.index_of(f).ok_or(Error::NotAFlat(f))
    }

    /// `x ∧ y = x ∩ y`.
    pub fn meet(&self, x: ElementSet, y: ElementSet) -> Result<ElementSet> {
        self.require(x)?;
        self.require(y)?;
        let m = x & y;
        if !self.contains(m) {
            return Err(Error::Inconsistent(format!(
                "intersection {m:?} of two flats is not a flat"
            )));
        }
        Ok(m)
    }

    /// `x ∨ y = cl(x ∪ y)`, found as the intersection of every flat
    /// containing the union.
    pub fn join(&self, x: ElementSet, y: ElementSet) -> Result<ElementSet> {
        self.require(x)?;
        self.require(y)?;
        Ok(self.smallest_flat_containing(x | y))
    }

    /// The least flat containing `s`, for any subset `s` of the top.
    pub fn smallest_flat_containing(&self, s: ElementSet) -> ElementSet {
        self.flats
            .iter()
            .filter(|f| s.is_subset(**f))
            .fold(self.top(), |acc, &f| acc & f)
    }

    /// Flats of height one.
    pub fn atoms(&self) -> Vec<ElementSet> {
        self.flats
            .iter()
            .zip(&self.heights)
            .filter(|&(_, &h)| h == 1)
            .map(|(&f, _)| f)
            .collect()
    }

    /// Whether `(lower, upper)` is a Hasse edge.
    pub fn covers(&self, lower: ElementSet, upper: ElementSet) -> Result<bool> {
        let lo = self.require(lower)?;
        let hi = self.require(upper)?;
        Ok(self.edges.binary_search(&(lo, hi)).is_ok())
    }

    /// Rank form of the modular-pair test:
    /// `r(X ∪ Y) + r(X ∩ Y) = r(X) + r(Y)`.
    pub fn is_modular_pair<M: Matroid + ?Sized>(
        &self,
        m: &M,
        x: ElementSet,
        y: ElementSet,
    ) -> Result<bool> {
        self.require(x)?;
        self.require(y)?;
        Ok(m.rank(x | y) + m.rank(x & y) == m.rank(x) + m.rank(y))
    }

    /// Height form: `h(x ∨ y) + h(x ∧ y) = h(x) + h(y)`.
    pub fn is_modular_pair_height(&self, x: ElementSet, y: ElementSet) -> Result<bool> {
        let j = self.join(x, y)?;
        let mt = self.meet(x, y)?;
        Ok(self.height(j)? + self.height(mt)? == self.height(x)? + self.height(y)?)
    }

    /// Order form: for every flat `z ⊆ y`, `y ∧ (x ∨ z) = (y ∧ x) ∨ z`.
    pub fn is_modular_pair_order(&self, x: ElementSet, y: ElementSet) -> Result<bool> {
        self.require(x)?;
        self.require(y)?;
        for &z in self.flats.iter().filter(|z| z.is_subset(y)) {
            let left = self.meet(y, self.join(x, z)?)?;
            let right = self.join(self.meet(y, x)?, z)?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x` forms a modular pair with every flat.
    pub fn is_modular_element<M: Matroid + ?Sized>(&self, m: &M, x: ElementSet) -> Result<bool> {
        self.require(x)?;
        for &y in &self.flats {
            if !self.is_modular_pair(m, x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the geometric-lattice axioms using only the Hasse diagram.
    ///
    /// The order is reachability along cover edges. In turn it checks that
    /// the order is a lattice with a bottom, that every cover raises height
    /// by exactly one (so all maximal chains between two elements have the
    /// same length), the semimodular inequality on every pair, and that
    /// every element is the join of the atoms below it. The first failure
    /// found is reported.
    pub fn is_geometric(&self) -> GeometricReport {
        GeometricReport {
            violation: self.first_geometric_violation(),
        }
    }

    fn first_geometric_violation(&self) -> Option<Violation> {
        let n = self.len();
        let up = self.reachability();
        let sources: Vec<usize> = (0..n).filter(|&i| self.heights[i] == 0).collect();
        if sources.len() != 1 {
            return Some(Violation::NoUniqueBottom {
                minimal: sources.iter().map(|&i| self.flats[i]).collect(),
            });
        }
        for &(lo, hi) in &self.edges {
            if self.heights[hi] != self.heights[lo] + 1 {
                return Some(Violation::ChainCondition {
                    lower: self.flats[lo],
                    upper: self.flats[hi],
                });
            }
        }
        let below: Vec<Bits> = (0..n)
            .map(|v| {
                let mut b = Bits::new(n);
                (0..n).filter(|&u| up[u].get(v)).for_each(|u| b.set(u));
                b
            })
            .collect();
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in x..n {
                let (Some(j), Some(m)) = (
                    self.extremal_bound(&up[x].and(&up[y]), &up, true),
                    self.extremal_bound(&below[x].and(&below[y]), &below, false),
                ) else {
                    return Some(Violation::NotALattice {
                        x: self.flats[x],
                        y: self.flats[y],
                    });
                };
                join[x][y] = j;
                join[y][x] = j;
                meet[x][y] = m;
                meet[y][x] = m;
            }
        }
        let h = &self.heights;
        for x in 0..n {
            for y in x..n {
                if h[x] + h[y] < h[join[x][y]] + h[meet[x][y]] {
                    return Some(Violation::Semimodular {
                        x: self.flats[x],
                        y: self.flats[y],
                    });
                }
            }
        }
        let bottom = sources[0];
        let atoms: Vec<usize> = (0..n).filter(|&i| h[i] == 1).collect();
        for v in 0..n {
            let j = atoms
                .iter()
                .filter(|&&a| up[a].get(v))
                .fold(bottom, |acc, &a| join[acc][a]);
            if j != v {
                return Some(Violation::NotAtomistic {
                    flat: self.flats[v],
                });
            }
        }
        None
    }

    /// `up[v]` holds every `w` with `v ≤ w` in the reachability order.
    fn reachability(&self) -> Vec<Bits> {
        let n = self.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in &self.edges {
            succ[lo].push(hi);
        }
        let order = topological_order(n, &self.edges).expect("acyclic by construction");
        let mut up: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for &v in order.iter().rev() {
            let mut b = Bits::new(n);
            b.set(v);
            for &w in &succ[v] {
                b.or_assign(&up[w]);
            }
            up[v] = b;
        }
        up
    }

    /// Least (or greatest) member of `bounds`: the one whose own up-set
    /// (down-set) contains all of `bounds`.
    fn extremal_bound(&self, bounds: &Bits, cone: &[Bits], least: bool) -> Option<usize> {
        let candidate = bounds.iter().min_by_key(|&i| {
            if least {
                self.heights[i] as isize
            } else {
                -(self.heights[i] as isize)
            }
        })?;
        bounds.is_subset(&cone[candidate]).then_some(candidate)
    }
}

fn topological_order(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(lo, hi) in edges {
        indegree[hi] += 1;
        succ[lo].push(hi);
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidSystem(
            "cover relation contains a cycle".into(),
        ));
    }
    Ok(order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricReport {
    pub violation: Option<Violation>,
}

impl GeometricReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoUniqueBottom {
        minimal: Vec<ElementSet>,
    },
    /// A cover edge skipping a level, so two maximal chains differ in length.
    ChainCondition {
        lower: ElementSet,
        upper: ElementSet,
    },
    NotALattice {
        x: ElementSet,
        y: ElementSet,
    },
    Semimodular {
        x: ElementSet,
        y: ElementSet,
    },
    NotAtomistic {
        flat: ElementSet,
    },
}

/// Fixed-width bitset over flat indices.
#[derive(Debug, Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_assign(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| ElementSet::from_bits(word).iter().map(move |b| w * 64 + b))
    }
}
