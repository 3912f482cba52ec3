//! Simple graphs, vertex sets and the domination verifiers.
//!
//! A liar's dominating set `D` of `G = (V, E)` satisfies
//! (i) `|N[v] ∩ D| ≥ 2` for every vertex and
//! (ii) `|(N[u] ∪ N[v]) ∩ D| ≥ 3` for every pair of distinct vertices.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Undirected graph without loops or parallel edges. Adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u, v));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(SimpleGraph {
            adj,
            edge_count: seen.len(),
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is simple")
    }

    /// The star `K1,k` with centre 0.
    pub fn star(leaves: usize) -> Self {
        SimpleGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order. The position of an
    /// edge in this list is its edge id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// `N[v]`, ascending.
    pub fn closed_nbhd(&self, v: usize) -> Result<Vec<usize>> {
        let open = self.adj.get(v).ok_or(Error::UnknownVertex(v))?;
        let mut out = Vec::with_capacity(open.len() + 1);
        out.extend(open.iter().copied().filter(|&u| u < v));
        out.push(v);
        out.extend(open.iter().copied().filter(|&u| u > v));
        Ok(out)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn closed_bits(&self) -> Vec<Bits> {
        let n = self.vertex_count();
        (0..n)
            .map(|v| {
                let mut b = Bits::from_iter(n, self.adj[v].iter().copied());
                b.set(v);
                b
            })
            .collect()
    }
}

/// A set of vertex (or point) ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn all(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Fails if any member is outside `0..n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(m) if m >= n => Err(Error::OutOfRangeMember { member: m, n }),
            _ => Ok(()),
        }
    }

    pub(crate) fn to_bits(&self, n: usize) -> Bits {
        Bits::from_iter(n, self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::collections::btree_set::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertex(usize),
    Pair(usize, usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Pair(u, v) => write!(f, "pair ({u}, {v})"),
        }
    }
}

/// First violated requirement found by a verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    /// 1 for the per-vertex condition, 2 for the pair condition.
    pub condition: u8,
    pub witness: Witness,
    /// How many members of the set the witness neighbourhood actually holds.
    pub achieved: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub failure: Option<Failure>,
}

impl VerifyReport {
    pub const OK: VerifyReport = VerifyReport { failure: None };

    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(condition: u8, witness: Witness, achieved: u32) -> Self {
        VerifyReport {
            failure: Some(Failure {
                condition,
                witness,
                achieved: achieved as usize,
            }),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("ok"),
            Some(x) => write!(
                f,
                "fail condition={} witness={} achieved={}",
                x.condition, x.witness, x.achieved
            ),
        }
    }
}

/// Every vertex has a member of `d` in its closed neighbourhood.
/// On failure the witness is the smallest undominated vertex.
pub fn is_dominating(g: &SimpleGraph, d: &VertexSet) -> Result<VerifyReport> {
    let n = g.vertex_count();
    d.check_range(n)?;
    for v in 0..n {
        if !d.contains(v) && !g.neighbors(v).iter().any(|&u| d.contains(u)) {
            return Ok(VerifyReport::fail(1, Witness::Vertex(v), 0));
        }
    }
    Ok(VerifyReport::OK)
}

/// Liar's domination check. Condition (i) is scanned first, then condition (ii)
/// over pairs in lexicographic order; the first violation is reported.
///
/// Only pairs with intersecting closed neighbourhoods are scanned for (ii):
/// once (i) holds, a disjoint pair already sees `2 + 2` members.
pub fn is_liars_dominating(g: &SimpleGraph, d: &VertexSet) -> Result<VerifyReport> {
    let n = g.vertex_count();
    d.check_range(n)?;
    Ok(LiarsChecker::new(g).report(&d.to_bits(n)))
}

/// Same contract as [`is_liars_dominating`] but scans every pair for (ii).
pub fn is_liars_dominating_all_pairs(g: &SimpleGraph, d: &VertexSet) -> Result<VerifyReport> {
    let n = g.vertex_count();
    d.check_range(n)?;
    let nb = g.closed_bits();
    let bits = d.to_bits(n);
    for (v, b) in nb.iter().enumerate() {
        let c = b.count_and(&bits);
        if c < 2 {
            return Ok(VerifyReport::fail(1, Witness::Vertex(v), c));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let c = nb[u].or(&nb[v]).count_and(&bits);
            if c < 3 {
                return Ok(VerifyReport::fail(2, Witness::Pair(u, v), c));
            }
        }
    }
    Ok(VerifyReport::OK)
}

/// Precomputed closed neighbourhoods and the intersecting pairs of a graph,
/// reused when the same graph is checked against many candidate sets.
#[derive(Clone, Debug)]
pub(crate) struct LiarsChecker {
    pub(crate) nbhd: Vec<Bits>,
    /// `(u, v, N[u] ∪ N[v])` for `u < v` with `N[u] ∩ N[v] ≠ ∅`, lexicographic.
    pub(crate) pairs: Vec<(usize, usize, Bits)>,
}

impl LiarsChecker {
    pub(crate) fn new(g: &SimpleGraph) -> Self {
        let nbhd = g.closed_bits();
        let n = nbhd.len();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if nbhd[u].intersects(&nbhd[v]) {
                    pairs.push((u, v, nbhd[u].or(&nbhd[v])));
                }
            }
        }
        LiarsChecker { nbhd, pairs }
    }

    #[inline]
    pub(crate) fn check(&self, d: &Bits) -> bool {
        self.nbhd.iter().all(|b| b.count_and(d) >= 2)
            && self.pairs.iter().all(|(_, _, b)| b.count_and(d) >= 3)
    }

    pub(crate) fn report(&self, d: &Bits) -> VerifyReport {
        for (v, b) in self.nbhd.iter().enumerate() {
            let c = b.count_and(d);
            if c < 2 {
                return VerifyReport::fail(1, Witness::Vertex(v), c);
            }
        }
        for (u, v, b) in &self.pairs {
            let c = b.count_and(d);
            if c < 3 {
                return VerifyReport::fail(2, Witness::Pair(*u, *v), c);
            }
        }
        VerifyReport::OK
    }
}

/// Outcome of the liar's feasibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// A connected component with at most two vertices: condition (ii) on it
    /// (or condition (i) on a singleton) can never be met.
    SmallComponent(Vec<usize>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// A liar's dominating set exists iff every component has at least three vertices.
///
/// If every component has three or more vertices then `D = V` works: each
/// `N[v]` has at least two vertices, and every pair `u, v` either lies in one
/// component with `|N[u] ∪ N[v]| ≥ 3` (connected, at least three vertices) or in
/// two components, contributing at least `2 + 2`. Conversely a component of
/// size one fails (i) and a component `{u, v}` caps `N[u] ∪ N[v]` at two.
pub fn liars_feasible(g: &SimpleGraph) -> Feasibility {
    g.components()
        .into_iter()
        .find(|c| c.len() <= 2)
        .map_or(Feasibility::Feasible, Feasibility::SmallComponent)
}
