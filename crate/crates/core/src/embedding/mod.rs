//! Orthogonal grid embeddings.
//!
//! Vertices sit on the lattice `(40 i, 40 j)` (deci-units, so one lattice
//! spacing is four units) and every edge is a rectilinear polyline along
//! lattice lines, bending only at lattice points. Distinct edge paths may only
//! meet at a shared endpoint.

mod router;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Coord;
use crate::graph::SimpleGraph;

pub use router::{embed_graph, embed_graph_with_budget, DEFAULT_ROUTER_BUDGET};

/// Lattice spacing in deci-units.
pub const GRID: i64 = 40;

/// Hard cap on the number of steps a decomposition may produce.
pub const MAX_TOTAL_STEPS: usize = 1 << 20;

pub type EdgeKey = (usize, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridEmbedding {
    pub vertex_pos: BTreeMap<usize, Coord>,
    /// Keyed by `(u, v)` with `u < v`; each polyline runs from `u` to `v` and
    /// lists the endpoints and every bend (collinear interior points are allowed).
    pub edge_paths: BTreeMap<EdgeKey, Vec<Coord>>,
}

impl GridEmbedding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(&mut self, v: usize, pos: Coord) {
        self.vertex_pos.insert(v, pos);
    }

    /// Stores a path given in either orientation, normalising it to run from
    /// the smaller endpoint id to the larger one.
    pub fn insert_path(&mut self, u: usize, v: usize, mut path: Vec<Coord>) {
        if u > v {
            path.reverse();
        }
        self.edge_paths.insert((u.min(v), u.max(v)), path);
    }

    pub fn path(&self, u: usize, v: usize) -> Option<&[Coord]> {
        self.edge_paths
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
    }

    /// Graph implied by the embedding; vertex ids must be dense.
    pub fn graph(&self) -> Result<SimpleGraph> {
        let n = self.vertex_pos.len();
        if let Some(missing) = (0..n).find(|v| !self.vertex_pos.contains_key(v)) {
            return Err(Error::MissingVertex(missing));
        }
        SimpleGraph::new(n, self.edge_paths.keys().copied())
    }

    /// Sum of Euclidean path lengths in deci-units.
    pub fn total_length(&self) -> i64 {
        self.edge_paths
            .values()
            .map(|p| p.windows(2).map(|w| manhattan(w[0], w[1])).sum::<i64>())
            .sum()
    }
}

fn manhattan(a: Coord, b: Coord) -> i64 {
    (a.x - b.x).abs() + (a.y - b.y).abs()
}

fn on_grid(c: Coord) -> bool {
    c.x.rem_euclid(GRID) == 0 && c.y.rem_euclid(GRID) == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    SharedVertexPosition {
        first: usize,
        second: usize,
    },
    VertexOffGrid {
        vertex: usize,
    },
    PathTooShort {
        edge: EdgeKey,
    },
    PathEndpointMismatch {
        edge: EdgeKey,
    },
    NonAxisSegment {
        edge: EdgeKey,
        from: Coord,
        to: Coord,
    },
    DegenerateSegment {
        edge: EdgeKey,
        at: Coord,
    },
    BendOffGrid {
        edge: EdgeKey,
        at: Coord,
    },
    PathSelfIntersection {
        edge: EdgeKey,
        at: Coord,
    },
    PathsIntersect {
        first: EdgeKey,
        second: EdgeKey,
        at: Coord,
    },
    PathThroughVertex {
        edge: EdgeKey,
        vertex: usize,
    },
}

/// A broken embedding rule. Rules are numbered 1 to 4: one point per vertex,
/// vertices on the lattice, edges as lattice polylines, no crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
}

impl Violation {
    pub fn rule(&self) -> u8 {
        use ViolationKind::*;
        match self.kind {
            SharedVertexPosition { .. } => 1,
            VertexOffGrid { .. } => 2,
            PathTooShort { .. }
            | PathEndpointMismatch { .. }
            | NonAxisSegment { .. }
            | DegenerateSegment { .. }
            | BendOffGrid { .. } => 3,
            PathSelfIntersection { .. } | PathsIntersect { .. } | PathThroughVertex { .. } => 4,
        }
    }
}

impl From<ViolationKind> for Violation {
    fn from(kind: ViolationKind) -> Self {
        Violation { kind }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ViolationKind::*;
        write!(f, "rule {}: ", self.rule())?;
        match &self.kind {
            SharedVertexPosition { first, second } => {
                write!(f, "vertices {first} and {second} share a position")
            }
            VertexOffGrid { vertex } => write!(f, "vertex {vertex} is off the lattice"),
            PathTooShort { edge } => write!(f, "path of {edge:?} has fewer than two points"),
            PathEndpointMismatch { edge } => {
                write!(
                    f,
                    "path of {edge:?} does not start and end at its endpoints"
                )
            }
            NonAxisSegment { edge, from, to } => {
                write!(f, "path of {edge:?} has a diagonal piece {from} -> {to}")
            }
            DegenerateSegment { edge, at } => {
                write!(f, "path of {edge:?} repeats point {at}")
            }
            BendOffGrid { edge, at } => write!(f, "path of {edge:?} bends off-lattice at {at}"),
            PathSelfIntersection { edge, at } => {
                write!(f, "path of {edge:?} touches itself at {at}")
            }
            PathsIntersect { first, second, at } => {
                write!(f, "paths of {first:?} and {second:?} meet at {at}")
            }
            PathThroughVertex { edge, vertex } => {
                write!(f, "path of {edge:?} passes through vertex {vertex}")
            }
        }
    }
}

/// Axis-parallel closed segment as a degenerate box.
#[derive(Clone, Copy, Debug)]
struct Seg {
    lo: Coord,
    hi: Coord,
}

impl Seg {
    fn new(a: Coord, b: Coord) -> Self {
        Seg {
            lo: Coord::new(a.x.min(b.x), a.y.min(b.y)),
            hi: Coord::new(a.x.max(b.x), a.y.max(b.y)),
        }
    }

    fn contains(&self, p: Coord) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    /// Intersection box, if non-empty.
    fn meet(&self, o: &Seg) -> Option<Seg> {
        let lo = Coord::new(self.lo.x.max(o.lo.x), self.lo.y.max(o.lo.y));
        let hi = Coord::new(self.hi.x.min(o.hi.x), self.hi.y.min(o.hi.y));
        (lo.x <= hi.x && lo.y <= hi.y).then_some(Seg { lo, hi })
    }

    fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Rule-3 checks for a single path. Returns the violations found.
fn path_shape_violations(edge: EdgeKey, path: &[Coord], ends: (Coord, Coord)) -> Vec<Violation> {
    let mut out = Vec::new();
    if path.len() < 2 {
        out.push(ViolationKind::PathTooShort { edge }.into());
        return out;
    }
    if path[0] != ends.0 || path[path.len() - 1] != ends.1 {
        out.push(ViolationKind::PathEndpointMismatch { edge }.into());
    }
    for &p in &path[1..path.len() - 1] {
        if !on_grid(p) {
            out.push(ViolationKind::BendOffGrid { edge, at: p }.into());
        }
    }
    for w in path.windows(2) {
        if w[0] == w[1] {
            out.push(ViolationKind::DegenerateSegment { edge, at: w[0] }.into());
        } else if w[0].x != w[1].x && w[0].y != w[1].y {
            out.push(
                ViolationKind::NonAxisSegment {
                    edge,
                    from: w[0],
                    to: w[1],
                }
                .into(),
            );
        }
    }
    out
}

/// Checks every embedding rule. An empty list means the embedding is valid.
///
/// Structural mismatches between `g` and `emb` (missing or extra vertices and
/// paths) are errors rather than violations.
pub fn validate_embedding(g: &SimpleGraph, emb: &GridEmbedding) -> Result<Vec<Violation>> {
    let n = g.vertex_count();
    for v in 0..n {
        if !emb.vertex_pos.contains_key(&v) {
            return Err(Error::MissingVertex(v));
        }
    }
    if let Some((&v, _)) = emb.vertex_pos.range(n..).next() {
        return Err(Error::UnexpectedVertex(v));
    }
    let edges = g.edges();
    for &(u, v) in &edges {
        if !emb.edge_paths.contains_key(&(u, v)) {
            return Err(Error::MissingEdgePath(u, v));
        }
    }
    if let Some(&(u, v)) = emb.edge_paths.keys().find(|k| !g.has_edge(k.0, k.1)) {
        return Err(Error::UnexpectedEdgePath(u, v));
    }

    let pos = |v: usize| emb.vertex_pos[&v];
    let mut out: Vec<Violation> = Vec::new();

    let mut by_pos: BTreeMap<Coord, usize> = BTreeMap::new();
    for (&v, &p) in &emb.vertex_pos {
        if let Some(&first) = by_pos.get(&p) {
            out.push(ViolationKind::SharedVertexPosition { first, second: v }.into());
        } else {
            by_pos.insert(p, v);
        }
    }
    for (&v, &p) in &emb.vertex_pos {
        if !on_grid(p) {
            out.push(ViolationKind::VertexOffGrid { vertex: v }.into());
        }
    }

    // Rule 3, per path; only well-shaped paths take part in the crossing checks.
    let mut segs: Vec<(EdgeKey, Vec<Seg>)> = Vec::new();
    for &(u, v) in &edges {
        let path = &emb.edge_paths[&(u, v)];
        let shape = path_shape_violations((u, v), path, (pos(u), pos(v)));
        if shape.is_empty() {
            segs.push((
                (u, v),
                path.windows(2).map(|w| Seg::new(w[0], w[1])).collect(),
            ));
        }
        out.extend(shape);
    }

    // Rule 4: a path touches itself only where consecutive pieces join.
    for ((u, v), ss) in &segs {
        let path = &emb.edge_paths[&(*u, *v)];
        let mut hit = None;
        'outer: for i in 0..ss.len() {
            for j in i + 1..ss.len() {
                if let Some(m) = ss[i].meet(&ss[j]) {
                    let benign = j == i + 1 && m.is_point() && m.lo == path[j];
                    if !benign {
                        hit = Some(m.lo);
                        break 'outer;
                    }
                }
            }
        }
        if let Some(at) = hit {
            out.push(ViolationKind::PathSelfIntersection { edge: (*u, *v), at }.into());
        }
    }

    // Rule 4: no path runs through a foreign vertex.
    for ((u, v), ss) in &segs {
        for (&w, &p) in &emb.vertex_pos {
            if w != *u && w != *v && ss.iter().any(|s| s.contains(p)) {
                out.push(
                    ViolationKind::PathThroughVertex {
                        edge: (*u, *v),
                        vertex: w,
                    }
                    .into(),
                );
            }
        }
    }

    // Rule 4: distinct paths share at most a common endpoint.
    for a in 0..segs.len() {
        for b in a + 1..segs.len() {
            let (ea, sa) = &segs[a];
            let (eb, sb) = &segs[b];
            let shared: Vec<Coord> = [ea.0, ea.1]
                .into_iter()
                .filter(|w| *w == eb.0 || *w == eb.1)
                .map(pos)
                .collect();
            let mut hit = None;
            'pairs: for x in sa {
                for y in sb {
                    if let Some(m) = x.meet(y) {
                        if !(m.is_point() && shared.contains(&m.lo)) {
                            hit = Some(m.lo);
                            break 'pairs;
                        }
                    }
                }
            }
            if let Some(at) = hit {
                out.push(
                    ViolationKind::PathsIntersect {
                        first: *ea,
                        second: *eb,
                        at,
                    }
                    .into(),
                );
            }
        }
    }

    Ok(out)
}

/// Validates and converts a non-empty violation list into an error.
pub fn ensure_valid(g: &SimpleGraph, emb: &GridEmbedding) -> Result<()> {
    let v = validate_embedding(g, emb)?;
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidEmbedding(v))
    }
}

/// Which end of an improper step touches a node point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeEnd {
    Start,
    End,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepClass {
    Improper(NodeEnd),
    Proper,
}

/// One lattice-spacing piece of an edge path, directed from the edge's first
/// endpoint towards its second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: Coord,
    pub to: Coord,
    pub class: StepClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSteps {
    pub edge: EdgeKey,
    pub steps: Vec<Step>,
}

impl EdgeSteps {
    pub fn length(&self) -> i64 {
        self.steps.len() as i64 * GRID
    }

    /// Point at the given path distance from the first endpoint.
    pub fn point_at(&self, offset: i64) -> Coord {
        debug_assert!((0..=self.length()).contains(&offset));
        let idx = ((offset / GRID) as usize).min(self.steps.len() - 1);
        let s = &self.steps[idx];
        let local = offset - idx as i64 * GRID;
        let dx = (s.to.x - s.from.x).signum();
        let dy = (s.to.y - s.from.y).signum();
        s.from.offset(dx * local, dy * local)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepDecomposition {
    pub edges: Vec<EdgeSteps>,
}

/// Splits every edge path into unit lattice steps and classifies them: the
/// first and last step of each edge touch a node point (improper), the others
/// do not (proper).
pub fn decompose_steps(emb: &GridEmbedding) -> Result<StepDecomposition> {
    let mut edges = Vec::with_capacity(emb.edge_paths.len());
    let mut total = 0usize;
    for (&(u, v), path) in &emb.edge_paths {
        let (pu, pv) = match (emb.vertex_pos.get(&u), emb.vertex_pos.get(&v)) {
            (Some(&a), Some(&b)) => (a, b),
            (None, _) => return Err(Error::MissingVertex(u)),
            (_, None) => return Err(Error::MissingVertex(v)),
        };
        let mut bad = path_shape_violations((u, v), path, (pu, pv));
        for (w, p) in [(u, pu), (v, pv)] {
            if !on_grid(p) {
                bad.push(ViolationKind::VertexOffGrid { vertex: w }.into());
            }
        }
        if !bad.is_empty() {
            return Err(Error::InvalidEmbedding(bad));
        }
        let len: i64 = path.windows(2).map(|w| manhattan(w[0], w[1])).sum();
        total = total.saturating_add((len / GRID) as usize);
        if total > MAX_TOTAL_STEPS {
            return Err(Error::InvalidDecomposition(format!(
                "more than {MAX_TOTAL_STEPS} steps"
            )));
        }
        let mut steps = Vec::with_capacity((len / GRID) as usize);
        for w in path.windows(2) {
            let dx = (w[1].x - w[0].x).signum() * GRID;
            let dy = (w[1].y - w[0].y).signum() * GRID;
            let mut at = w[0];
            while at != w[1] {
                let next = at.offset(dx, dy);
                steps.push(Step {
                    from: at,
                    to: next,
                    class: StepClass::Proper,
                });
                at = next;
            }
        }
        let last = steps.len() - 1;
        if last == 0 {
            steps[0].class = StepClass::Improper(NodeEnd::Both);
        } else {
            steps[0].class = StepClass::Improper(NodeEnd::Start);
            steps[last].class = StepClass::Improper(NodeEnd::End);
        }
        edges.push(EdgeSteps {
            edge: (u, v),
            steps,
        });
    }
    Ok(StepDecomposition { edges })
}

/// `l`: total number of lattice steps over all edges.
pub fn total_segments(dec: &StepDecomposition) -> usize {
    dec.edges.iter().map(|e| e.steps.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64, y: i64) -> Coord {
        Coord::new(x, y)
    }

    fn k2() -> (SimpleGraph, GridEmbedding) {
        let g = SimpleGraph::complete(2);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0)]);
        (g, e)
    }

    fn rules(g: &SimpleGraph, e: &GridEmbedding) -> Vec<u8> {
        validate_embedding(g, e)
            .unwrap()
            .iter()
            .map(Violation::rule)
            .collect()
    }

    #[test]
    fn k2_straight_is_valid() {
        let (g, e) = k2();
        assert!(validate_embedding(&g, &e).unwrap().is_empty());
    }

    #[test]
    fn off_grid_vertex_is_rule_two() {
        let (g, mut e) = k2();
        e.place(1, c(41, 0));
        e.insert_path(0, 1, vec![c(0, 0), c(41, 0)]);
        let v = validate_embedding(&g, &e).unwrap();
        assert!(v
            .iter()
            .any(|x| x.kind == ViolationKind::VertexOffGrid { vertex: 1 } && x.rule() == 2));
    }

    #[test]
    fn crossing_paths_are_rule_four() {
        // 0-1 runs horizontally through (40, 40), 2-3 vertically through it.
        let g = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 40));
        e.place(1, c(80, 40));
        e.place(2, c(40, 0));
        e.place(3, c(40, 80));
        e.insert_path(0, 1, vec![c(0, 40), c(80, 40)]);
        e.insert_path(2, 3, vec![c(40, 0), c(40, 80)]);
        let v = validate_embedding(&g, &e).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(
            v[0].kind,
            ViolationKind::PathsIntersect {
                first: (0, 1),
                second: (2, 3),
                at: c(40, 40)
            }
        );
        assert_eq!(v[0].rule(), 4);
    }

    #[test]
    fn shared_endpoint_is_allowed_but_overlap_is_not() {
        let g = SimpleGraph::path(3);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.place(2, c(40, 40));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0)]);
        e.insert_path(1, 2, vec![c(40, 0), c(40, 40)]);
        assert!(validate_embedding(&g, &e).unwrap().is_empty());

        // 1-2 detours back over the 0-1 path.
        e.insert_path(1, 2, vec![c(40, 0), c(0, 0), c(0, 40), c(40, 40)]);
        assert!(rules(&g, &e).contains(&4));
    }

    #[test]
    fn path_through_vertex_and_diagonal() {
        let g = SimpleGraph::new(3, [(0, 2)]).unwrap();
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.place(2, c(80, 0));
        e.insert_path(0, 2, vec![c(0, 0), c(80, 0)]);
        let v = validate_embedding(&g, &e).unwrap();
        assert_eq!(
            v[0].kind,
            ViolationKind::PathThroughVertex {
                edge: (0, 2),
                vertex: 1
            }
        );

        e.insert_path(0, 2, vec![c(0, 0), c(80, 40), c(80, 0)]);
        assert!(rules(&g, &e).contains(&3));
    }

    #[test]
    fn self_touching_path() {
        let g = SimpleGraph::complete(2);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        // Goes right, back left past the start, then around.
        e.insert_path(
            0,
            1,
            vec![
                c(0, 0),
                c(0, 40),
                c(80, 40),
                c(80, -40),
                c(0, -40),
                c(0, 0),
                c(40, 0),
            ],
        );
        assert!(validate_embedding(&g, &e)
            .unwrap()
            .iter()
            .any(|v| matches!(v.kind, ViolationKind::PathSelfIntersection { .. })));
    }

    #[test]
    fn structural_errors() {
        let (g, mut e) = k2();
        e.edge_paths.clear();
        assert!(matches!(
            validate_embedding(&g, &e),
            Err(Error::MissingEdgePath(0, 1))
        ));
        let (_, e) = k2();
        let g3 = SimpleGraph::empty(3);
        assert!(matches!(
            validate_embedding(&g3, &e),
            Err(Error::MissingVertex(2))
        ));
        let g2 = SimpleGraph::empty(2);
        assert!(matches!(
            validate_embedding(&g2, &e),
            Err(Error::UnexpectedEdgePath(0, 1))
        ));
    }

    #[test]
    fn decompose_examples() {
        let (_, e) = k2();
        let d = decompose_steps(&e).unwrap();
        assert_eq!(d.edges[0].steps.len(), 1);
        assert_eq!(
            d.edges[0].steps[0].class,
            StepClass::Improper(NodeEnd::Both)
        );

        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(80, 0));
        e.insert_path(0, 1, vec![c(0, 0), c(80, 0)]);
        let d = decompose_steps(&e).unwrap();
        let classes: Vec<_> = d.edges[0].steps.iter().map(|s| s.class).collect();
        assert_eq!(
            classes,
            vec![
                StepClass::Improper(NodeEnd::Start),
                StepClass::Improper(NodeEnd::End)
            ]
        );

        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(80, 40));
        e.insert_path(0, 1, vec![c(0, 0), c(80, 0), c(80, 40)]);
        let d = decompose_steps(&e).unwrap();
        let classes: Vec<_> = d.edges[0].steps.iter().map(|s| s.class).collect();
        assert_eq!(
            classes,
            vec![
                StepClass::Improper(NodeEnd::Start),
                StepClass::Proper,
                StepClass::Improper(NodeEnd::End)
            ]
        );
        assert_eq!(total_segments(&d), 3);
        assert_eq!(d.edges[0].point_at(85), c(80, 5));
        assert_eq!(d.edges[0].point_at(120), c(80, 40));
    }

    #[test]
    fn reversed_insert_normalises() {
        let mut e = GridEmbedding::new();
        e.insert_path(1, 0, vec![c(40, 0), c(0, 0)]);
        assert_eq!(e.path(0, 1).unwrap(), &[c(0, 0), c(40, 0)]);
    }
}
