//! Gadget construction: from a grid embedding of `G` to the unit disk graph `G'`.
//!
//! Every vertex `v` becomes a node point at its lattice position. Every lattice
//! step of an edge path carries four joint points, and every node gets a
//! pendant support chain `x, y, z` at distances 0.2, 1.2 and 1.4 along a free
//! axis direction. With `n` vertices and `l` steps the instance has
//! `n + 4l + 3n = 4(n + l)` points.
//!
//! Joint offsets (deci-units along the path from the edge's first endpoint):
//!
//! | edge shape | offsets |
//! |---|---|
//! | single step | 10, 15, 25, 30 |
//! | first step | 10, 15, 25, 35 |
//! | proper step `k` | 40k + 5, 15, 25, 35 |
//! | last step | mirror of the first step, measured from the far node |
//!
//! Consecutive gadget points are within unit distance (gaps of 10 or 5 along a
//! line, `5² + 5² = 50` across a bend) and nothing else is.

use std::collections::BTreeSet;
use std::fmt;

use crate::embedding::{decompose_steps, ensure_valid, EdgeKey, GridEmbedding, StepDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{build_udg, sq_dist, Coord, PointKind, PointRecord, UdgInstance};
use crate::graph::{SimpleGraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportRole {
    X,
    Y,
    Z,
}

impl SupportRole {
    pub const ALL: [SupportRole; 3] = [SupportRole::X, SupportRole::Y, SupportRole::Z];

    pub fn as_str(self) -> &'static str {
        match self {
            SupportRole::X => "x",
            SupportRole::Y => "y",
            SupportRole::Z => "z",
        }
    }

    pub fn kind(self) -> PointKind {
        match self {
            SupportRole::X => PointKind::SupportX,
            SupportRole::Y => PointKind::SupportY,
            SupportRole::Z => PointKind::SupportZ,
        }
    }

    /// Distance from the node point in deci-units.
    pub fn distance(self) -> i64 {
        match self {
            SupportRole::X => 2,
            SupportRole::Y => 12,
            SupportRole::Z => 14,
        }
    }
}

/// Where a gadget point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Node {
        vertex: usize,
    },
    /// `edge` is the edge id (position in [`SimpleGraph::edges`]); `offset` is
    /// the path distance from the edge's first endpoint in deci-units.
    Joint {
        edge: usize,
        offset: i64,
    },
    Support {
        vertex: usize,
        role: SupportRole,
    },
}

impl Origin {
    pub fn kind(&self) -> PointKind {
        match self {
            Origin::Node { .. } => PointKind::Node,
            Origin::Joint { .. } => PointKind::Joint,
            Origin::Support { role, .. } => role.kind(),
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Node { vertex } => write!(f, "node {vertex}"),
            Origin::Joint { edge, offset } => write!(f, "joint {edge} {offset}"),
            Origin::Support { vertex, role } => write!(f, "support {vertex} {}", role.as_str()),
        }
    }
}

/// Provenance of every point of a reduced instance plus the counts `n`, `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    pub origin: Vec<Origin>,
    pub n: usize,
    pub l: usize,
    pub j_count: usize,
    pub s_count: usize,
    pub graph: SimpleGraph,
    pub embedding: GridEmbedding,
}

impl ReductionMap {
    pub fn point_count(&self) -> usize {
        self.origin.len()
    }

    /// Node point of vertex `v`. Node points carry the vertex ids.
    pub fn node_point(&self, v: usize) -> usize {
        debug_assert_eq!(self.origin[v], Origin::Node { vertex: v });
        v
    }

    /// Joint point ids, ascending.
    pub fn joints(&self) -> VertexSet {
        self.ids_where(|o| matches!(o, Origin::Joint { .. }))
    }

    /// Support point ids, ascending.
    pub fn supports(&self) -> VertexSet {
        self.ids_where(|o| matches!(o, Origin::Support { .. }))
    }

    pub fn support_point(&self, v: usize, role: SupportRole) -> usize {
        self.n + self.j_count + 3 * v + role as usize
    }

    /// Vertex of `G` whose node point is `id`, if `id` is a node point.
    pub fn vertex_of(&self, id: usize) -> Option<usize> {
        match self.origin.get(id) {
            Some(Origin::Node { vertex }) => Some(*vertex),
            _ => None,
        }
    }

    fn ids_where(&self, f: impl Fn(&Origin) -> bool) -> VertexSet {
        self.origin
            .iter()
            .enumerate()
            .filter(|(_, o)| f(o))
            .map(|(i, _)| i)
            .collect()
    }

    /// `|V'| = 4(n + l)`, `|J| = 4l`, `|S| = 3n`.
    pub fn counts_hold(&self) -> bool {
        self.j_count == 4 * self.l
            && self.s_count == 3 * self.n
            && self.point_count() == 4 * (self.n + self.l)
    }
}

/// The reduced instance with its provenance.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub instance: UdgInstance,
    pub map: ReductionMap,
}

impl Reduction {
    pub fn graph(&self) -> SimpleGraph {
        self.instance.to_graph()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JointPlacement {
    pub edge: usize,
    pub offset: i64,
    pub pos: Coord,
}

fn joint_offsets(steps: usize) -> Vec<i64> {
    if steps == 1 {
        return vec![10, 15, 25, 30];
    }
    let mut out = Vec::with_capacity(4 * steps);
    out.extend([10, 15, 25, 35]);
    for k in 1..steps - 1 {
        let base = 40 * k as i64;
        out.extend([5, 15, 25, 35].map(|d| base + d));
    }
    let base = 40 * (steps as i64 - 1);
    out.extend([5, 15, 25, 30].map(|d| base + d));
    out
}

/// Four joints per step, in (edge id, offset) order.
pub fn place_joints(dec: &StepDecomposition) -> Result<Vec<JointPlacement>> {
    let mut out = Vec::new();
    for (edge, es) in dec.edges.iter().enumerate() {
        if es.steps.is_empty() {
            return Err(Error::InvalidDecomposition(format!(
                "edge {:?} has no steps",
                es.edge
            )));
        }
        for offset in joint_offsets(es.steps.len()) {
            out.push(JointPlacement {
                edge,
                offset,
                pos: es.point_at(offset),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    PosX,
    NegX,
    PosY,
    NegY,
}

impl Direction {
    /// Scan order for choosing the support direction.
    pub const ORDER: [Direction; 4] = [
        Direction::PosX,
        Direction::NegX,
        Direction::PosY,
        Direction::NegY,
    ];

    fn unit(self) -> (i64, i64) {
        match self {
            Direction::PosX => (1, 0),
            Direction::NegX => (-1, 0),
            Direction::PosY => (0, 1),
            Direction::NegY => (0, -1),
        }
    }

    fn towards(from: Coord, to: Coord) -> Option<Direction> {
        match ((to.x - from.x).signum(), (to.y - from.y).signum()) {
            (1, 0) => Some(Direction::PosX),
            (-1, 0) => Some(Direction::NegX),
            (0, 1) => Some(Direction::PosY),
            (0, -1) => Some(Direction::NegY),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportPlacement {
    pub vertex: usize,
    pub direction: Direction,
    /// `x`, `y`, `z` in that order.
    pub points: [Coord; 3],
}

/// Picks, for every vertex, the first direction in [`Direction::ORDER`] not
/// taken by an incident edge path, and places the support chain along it.
pub fn place_supports(g: &SimpleGraph, emb: &GridEmbedding) -> Result<Vec<SupportPlacement>> {
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let at = *emb.vertex_pos.get(&v).ok_or(Error::MissingVertex(v))?;
        let mut used = Vec::new();
        for &w in g.neighbors(v) {
            let path = emb
                .path(v, w)
                .ok_or(Error::MissingEdgePath(v.min(w), v.max(w)))?;
            let next = if path[0] == at {
                path[1]
            } else {
                path[path.len() - 2]
            };
            used.extend(Direction::towards(at, next));
        }
        let direction = Direction::ORDER
            .into_iter()
            .find(|d| !used.contains(d))
            .ok_or(Error::NoFreeDirection(v))?;
        let (dx, dy) = direction.unit();
        let points = SupportRole::ALL.map(|r| at.offset(dx * r.distance(), dy * r.distance()));
        out.push(SupportPlacement {
            vertex: v,
            direction,
            points,
        });
    }
    Ok(out)
}

/// Builds `G'` from a valid embedding of `g`. Point ids: node points by vertex
/// id, then joints by (edge id, offset), then supports by (vertex, x/y/z).
/// Fails closed if the instance has any adjacency besides the gadget chains.
pub fn reduce(g: &SimpleGraph, emb: &GridEmbedding) -> Result<Reduction> {
    let red = reduce_unchecked(g, emb)?;
    match check_separation(&red.instance, &red.map) {
        Separation::Ok => Ok(red),
        bad => Err(Error::SeparationViolation(bad.to_string())),
    }
}

/// [`reduce`] without the separation check.
pub fn reduce_unchecked(g: &SimpleGraph, emb: &GridEmbedding) -> Result<Reduction> {
    for v in 0..g.vertex_count() {
        match g.degree(v) {
            0 => return Err(Error::IsolatedVertex(v)),
            d if d > 3 => {
                return Err(Error::DegreeTooHigh {
                    vertex: v,
                    degree: d,
                })
            }
            _ => {}
        }
    }
    ensure_valid(g, emb)?;
    let dec = decompose_steps(emb)?;
    let joints = place_joints(&dec)?;
    let supports = place_supports(g, emb)?;

    let n = g.vertex_count();
    let mut origin = Vec::with_capacity(n + joints.len() + 3 * n);
    let mut points = Vec::with_capacity(origin.capacity());
    let mut push = |o: Origin, pos: Coord| {
        points.push(PointRecord::new(origin.len(), o.kind(), pos));
        origin.push(o);
    };
    for v in 0..n {
        push(Origin::Node { vertex: v }, emb.vertex_pos[&v]);
    }
    for j in &joints {
        push(
            Origin::Joint {
                edge: j.edge,
                offset: j.offset,
            },
            j.pos,
        );
    }
    for s in &supports {
        for (role, pos) in SupportRole::ALL.into_iter().zip(s.points) {
            push(
                Origin::Support {
                    vertex: s.vertex,
                    role,
                },
                pos,
            );
        }
    }

    let instance = build_udg(&points)?;
    let l = dec.edges.iter().map(|e| e.steps.len()).sum();
    let map = ReductionMap {
        origin,
        n,
        l,
        j_count: joints.len(),
        s_count: 3 * supports.len(),
        graph: g.clone(),
        embedding: emb.clone(),
    };
    Ok(Reduction { instance, map })
}

/// Result of comparing a gadget instance's edges with the intended chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Ok,
    /// Two points are adjacent although no chain links them.
    Unintended {
        a: usize,
        b: usize,
        sq: i64,
    },
    /// Two consecutive chain points are not adjacent.
    Missing {
        a: usize,
        b: usize,
        sq: i64,
    },
    /// The map does not describe the instance.
    Mismatch,
}

impl Separation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Separation::Ok)
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separation::Ok => f.write_str("ok"),
            Separation::Unintended { a, b, sq } => {
                write!(f, "unintended adjacency {a}-{b} (squared distance {sq})")
            }
            Separation::Missing { a, b, sq } => {
                write!(f, "chain link {a}-{b} missing (squared distance {sq})")
            }
            Separation::Mismatch => f.write_str("provenance does not match the instance"),
        }
    }
}

/// The adjacencies the construction intends: each edge's chain
/// node, joints by offset, node; and each node's pendant `p-x-y-z`.
pub fn intended_edges(map: &ReductionMap) -> BTreeSet<(usize, usize)> {
    let edges: Vec<EdgeKey> = map.graph.edges();
    let mut chains: Vec<Vec<(i64, usize)>> = vec![Vec::new(); edges.len()];
    let mut support = vec![[usize::MAX; 3]; map.n];
    for (id, o) in map.origin.iter().enumerate() {
        match *o {
            Origin::Joint { edge, offset } if edge < edges.len() => chains[edge].push((offset, id)),
            Origin::Support { vertex, role } if vertex < map.n => {
                support[vertex][role as usize] = id
            }
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    let mut link = |a: usize, b: usize| {
        out.insert((a.min(b), a.max(b)));
    };
    for (e, chain) in chains.iter_mut().enumerate() {
        chain.sort_unstable();
        let (u, v) = edges[e];
        let ids: Vec<usize> = std::iter::once(u)
            .chain(chain.iter().map(|&(_, id)| id))
            .chain(std::iter::once(v))
            .collect();
        for w in ids.windows(2) {
            link(w[0], w[1]);
        }
    }
    for (v, [x, y, z]) in support.into_iter().enumerate() {
        link(v, x);
        link(x, y);
        link(y, z);
    }
    out
}

/// Checks that `inst`'s edge set is exactly [`intended_edges`].
pub fn check_separation(inst: &UdgInstance, map: &ReductionMap) -> Separation {
    if inst.len() != map.point_count()
        || inst
            .points()
            .iter()
            .zip(&map.origin)
            .any(|(p, o)| p.kind != o.kind())
    {
        return Separation::Mismatch;
    }
    let intended = intended_edges(map);
    if intended.iter().any(|&(a, b)| b >= inst.len() || a == b) {
        return Separation::Mismatch;
    }
    let actual: BTreeSet<(usize, usize)> = inst.edges().into_iter().collect();
    let sq = |a: usize, b: usize| sq_dist(inst.points()[a].pos, inst.points()[b].pos);
    let first_unintended = actual.difference(&intended).next().copied();
    let first_missing = intended.difference(&actual).next().copied();
    match (first_unintended, first_missing) {
        (None, None) => Separation::Ok,
        (Some((a, b)), m) if m.is_none_or(|m| (a, b) < m) => {
            Separation::Unintended { a, b, sq: sq(a, b) }
        }
        (_, Some((a, b))) => Separation::Missing { a, b, sq: sq(a, b) },
        (Some((a, b)), None) => Separation::Unintended { a, b, sq: sq(a, b) },
    }
}

/// Hand-made embeddings used throughout the tests and the acceptance suite.
pub mod instances {
    use super::*;

    fn c(x: i64, y: i64) -> Coord {
        Coord::new(x, y)
    }

    /// Instance A: `K2` as one straight step.
    pub fn k2() -> (SimpleGraph, GridEmbedding) {
        let g = SimpleGraph::complete(2);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0)]);
        (g, e)
    }

    /// Instance B: `P3` with the corner of the L at the middle vertex.
    pub fn p3() -> (SimpleGraph, GridEmbedding) {
        let g = SimpleGraph::path(3);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.place(2, c(40, 40));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0)]);
        e.insert_path(1, 2, vec![c(40, 0), c(40, 40)]);
        (g, e)
    }

    /// Instance C: `K1,3` with centre 0 and three straight one-step edges.
    pub fn k13() -> (SimpleGraph, GridEmbedding) {
        let g = SimpleGraph::star(3);
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 0));
        e.place(2, c(-40, 0));
        e.place(3, c(0, 40));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0)]);
        e.insert_path(0, 2, vec![c(0, 0), c(-40, 0)]);
        e.insert_path(0, 3, vec![c(0, 0), c(0, 40)]);
        (g, e)
    }
}

#[cfg(test)]
mod tests {
    use super::instances::*;
    use super::*;
    use crate::embedding::decompose_steps;

    fn c(x: i64, y: i64) -> Coord {
        Coord::new(x, y)
    }

    fn straight(steps: i64) -> GridEmbedding {
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40 * steps, 0));
        e.insert_path(0, 1, vec![c(0, 0), c(40 * steps, 0)]);
        e
    }

    fn offsets(e: &GridEmbedding) -> Vec<i64> {
        place_joints(&decompose_steps(e).unwrap())
            .unwrap()
            .iter()
            .map(|j| j.offset)
            .collect()
    }

    #[test]
    fn joint_offsets_match_construction() {
        assert_eq!(offsets(&straight(1)), vec![10, 15, 25, 30]);
        assert_eq!(offsets(&straight(2)), vec![10, 15, 25, 35, 45, 55, 65, 70]);
        assert_eq!(
            offsets(&straight(3)),
            vec![10, 15, 25, 35, 45, 55, 65, 75, 85, 95, 105, 110]
        );
    }

    #[test]
    fn last_step_mirrors_first_from_far_node() {
        for s in 2..6 {
            let offs = offsets(&straight(s));
            let len = 40 * s;
            let tail: Vec<i64> = offs.iter().rev().take(4).map(|o| len - o).collect();
            assert_eq!(tail, vec![10, 15, 25, 35]);
        }
    }

    #[test]
    fn support_direction_rule() {
        let (g, e) = k2();
        let s = place_supports(&g, &e).unwrap();
        // Vertex 0 leaves along +x, so its chain goes along -x.
        assert_eq!(s[0].direction, Direction::NegX);
        assert_eq!(s[0].points, [c(-2, 0), c(-12, 0), c(-14, 0)]);
        // Vertex 1's edge arrives from -x; +x is free.
        assert_eq!(s[1].direction, Direction::PosX);

        let (g, e) = k13();
        let s = place_supports(&g, &e).unwrap();
        assert_eq!(s[0].direction, Direction::NegY);

        let (g, e) = p3();
        let s = place_supports(&g, &e).unwrap();
        // Vertex 2's edge leaves along -y; first free direction is +x.
        assert_eq!(s[2].direction, Direction::PosX);
    }

    #[test]
    fn instance_sizes() {
        for ((g, e), total, n, l) in [(k2(), 12, 2, 1), (p3(), 20, 3, 2), (k13(), 28, 4, 3)] {
            let r = reduce(&g, &e).unwrap();
            assert_eq!(r.instance.len(), total);
            assert_eq!((r.map.n, r.map.l), (n, l));
            assert_eq!(r.map.j_count, 4 * l);
            assert_eq!(r.map.s_count, 3 * n);
            assert!(r.map.counts_hold());
        }
    }

    #[test]
    fn instance_a_is_a_twelve_point_path() {
        let (g, e) = k2();
        let r = reduce(&g, &e).unwrap();
        let inst = &r.instance;
        assert_eq!(inst.edges().len(), 11);
        assert_eq!(inst.max_closed_degree().unwrap(), 3);
        // p0, its support x, and the joint at offset 10.
        let n0 = inst.closed_neighborhood(0).unwrap();
        assert_eq!(n0.len(), 3);
        assert!(n0.contains(&r.map.support_point(0, SupportRole::X)));
        assert!(n0.contains(&2));
        assert_eq!(
            r.map.origin[2],
            Origin::Joint {
                edge: 0,
                offset: 10
            }
        );
    }

    #[test]
    fn star_centre_has_closed_degree_five() {
        let (g, e) = k13();
        let r = reduce(&g, &e).unwrap();
        assert_eq!(r.instance.closed_neighborhood(0).unwrap().len(), 5);
        assert_eq!(r.instance.max_closed_degree().unwrap(), 5);
    }

    #[test]
    fn near_miss_and_bend_distances() {
        // Joint at offset 10 on a +x edge against a support x placed along +y.
        assert_eq!(sq_dist(c(10, 0), c(0, 2)), 104);
        let (g, e) = p3();
        let r = reduce(&g, &e).unwrap();
        // Across the bend at vertex 1 the chain passes through the node, so the
        // closest cross-edge joints are the two offset-10 joints at 200.
        let j = |edge: usize, offset: i64| {
            r.map
                .origin
                .iter()
                .position(|o| *o == Origin::Joint { edge, offset })
                .unwrap()
        };
        let a = r.instance.points()[j(0, 30)].pos;
        let b = r.instance.points()[j(1, 10)].pos;
        assert_eq!(sq_dist(a, b), 200);
    }

    #[test]
    fn bend_joints_are_linked() {
        let mut e = GridEmbedding::new();
        e.place(0, c(0, 0));
        e.place(1, c(40, 40));
        e.insert_path(0, 1, vec![c(0, 0), c(40, 0), c(40, 40)]);
        let g = SimpleGraph::complete(2);
        let r = reduce(&g, &e).unwrap();
        let pos = |off: i64| {
            r.instance.points()[r
                .map
                .origin
                .iter()
                .position(|o| {
                    *o == Origin::Joint {
                        edge: 0,
                        offset: off,
                    }
                })
                .unwrap()]
            .pos
        };
        assert_eq!(sq_dist(pos(35), pos(45)), 50);
        assert!(check_separation(&r.instance, &r.map).is_ok());
    }

    #[test]
    fn corrupted_instance_is_caught() {
        let (g, e) = k2();
        let r = reduce(&g, &e).unwrap();
        // Move the joint at offset 15 five deci-units towards node 0.
        let mut pts = r.instance.points().to_vec();
        pts[3].pos = c(10 - 5, 0);
        let bad = build_udg(&pts).unwrap();
        assert!(matches!(
            check_separation(&bad, &r.map),
            Separation::Unintended { a: 0, b: 3, sq: 25 }
        ));
    }

    #[test]
    fn reduce_rejects_invalid_embedding() {
        let (g, mut e) = k2();
        e.place(1, c(41, 0));
        assert!(matches!(reduce(&g, &e), Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn deterministic() {
        let (g, e) = k13();
        let a = reduce(&g, &e).unwrap();
        let b = reduce(&g, &e).unwrap();
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.map, b.map);
    }
}
