//! Exact fixed-point plane geometry and unit disk graph construction.
//!
//! Coordinates are integers in deci-units: one unit of length (the disk
//! diameter) is [`SCALE`] deci-units. Two points are adjacent iff their squared
//! distance is at most [`UNIT_SQ`]. No floating point is involved anywhere on
//! the adjacency path.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Deci-units per unit of length.
pub const SCALE: i64 = 10;

/// Squared adjacency threshold in deci-units squared (distance 1).
pub const UNIT_SQ: i64 = SCALE * SCALE;

/// Largest accepted absolute coordinate. Differences stay below 2^31 and the
/// sum of two squared differences below 2^63.
pub const COORD_LIMIT: i64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Self {
        Coord { x, y }
    }

    pub fn in_range(self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }

    pub fn checked(self) -> Result<Self> {
        if self.in_range() {
            Ok(self)
        } else {
            Err(Error::CoordOutOfRange(self))
        }
    }

    pub(crate) fn offset(self, dx: i64, dy: i64) -> Coord {
        Coord::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Squared Euclidean distance in deci-units squared.
///
/// Both coordinates must lie within [`COORD_LIMIT`]; every constructor in this
/// crate enforces that bound, so the arithmetic cannot overflow.
#[inline]
pub fn sq_dist(a: Coord, b: Coord) -> i64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Unit disk adjacency: distance at most one unit.
#[inline]
pub fn are_adjacent(a: Coord, b: Coord) -> bool {
    sq_dist(a, b) <= UNIT_SQ
}

/// Role of a point in a gadget instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Node,
    Joint,
    SupportX,
    SupportY,
    SupportZ,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Node => "node",
            PointKind::Joint => "joint",
            PointKind::SupportX => "sx",
            PointKind::SupportY => "sy",
            PointKind::SupportZ => "sz",
        }
    }

    pub fn is_support(self) -> bool {
        matches!(
            self,
            PointKind::SupportX | PointKind::SupportY | PointKind::SupportZ
        )
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PointKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Ok(match s {
            "node" => PointKind::Node,
            "joint" => PointKind::Joint,
            "sx" => PointKind::SupportX,
            "sy" => PointKind::SupportY,
            "sz" => PointKind::SupportZ,
            _ => return Err(()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointRecord {
    pub id: usize,
    pub kind: PointKind,
    pub pos: Coord,
}

impl PointRecord {
    pub fn new(id: usize, kind: PointKind, pos: Coord) -> Self {
        PointRecord { id, kind, pos }
    }
}

/// A point set together with its unit disk adjacency.
///
/// Points are stored in id order; `points()[i].id == i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdgInstance {
    points: Vec<PointRecord>,
    adj: Vec<Vec<usize>>,
}

impl UdgInstance {
    /// Squared threshold used by every instance.
    pub const UNIT_THRESHOLD_SQ: i64 = UNIT_SQ;

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PointRecord] {
        &self.points
    }

    pub fn point(&self, id: usize) -> Result<&PointRecord> {
        self.points.get(id).ok_or(Error::UnknownId(id))
    }

    /// Open neighbours of `id`, ascending.
    pub fn neighbors(&self, id: usize) -> Result<&[usize]> {
        self.adj
            .get(id)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownId(id))
    }

    /// `N[p]`: the point itself plus every point within unit distance, ascending.
    pub fn closed_neighborhood(&self, id: usize) -> Result<Vec<usize>> {
        let open = self.neighbors(id)?;
        let mut out = Vec::with_capacity(open.len() + 1);
        out.extend(open.iter().copied().filter(|&q| q < id));
        out.push(id);
        out.extend(open.iter().copied().filter(|&q| q > id));
        Ok(out)
    }

    /// `Δ = max |N[p]|`.
    pub fn max_closed_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(|a| a.len() + 1)
            .max()
            .ok_or(Error::EmptyInstance)
    }

    /// All edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    pub fn to_graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.len(), self.edges()).expect("udg adjacency is a simple graph")
    }

    /// Ids of the points of a given kind, ascending.
    pub fn ids_of_kind(&self, kind: PointKind) -> Vec<usize> {
        self.points
            .iter()
            .filter(|p| p.kind == kind)
            .map(|p| p.id)
            .collect()
    }
}

/// Builds the unit disk graph of a point set by exhaustive pairwise comparison.
///
/// The input may be in any order; ids must be exactly `0..len` and positions
/// pairwise distinct.
pub fn build_udg(points: &[PointRecord]) -> Result<UdgInstance> {
    let n = points.len();
    let mut slots: Vec<Option<PointRecord>> = vec![None; n];
    for p in points {
        p.pos.checked()?;
        if p.id >= n {
            // Some smaller id must then be missing.
            let missing = (0..n)
                .find(|&i| !points.iter().any(|q| q.id == i))
                .unwrap_or(n);
            return Err(Error::SparseIds { missing });
        }
        if slots[p.id].is_some() {
            return Err(Error::DuplicateId(p.id));
        }
        slots[p.id] = Some(*p);
    }
    let points: Vec<PointRecord> = slots.into_iter().map(|p| p.expect("dense ids")).collect();

    let mut seen: HashMap<Coord, usize> = HashMap::with_capacity(n);
    for p in &points {
        if let Some(&first) = seen.get(&p.pos) {
            return Err(Error::DuplicatePosition {
                first,
                second: p.id,
                pos: p.pos,
            });
        }
        seen.insert(p.pos, p.id);
    }

    let mut adj = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if are_adjacent(points[a].pos, points[b].pos) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for nb in &mut adj {
        nb.sort_unstable();
    }
    Ok(UdgInstance { points, adj })
}
