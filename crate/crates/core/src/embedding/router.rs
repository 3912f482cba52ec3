//! Desk-scale orthogonal router for planar graphs of maximum degree 3.
//!
//! Vertices are placed by breadth-first layering (layer = column, rank within
//! the layer = row). Edges are then routed one at a time by a cheapest-path
//! search over free lattice points, where cells next to a vertex other than
//! the two endpoints cost extra so that ports stay open. When an edge cannot
//! be routed it is moved to the front of the insertion order and routing
//! restarts. Once an order repeats, the next layout is tried: every spacing,
//! and for each spacing every breadth-first root. This is a heuristic: failure
//! is not evidence of non-planarity.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::{ensure_valid, GridEmbedding, GRID};
use crate::error::{Error, Result};
use crate::geometry::Coord;
use crate::graph::SimpleGraph;

/// Maximum number of full routing attempts across all spacings.
pub const DEFAULT_ROUTER_BUDGET: usize = 4000;

const SPACINGS: [i64; 4] = [1, 2, 3, 4];

/// Extra cost of entering a cell next to a vertex that is not an endpoint.
const PORT_PENALTY: u32 = 4;

/// Embeds `g` on the lattice with [`DEFAULT_ROUTER_BUDGET`].
pub fn embed_graph(g: &SimpleGraph) -> Result<GridEmbedding> {
    embed_graph_with_budget(g, DEFAULT_ROUTER_BUDGET)
}

pub fn embed_graph_with_budget(g: &SimpleGraph, budget: usize) -> Result<GridEmbedding> {
    for v in 0..g.vertex_count() {
        let d = g.degree(v);
        if d > 3 {
            return Err(Error::DegreeTooHigh {
                vertex: v,
                degree: d,
            });
        }
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
    }

    let edges = g.edges();
    let mut attempts = 0usize;
    let layouts = SPACINGS
        .iter()
        .flat_map(|&s| (0..g.vertex_count()).map(move |root| (s, root)));
    for (spacing, root) in layouts {
        if attempts >= budget {
            break;
        }
        let cells = layout(g, spacing, root);
        let mut order: Vec<usize> = (0..edges.len()).collect();
        let mut seen_orders = HashSet::new();
        while attempts < budget && seen_orders.insert(order.clone()) {
            attempts += 1;
            match route_all(&cells, &edges, &order, spacing) {
                Ok(emb) => {
                    if ensure_valid(g, &emb).is_ok() {
                        return Ok(emb);
                    }
                    break;
                }
                Err(failed_at) => {
                    let e = order.remove(failed_at);
                    order.insert(0, e);
                }
            }
        }
    }
    Err(Error::RoutingFailed { attempts })
}

type Cell = (i64, i64);

/// Lattice cell of every vertex. Breadth-first search starts at `root`, then
/// at the smallest unplaced vertex; components are stacked vertically.
fn layout(g: &SimpleGraph, spacing: i64, root: usize) -> Vec<Cell> {
    let n = g.vertex_count();
    let mut cell = vec![(0, 0); n];
    let mut placed = vec![false; n];
    let mut row_base = 0;
    for start in std::iter::once(root).chain(0..n) {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        let mut layers: Vec<Vec<usize>> = vec![vec![start]];
        loop {
            let mut next = Vec::new();
            for &u in layers.last().unwrap() {
                for &w in g.neighbors(u) {
                    if !placed[w] {
                        placed[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        let mut tallest = 0;
        for (col, layer) in layers.iter().enumerate() {
            for (row, &v) in layer.iter().enumerate() {
                cell[v] = (col as i64 * spacing, row_base + row as i64 * spacing);
            }
            tallest = tallest.max(layer.len() as i64);
        }
        row_base += tallest * spacing + spacing;
    }
    cell
}

/// Routes every edge in `order`. On failure returns the position in `order`
/// of the edge that could not be routed.
fn route_all(
    cells: &[Cell],
    edges: &[(usize, usize)],
    order: &[usize],
    spacing: i64,
) -> std::result::Result<GridEmbedding, usize> {
    let margin = 2 + spacing;
    let min_x = cells.iter().map(|c| c.0).min().unwrap_or(0) - margin;
    let max_x = cells.iter().map(|c| c.0).max().unwrap_or(0) + margin;
    let min_y = cells.iter().map(|c| c.1).min().unwrap_or(0) - margin;
    let max_y = cells.iter().map(|c| c.1).max().unwrap_or(0) + margin;
    let bounds = Bounds {
        min_x,
        max_x,
        min_y,
        max_y,
    };

    let mut blocked: HashSet<Cell> = cells.iter().copied().collect();
    let mut emb = GridEmbedding::new();
    for (v, &(x, y)) in cells.iter().enumerate() {
        emb.place(v, Coord::new(x * GRID, y * GRID));
    }
    for (pos, &eid) in order.iter().enumerate() {
        let (u, v) = edges[eid];
        let Some(route) = cheapest_route(cells[u], cells[v], cells, &blocked, &bounds) else {
            return Err(pos);
        };
        for &c in &route[1..route.len() - 1] {
            blocked.insert(c);
        }
        let path = compress(&route)
            .into_iter()
            .map(|(x, y)| Coord::new(x * GRID, y * GRID))
            .collect();
        emb.insert_path(u, v, path);
    }
    Ok(emb)
}

struct Bounds {
    min_x: i64,
    max_x: i64,
    min_y: i64,
    max_y: i64,
}

impl Bounds {
    fn contains(&self, c: Cell) -> bool {
        (self.min_x..=self.max_x).contains(&c.0) && (self.min_y..=self.max_y).contains(&c.1)
    }

    fn index(&self, c: Cell) -> usize {
        let w = (self.max_x - self.min_x + 1) as usize;
        (c.1 - self.min_y) as usize * w + (c.0 - self.min_x) as usize
    }

    fn size(&self) -> usize {
        ((self.max_x - self.min_x + 1) * (self.max_y - self.min_y + 1)) as usize
    }
}

/// Cheapest path from `from` to `to` through unblocked cells. Each step costs
/// 1, plus [`PORT_PENALTY`] when it lands next to a vertex other than the two
/// endpoints. Ties resolve towards lower x, then lower y.
fn cheapest_route(
    from: Cell,
    to: Cell,
    vertices: &[Cell],
    blocked: &HashSet<Cell>,
    bounds: &Bounds,
) -> Option<Vec<Cell>> {
    let near_other = |c: Cell| {
        vertices
            .iter()
            .any(|&w| w != from && w != to && (w.0 - c.0).abs() + (w.1 - c.1).abs() == 1)
    };
    let mut parent: Vec<Option<Cell>> = vec![None; bounds.size()];
    let mut dist = vec![u32::MAX; bounds.size()];
    dist[bounds.index(from)] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u32, from))]);
    while let Some(Reverse((d, c))) = heap.pop() {
        if d > dist[bounds.index(c)] {
            continue;
        }
        if c == to {
            let mut route = vec![to];
            let mut at = to;
            while let Some(p) = parent[bounds.index(at)] {
                route.push(p);
                at = p;
            }
            route.reverse();
            return Some(route);
        }
        let (x, y) = c;
        for nb in [(x - 1, y), (x, y - 1), (x, y + 1), (x + 1, y)] {
            if !bounds.contains(nb) || (nb != to && blocked.contains(&nb)) {
                continue;
            }
            let step = if nb != to && near_other(nb) {
                1 + PORT_PENALTY
            } else {
                1
            };
            let nd = d + step;
            let i = bounds.index(nb);
            if nd < dist[i] {
                dist[i] = nd;
                parent[i] = Some(c);
                heap.push(Reverse((nd, nb)));
            }
        }
    }
    None
}

/// Drops collinear interior cells, keeping endpoints and bends.
fn compress(route: &[Cell]) -> Vec<Cell> {
    let mut out = vec![route[0]];
    for w in route.windows(3) {
        let d1 = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let d2 = (w[2].0 - w[1].0, w[2].1 - w[1].1);
        if d1 != d2 {
            out.push(w[1]);
        }
    }
    out.push(*route.last().unwrap());
    out
}
