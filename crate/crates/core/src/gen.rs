//! Seeded instance generators.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{GridEmbedding, GRID};
use crate::geometry::{Coord, PointKind, PointRecord};
use crate::graph::SimpleGraph;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected planar graph of maximum degree 3 on `n >= 2` vertices, sampled
/// as a subgraph of a square grid, together with its straight one-step grid
/// embedding.
///
/// Cells are grown from the centre one at a time, each attached to an already
/// chosen neighbour of degree below 3; then every remaining lattice edge
/// between chosen cells is kept with probability 1/2 when both ends still have
/// degree below 3.
pub fn planar_grid_graph(seed: u64, n: usize) -> (SimpleGraph, GridEmbedding) {
    assert!(n >= 2, "need at least two vertices");
    let mut r = rng(seed);
    let side = (n as f64).sqrt().ceil() as i64 + 2;
    let mut cell_of: Vec<(i64, i64)> = vec![(side / 2, side / 2)];
    let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::from([((side / 2, side / 2), 0)]);
    let mut deg = vec![0usize];
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let around = |(x, y): (i64, i64)| [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)];

    while cell_of.len() < n {
        // Free cells next to a chosen cell that can still take an edge.
        let mut frontier: Vec<((i64, i64), usize)> = Vec::new();
        for (i, &c) in cell_of.iter().enumerate() {
            if deg[i] >= 3 {
                continue;
            }
            for nb in around(c) {
                let inside = (0..side).contains(&nb.0) && (0..side).contains(&nb.1);
                if inside && !index.contains_key(&nb) {
                    frontier.push((nb, i));
                }
            }
        }
        let &(cell, parent) = frontier
            .choose(&mut r)
            .expect("grid side leaves room for n cells");
        let id = cell_of.len();
        cell_of.push(cell);
        index.insert(cell, id);
        deg.push(1);
        deg[parent] += 1;
        edges.insert((parent.min(id), parent.max(id)));
    }

    for (i, &c) in cell_of.iter().enumerate() {
        for nb in around(c) {
            let Some(&j) = index.get(&nb) else { continue };
            if j <= i || edges.contains(&(i, j)) {
                continue;
            }
            if deg[i] < 3 && deg[j] < 3 && r.gen_bool(0.5) {
                edges.insert((i, j));
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }

    let g = SimpleGraph::new(n, edges.iter().copied()).expect("grid edges are simple");
    let mut emb = GridEmbedding::new();
    let pos = |c: (i64, i64)| Coord::new(c.0 * GRID, c.1 * GRID);
    for (v, &c) in cell_of.iter().enumerate() {
        emb.place(v, pos(c));
    }
    for &(u, v) in &edges {
        emb.insert_path(u, v, vec![pos(cell_of[u]), pos(cell_of[v])]);
    }
    (g, emb)
}

/// `count` distinct points with coordinates in `0..side` (deci-units).
pub fn random_points(seed: u64, count: usize, side: i64) -> Vec<PointRecord> {
    assert!(
        (count as i64) <= side * side,
        "not enough room for distinct points"
    );
    let mut r = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = Coord::new(r.gen_range(0..side), r.gen_range(0..side));
        if seen.insert(c) {
            out.push(PointRecord::new(out.len(), PointKind::Node, c));
        }
    }
    out
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(seed: u64, n: usize, p: f64) -> SimpleGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("gnp edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_embedding;

    #[test]
    fn grid_graphs_are_connected_planar_and_embedded() {
        for seed in 0..50 {
            for n in [2, 3, 5, 8, 12] {
                let (g, e) = planar_grid_graph(seed, n);
                assert_eq!(g.vertex_count(), n);
                assert!(g.max_degree() <= 3);
                assert_eq!(g.components().len(), 1);
                assert!(validate_embedding(&g, &e).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn generators_are_seeded() {
        assert_eq!(planar_grid_graph(7, 8), planar_grid_graph(7, 8));
        assert_eq!(random_points(3, 20, 50), random_points(3, 20, 50));
        assert_eq!(gnp(1, 9, 0.3), gnp(1, 9, 0.3));
        let pts = random_points(3, 20, 50);
        let distinct: BTreeSet<_> = pts.iter().map(|p| p.pos).collect();
        assert_eq!(distinct.len(), 20);
    }
}
