use std::time::Instant;

use super::{Problem, SolveResult, Stats, Status};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::{liars_feasible, Feasibility, SimpleGraph, VertexSet};

/// Insertion order of the greedy liar's heuristic: starting from the empty set,
/// repeatedly add the vertex with the largest drop in
/// [`deficiency`](super::deficiency), smallest id on ties, until it reaches zero.
///
/// Every unmet term drops by exactly one when a member of its neighbourhood is
/// added, so the drop of `v` is the number of unmet terms whose neighbourhood
/// contains `v`.
pub fn greedy_order(g: &SimpleGraph) -> Result<Vec<usize>> {
    if let Feasibility::SmallComponent(c) = liars_feasible(g) {
        return Err(Error::Infeasible(format!(
            "component {c:?} has fewer than 3 vertices"
        )));
    }
    let n = g.vertex_count();
    let nb = g.closed_bits();
    let unions: Vec<(usize, usize, Bits)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| (u, v, nb[u].or(&nb[v])))
        .collect();
    let mut d = Bits::zeros(n);
    let mut order = Vec::new();
    loop {
        let mut gain = vec![0u64; n];
        let mut unmet = false;
        for b in &nb {
            if b.count_and(&d) < 2 {
                unmet = true;
                b.iter().for_each(|v| gain[v] += 1);
            }
        }
        for (_, _, b) in &unions {
            if b.count_and(&d) < 3 {
                unmet = true;
                b.iter().for_each(|v| gain[v] += 1);
            }
        }
        if !unmet {
            return Ok(order);
        }
        let best = (0..n)
            .filter(|&v| !d.get(v))
            .max_by_key(|&v| (gain[v], std::cmp::Reverse(v)))
            .expect("feasible instance with unmet terms has a free vertex");
        debug_assert!(gain[best] > 0);
        d.set(best);
        order.push(best);
    }
}

/// Greedy liar's dominating set; status is always `FeasibleOnly`.
pub fn greedy_lds(g: &SimpleGraph) -> Result<SolveResult> {
    let start = Instant::now();
    let order = greedy_order(g)?;
    Ok(SolveResult {
        stats: Stats {
            nodes_expanded: order.len() as u64,
            elapsed: start.elapsed(),
            ..Stats::default()
        },
        solution: Some(order.into_iter().collect()),
        status: Status::FeasibleOnly,
    })
}

/// Greedy for either problem. For `ds` each step adds the vertex that
/// dominates the most undominated vertices.
pub fn greedy(problem: Problem, g: &SimpleGraph) -> Result<SolveResult> {
    if problem == Problem::Lds {
        return greedy_lds(g);
    }
    let start = Instant::now();
    let n = g.vertex_count();
    let nb = g.closed_bits();
    let mut dominated = vec![false; n];
    let mut set = VertexSet::new();
    while let Some(v) = (0..n)
        .filter(|&v| !set.contains(v))
        .map(|v| (nb[v].iter().filter(|&w| !dominated[w]).count(), v))
        .filter(|&(gain, _)| gain > 0)
        .max_by_key(|&(gain, v)| (gain, std::cmp::Reverse(v)))
        .map(|(_, v)| v)
    {
        set.insert(v);
        for w in nb[v].iter() {
            dominated[w] = true;
        }
    }
    Ok(SolveResult {
        stats: Stats {
            nodes_expanded: set.len() as u64,
            elapsed: start.elapsed(),
            ..Stats::default()
        },
        solution: Some(set),
        status: Status::FeasibleOnly,
    })
}
