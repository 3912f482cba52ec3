//! Branch and bound over covering constraints.
//!
//! Both problems are covering problems: each constraint is a vertex set with a
//! demand. Dominating set has `(N[v], 1)` per vertex. Liar's domination has
//! `(N[v], 2)` per vertex and `(N[u] ∪ N[v], 3)` per pair with intersecting
//! closed neighbourhoods; disjoint pairs are implied by the vertex constraints.

use std::time::Instant;

use super::{greedy, Budget, Problem, SolveResult, Stats, Status};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexSet};

struct Constraint {
    members: Vec<usize>,
    demand: u32,
}

fn constraints(problem: Problem, g: &SimpleGraph) -> Vec<Constraint> {
    let n = g.vertex_count();
    let nb = g.closed_bits();
    let mut out: Vec<Constraint> = nb
        .iter()
        .map(|b| Constraint {
            members: b.iter().collect(),
            demand: if problem == Problem::Ds { 1 } else { 2 },
        })
        .collect();
    if problem == Problem::Lds {
        for u in 0..n {
            for v in u + 1..n {
                if nb[u].intersects(&nb[v]) {
                    out.push(Constraint {
                        members: nb[u].or(&nb[v]).iter().collect(),
                        demand: 3,
                    });
                }
            }
        }
    }
    out
}

/// Vertices that every liar's dominating set must contain, or `None` when a
/// constraint can never be met (`|N[v]| = 1`, or `|N[u] ∪ N[v]| ≤ 2`).
///
/// `|N[v]| = 2` forces both members; `|N[u] ∪ N[v]| = 3` forces all three.
pub fn forced_vertices(g: &SimpleGraph) -> Option<VertexSet> {
    forced(&constraints(Problem::Lds, g))
}

fn forced(cons: &[Constraint]) -> Option<VertexSet> {
    let mut out = VertexSet::new();
    for c in cons {
        let size = c.members.len() as u32;
        if size < c.demand {
            return None;
        }
        if size == c.demand {
            for &v in &c.members {
                out.insert(v);
            }
        }
    }
    Some(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

struct Search<'a> {
    cons: &'a [Constraint],
    by_vertex: Vec<Vec<usize>>,
    state: Vec<State>,
    chosen: usize,
    have: Vec<u32>,
    free: Vec<u32>,
    /// Σ max(0, demand - have).
    remaining: u64,
    best: Option<Vec<usize>>,
    best_size: usize,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn set(&mut self, v: usize, s: State) {
        self.state[v] = s;
        if s == State::In {
            self.chosen += 1;
        }
        for &c in &self.by_vertex[v] {
            self.free[c] -= 1;
            if s == State::In {
                if self.have[c] < self.cons[c].demand {
                    self.remaining -= 1;
                }
                self.have[c] += 1;
            }
        }
    }

    fn unset(&mut self, v: usize) {
        let s = self.state[v];
        self.state[v] = State::Free;
        if s == State::In {
            self.chosen -= 1;
        }
        for &c in &self.by_vertex[v] {
            self.free[c] += 1;
            if s == State::In {
                self.have[c] -= 1;
                if self.have[c] < self.cons[c].demand {
                    self.remaining += 1;
                }
            }
        }
    }

    /// `ceil(remaining / max gain)`, where the gain of a free vertex is the
    /// number of unmet constraints it belongs to. Adding a vertex lowers each
    /// unmet constraint by at most one, and gains never grow as the set grows.
    fn lower_bound(&self) -> Option<u64> {
        if self.remaining == 0 {
            return Some(0);
        }
        let gain = (0..self.state.len())
            .filter(|&v| self.state[v] == State::Free)
            .map(|v| {
                self.by_vertex[v]
                    .iter()
                    .filter(|&&c| self.have[c] < self.cons[c].demand)
                    .count() as u64
            })
            .max()
            .unwrap_or(0);
        (gain > 0).then(|| self.remaining.div_ceil(gain))
    }

    fn run(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        let Some(lb) = self.lower_bound() else {
            return Ok(());
        };
        if self.chosen as u64 + lb >= self.best_size as u64 {
            return Ok(());
        }
        if self.remaining == 0 {
            self.best_size = self.chosen;
            self.best = Some(
                (0..self.state.len())
                    .filter(|&v| self.state[v] == State::In)
                    .collect(),
            );
            return Ok(());
        }

        // Most constrained unmet constraint: least slack between free members
        // and missing demand; ties go to the lower constraint index.
        let mut pick: Option<(i64, usize)> = None;
        for (c, con) in self.cons.iter().enumerate() {
            if self.have[c] >= con.demand {
                continue;
            }
            let slack = self.free[c] as i64 - (con.demand - self.have[c]) as i64;
            if slack < 0 {
                return Ok(());
            }
            if pick.is_none_or(|(s, _)| slack < s) {
                pick = Some((slack, c));
            }
        }
        let (_, c) = pick.expect("an unmet constraint exists while remaining > 0");
        let v = *self.cons[c]
            .members
            .iter()
            .find(|&&v| self.state[v] == State::Free)
            .expect("slack is non-negative, so a free member exists");

        self.set(v, State::In);
        let r = self.run();
        self.unset(v);
        r?;
        self.set(v, State::Out);
        let r = self.run();
        self.unset(v);
        r
    }
}

/// Exact minimum for either problem by depth-first in/out branching.
pub fn branch_and_bound(problem: Problem, g: &SimpleGraph, budget: Budget) -> Result<SolveResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    let cons = constraints(problem, g);
    let mut stats = Stats::default();

    let Some(forced) = forced(&cons) else {
        stats.elapsed = start.elapsed();
        return Ok(SolveResult {
            solution: None,
            status: Status::ProvenMinimum,
            stats,
        });
    };

    let mut by_vertex = vec![Vec::new(); n];
    for (c, con) in cons.iter().enumerate() {
        for &v in &con.members {
            by_vertex[v].push(c);
        }
    }
    // The greedy answer seeds the incumbent; it is always feasible here.
    let incumbent = greedy(problem, g)?;
    let seed: Vec<usize> = incumbent
        .solution
        .as_ref()
        .map(|s| s.iter().collect())
        .unwrap_or_else(|| (0..n).collect());

    let mut search = Search {
        cons: &cons,
        by_vertex,
        state: vec![State::Free; n],
        chosen: 0,
        have: vec![0; cons.len()],
        free: cons.iter().map(|c| c.members.len() as u32).collect(),
        remaining: cons.iter().map(|c| c.demand as u64).sum(),
        best_size: seed.len(),
        best: Some(seed),
        nodes: 0,
        limit: budget.max_nodes,
    };
    for v in forced.iter() {
        search.set(v, State::In);
    }
    search.run()?;

    stats.nodes_expanded = search.nodes;
    stats.elapsed = start.elapsed();
    Ok(SolveResult {
        solution: search.best.map(|b| b.into_iter().collect()),
        status: Status::ProvenMinimum,
        stats,
    })
}

/// Exact minimum liar's dominating set.
pub fn branch_and_bound_lds(g: &SimpleGraph, budget: Budget) -> Result<SolveResult> {
    branch_and_bound(Problem::Lds, g, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_dominating, is_liars_dominating};
    use crate::reduction::{instances, reduce};
    use crate::solvers::{brute_force_minimum, prove_no_solution_of_size, solutions_of_size};
    use proptest::prelude::*;

    fn random_graph(n: usize, mask: &[bool]) -> SimpleGraph {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask[k] {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        SimpleGraph::new(n, edges).unwrap()
    }

    #[test]
    fn k2_is_infeasible_by_forcing() {
        let g = SimpleGraph::complete(2);
        assert!(forced_vertices(&g).is_none());
        assert!(branch_and_bound_lds(&g, Budget::default())
            .unwrap()
            .is_infeasible());
    }

    #[test]
    fn forcing_on_a_path() {
        // Leaves force their neighbour; the end pairs force three vertices.
        let f = forced_vertices(&SimpleGraph::path(5)).unwrap();
        assert_eq!(f, [0, 1, 2, 3, 4].into_iter().collect());
    }

    #[test]
    fn gadget_instances_match_brute_force() {
        let (g, e) = instances::k2();
        let ga = reduce(&g, &e).unwrap().graph();
        let r = branch_and_bound_lds(&ga, Budget::default()).unwrap();
        assert_eq!(r.size(), Some(10));
        assert!(is_liars_dominating(&ga, r.solution.as_ref().unwrap())
            .unwrap()
            .ok());

        // Instance B: certified by a witness plus exhaustion one size below.
        let (g, e) = instances::p3();
        let gb = reduce(&g, &e).unwrap().graph();
        let r = branch_and_bound_lds(&gb, Budget::default()).unwrap();
        let k = r.size().unwrap();
        assert!(is_liars_dominating(&gb, r.solution.as_ref().unwrap())
            .unwrap()
            .ok());
        assert!(prove_no_solution_of_size(Problem::Lds, &gb, k - 1, Budget::default()).unwrap());
        assert_eq!(k, 16);
    }

    #[test]
    fn dominating_set_on_star() {
        let r = branch_and_bound(Problem::Ds, &SimpleGraph::star(3), Budget::default()).unwrap();
        assert_eq!(r.size(), Some(1));
        assert!(
            is_dominating(&SimpleGraph::star(3), r.solution.as_ref().unwrap())
                .unwrap()
                .ok()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_brute_force(n in 1usize..=10, mask in proptest::collection::vec(any::<bool>(), 45)) {
            let g = random_graph(n, &mask);
            for problem in [Problem::Ds, Problem::Lds] {
                let a = branch_and_bound(problem, &g, Budget::default()).unwrap();
                let b = brute_force_minimum(problem, &g, Budget::default()).unwrap();
                prop_assert_eq!(a.size(), b.size());
            }
        }

        #[test]
        fn forced_vertices_are_in_every_minimum_solution(n in 1usize..=9, mask in proptest::collection::vec(any::<bool>(), 36)) {
            let g = random_graph(n, &mask);
            let best = brute_force_minimum(Problem::Lds, &g, Budget::default()).unwrap();
            match (forced_vertices(&g), best.size()) {
                (None, size) => prop_assert_eq!(size, None),
                (Some(f), Some(k)) => {
                    for sol in solutions_of_size(Problem::Lds, &g, k, Budget::default()).unwrap() {
                        prop_assert!(f.is_subset(&sol));
                    }
                }
                (Some(_), None) => prop_assert!(false, "forcing missed an infeasible instance"),
            }
        }
    }
}
