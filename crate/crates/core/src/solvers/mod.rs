//! Exact and heuristic solvers for minimum dominating set (`ds`) and minimum
//! liar's dominating set (`lds`).

mod bnb;
mod brute;
mod greedy;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::bits::Bits;
use crate::error::Result;
use crate::graph::{LiarsChecker, SimpleGraph, VertexSet};

pub use bnb::{branch_and_bound, branch_and_bound_lds, forced_vertices};
pub use brute::{
    all_minimum_solutions, brute_force_minimum, prove_no_solution_of_size, solutions_of_size,
};
pub use greedy::{greedy, greedy_lds, greedy_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Ds,
    Lds,
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ds" => Ok(Problem::Ds),
            "lds" => Ok(Problem::Lds),
            other => Err(format!("unknown problem `{other}` (expected ds or lds)")),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Ds => "ds",
            Problem::Lds => "lds",
        })
    }
}

/// Work limits. Exceeding either one aborts with `BudgetExceeded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_subsets: u64,
    pub max_nodes: u64,
}

impl Budget {
    pub const fn new(limit: u64) -> Self {
        Budget {
            max_subsets: limit,
            max_nodes: limit,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(1 << 28)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    ProvenMinimum,
    FeasibleOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ProvenMinimum => "proven_minimum",
            Status::FeasibleOnly => "feasible_only",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub subsets_examined: u64,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// `None` when the instance is infeasible (with `ProvenMinimum`, proven so).
    pub solution: Option<VertexSet>,
    pub status: Status,
    pub stats: Stats,
}

impl SolveResult {
    pub fn size(&self) -> Option<usize> {
        self.solution.as_ref().map(VertexSet::len)
    }

    pub fn is_infeasible(&self) -> bool {
        self.solution.is_none()
    }
}

/// Feasibility test for one problem over bitset candidates.
pub(crate) enum Checker {
    Ds(Vec<Bits>),
    Lds(LiarsChecker),
}

impl Checker {
    pub(crate) fn new(problem: Problem, g: &SimpleGraph) -> Self {
        match problem {
            Problem::Ds => Checker::Ds(g.closed_bits()),
            Problem::Lds => Checker::Lds(LiarsChecker::new(g)),
        }
    }

    #[inline]
    pub(crate) fn check(&self, d: &Bits) -> bool {
        match self {
            Checker::Ds(nb) => nb.iter().all(|b| b.count_and(d) >= 1),
            Checker::Lds(c) => c.check(d),
        }
    }
}

/// Total unmet liar's demand:
/// `Σ_v max(0, 2 - |N[v] ∩ d|) + Σ_{u<v} max(0, 3 - |(N[u] ∪ N[v]) ∩ d|)`.
/// Zero iff `d` is a liar's dominating set.
pub fn deficiency(g: &SimpleGraph, d: &VertexSet) -> Result<u64> {
    let n = g.vertex_count();
    d.check_range(n)?;
    let nb = g.closed_bits();
    let bits = d.to_bits(n);
    let mut total = 0u64;
    for b in &nb {
        total += 2u64.saturating_sub(b.count_and(&bits) as u64);
    }
    for u in 0..n {
        for v in u + 1..n {
            total += 3u64.saturating_sub(nb[u].or(&nb[v]).count_and(&bits) as u64);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_liars_dominating;
    use proptest::prelude::*;

    #[test]
    fn deficiency_examples() {
        let k3 = SimpleGraph::complete(3);
        assert_eq!(deficiency(&k3, &VertexSet::new()).unwrap(), 15);
        assert_eq!(deficiency(&k3, &VertexSet::all(3)).unwrap(), 0);
        let p3 = SimpleGraph::path(3);
        assert_eq!(deficiency(&p3, &[1].into_iter().collect()).unwrap(), 9);
    }

    #[test]
    fn problem_parses() {
        assert_eq!("lds".parse::<Problem>().unwrap(), Problem::Lds);
        assert!("xds".parse::<Problem>().is_err());
    }

    proptest! {
        #[test]
        fn deficiency_zero_iff_verifier_ok(
            n in 1usize..10,
            mask in proptest::collection::vec(any::<bool>(), 45),
            dmask in proptest::collection::vec(any::<bool>(), 10),
        ) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] { edges.push((u, v)); }
                    k += 1;
                }
            }
            let g = SimpleGraph::new(n, edges).unwrap();
            let d: VertexSet = (0..n).filter(|&i| dmask[i]).collect();
            prop_assert_eq!(deficiency(&g, &d).unwrap() == 0, is_liars_dominating(&g, &d).unwrap().ok());
        }
    }
}
