//! Exhaustive subset enumeration. This is the trusted oracle: no pruning, no
//! forcing, just every subset of a given size in lexicographic order.

use std::time::Instant;

use super::{Budget, Checker, Problem, SolveResult, Stats, Status};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::{liars_feasible, SimpleGraph, VertexSet};

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order until
/// it returns `false`. Returns the number of subsets visited.
fn for_each_subset(
    n: usize,
    k: usize,
    budget: &mut u64,
    limit: u64,
    mut visit: impl FnMut(&[usize], &Bits) -> bool,
) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut visited = 0u64;
    loop {
        if *budget == 0 {
            return Err(Error::BudgetExceeded { limit });
        }
        *budget -= 1;
        visited += 1;
        let bits = Bits::from_iter(n, idx.iter().copied());
        if !visit(&idx, &bits) {
            return Ok(visited);
        }
        // Advance to the next combination.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return Ok(visited);
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Ascending enumeration `k = 0, 1, 2, …`; the first feasible subset is the
/// lexicographically first minimum solution.
pub fn brute_force_minimum(
    problem: Problem,
    g: &SimpleGraph,
    budget: Budget,
) -> Result<SolveResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    let mut stats = Stats::default();
    if problem == Problem::Lds && !liars_feasible(g).is_feasible() {
        stats.elapsed = start.elapsed();
        return Ok(SolveResult {
            solution: None,
            status: Status::ProvenMinimum,
            stats,
        });
    }
    let checker = Checker::new(problem, g);
    let mut left = budget.max_subsets;
    for k in 0..=n {
        let mut found = None;
        stats.subsets_examined +=
            for_each_subset(n, k, &mut left, budget.max_subsets, |idx, bits| {
                if checker.check(bits) {
                    found = Some(idx.iter().copied().collect::<VertexSet>());
                    false
                } else {
                    true
                }
            })?;
        if let Some(sol) = found {
            stats.elapsed = start.elapsed();
            return Ok(SolveResult {
                solution: Some(sol),
                status: Status::ProvenMinimum,
                stats,
            });
        }
    }
    unreachable!("the full vertex set is feasible once the lds feasibility test passed")
}

/// `true` iff no subset of size exactly `k` is feasible. Both conditions are
/// monotone under adding vertices, so `true` also rules out every size below `k`.
pub fn prove_no_solution_of_size(
    problem: Problem,
    g: &SimpleGraph,
    k: usize,
    budget: Budget,
) -> Result<bool> {
    let checker = Checker::new(problem, g);
    let mut left = budget.max_subsets;
    let mut feasible = false;
    for_each_subset(
        g.vertex_count(),
        k,
        &mut left,
        budget.max_subsets,
        |_, bits| {
            feasible = checker.check(bits);
            !feasible
        },
    )?;
    Ok(!feasible)
}

/// Every feasible subset of size exactly `k`, lexicographic.
pub fn solutions_of_size(
    problem: Problem,
    g: &SimpleGraph,
    k: usize,
    budget: Budget,
) -> Result<Vec<VertexSet>> {
    let checker = Checker::new(problem, g);
    let mut left = budget.max_subsets;
    let mut out = Vec::new();
    for_each_subset(
        g.vertex_count(),
        k,
        &mut left,
        budget.max_subsets,
        |idx, bits| {
            if checker.check(bits) {
                out.push(idx.iter().copied().collect());
            }
            true
        },
    )?;
    Ok(out)
}

/// The minimum size and every minimum solution; `None` if infeasible.
/// The minimum comes from branch and bound and the enumeration re-derives it,
/// so the two must agree.
pub fn all_minimum_solutions(
    problem: Problem,
    g: &SimpleGraph,
    budget: Budget,
) -> Result<Option<(usize, Vec<VertexSet>)>> {
    let best = super::branch_and_bound(problem, g, budget)?;
    let Some(k) = best.size() else {
        return Ok(None);
    };
    let all = solutions_of_size(problem, g, k, budget)?;
    debug_assert!(!all.is_empty());
    Ok(Some((k, all)))
}
