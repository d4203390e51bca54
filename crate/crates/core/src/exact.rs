//! Brute-force optimal solver, the ground-truth oracle for every other
//! algorithm and the leaf solver of the hierarchical one.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GmegInstance, VertexId};
use crate::monitor::{
    first_unsolvable_required_edge, forced_vertices, is_feasible_solution, leaf_neighbors,
    Algorithm, OracleMode, Solution, SolutionFlag,
};
use crate::oracle::DistanceOracle;
use crate::util::Combinations;

/// Feasibility evaluations allowed before giving up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct ExactConfig {
    pub budget: u64,
    pub mode: OracleMode,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            budget: DEFAULT_BUDGET,
            mode: OracleMode::Fast,
        }
    }
}

/// Minimum-cost feasible solution.
///
/// Cost-0 vertices are free and monitoring is monotone, so they are all
/// included outright. The search enumerates subsets of the remaining cost-1
/// candidates by increasing cardinality in lexicographic order, which makes
/// the first hit the lexicographically smallest optimum. Degree-1 vertices
/// with a required pendant edge are pinned; when every edge is required, the
/// graph is connected, and n >= 3, sole neighbors of degree-1 vertices are
/// excluded from the candidate pool (dropping one from any feasible set
/// keeps it feasible, so no optimum needs a cost-1 one).
pub fn solve_exact(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    config: &ExactConfig,
) -> Result<Solution> {
    if let Some(witness) = first_unsolvable_required_edge(inst, oracle)? {
        return Err(Error::InfeasibleInstance { witness });
    }

    let forced = forced_vertices(inst);
    let zero: BTreeSet<VertexId> = inst.zero_cost_vertices();
    let base: BTreeSet<VertexId> = zero.union(&forced).copied().collect();

    let exclude_leaf_neighbors = inst.requires_all_edges()
        && inst.graph().vertex_count() >= 3
        && inst.graph().is_connected();
    let excluded = if exclude_leaf_neighbors {
        leaf_neighbors(inst.graph())
    } else {
        BTreeSet::new()
    };

    let candidates: Vec<VertexId> = inst
        .one_cost_vertices()
        .into_iter()
        .filter(|v| !base.contains(v) && !excluded.contains(v))
        .collect();

    let mut evaluations: u64 = 0;
    let mut check = |set: &BTreeSet<VertexId>| -> Result<Option<bool>> {
        if evaluations >= config.budget {
            return Ok(None);
        }
        evaluations += 1;
        is_feasible_solution(inst, oracle, set, config.mode).map(Some)
    };

    // The full vertex set is feasible (checked above), so it is the
    // fallback carried by a budget-exceeded error.
    let trivial = || {
        let mut all = Solution::new(inst, inst.graph().vertices().collect(), Algorithm::Exact);
        all.feasible = true;
        all.with_flag(SolutionFlag::NonOptimal)
    };

    for cardinality in 0..=candidates.len() {
        let mut combo = Combinations::new(candidates.len(), cardinality);
        while let Some(indices) = combo.next() {
            let mut trial = base.clone();
            trial.extend(indices.iter().map(|&i| candidates[i]));
            match check(&trial)? {
                Some(true) => {
                    let mut sol = Solution::new(inst, trial, Algorithm::Exact);
                    sol.feasible = true;
                    return Ok(sol);
                }
                Some(false) => {}
                None => {
                    return Err(Error::BudgetExceeded {
                        budget: config.budget,
                        best: Box::new(trivial()),
                    })
                }
            }
        }
    }

    // Unreachable for solvable instances: the last candidate set tried is
    // V minus excluded leaf-neighbors, which iterated leaf-neighbor removal
    // keeps feasible.
    Err(Error::InvariantViolation(format!(
        "exhausted {evaluations} candidate sets without finding a feasible solution"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{complete_graph, cycle_graph, path_graph};

    fn solve_unit(g: crate::graph::WeightedGraph) -> Solution {
        let inst = GmegInstance::unit(g);
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        solve_exact(&inst, &oracle, &ExactConfig::default()).unwrap()
    }

    #[test]
    fn path_optimum_is_the_endpoints() {
        let sol = solve_unit(path_graph(3));
        assert_eq!(sol.vertices, [0, 2].into_iter().collect());
        assert_eq!(sol.cost, 2);
        assert!(sol.feasible);
    }

    #[test]
    fn triangle_needs_all_vertices() {
        let sol = solve_unit(complete_graph(3));
        assert_eq!(sol.vertices, [0, 1, 2].into_iter().collect());
        assert_eq!(sol.cost, 3);
    }

    #[test]
    fn four_cycle_needs_all_vertices() {
        let sol = solve_unit(cycle_graph(4));
        assert_eq!(sol.cost, 4);
        assert_eq!(sol.vertices.len(), 4);
    }

    #[test]
    fn budget_exhaustion_carries_a_feasible_fallback() {
        let inst = GmegInstance::unit(cycle_graph(4));
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        let config = ExactConfig {
            budget: 2,
            ..Default::default()
        };
        match solve_exact(&inst, &oracle, &config) {
            Err(Error::BudgetExceeded { best, .. }) => {
                assert!(best.feasible);
                assert!(best.flags.contains(&SolutionFlag::NonOptimal));
                assert_eq!(best.vertices.len(), 4);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_instance_is_rejected_with_witness() {
        let mut g = crate::graph::WeightedGraph::new(3);
        g.add_edge(0, 1, 2).unwrap();
        g.add_edge(0, 2, 1).unwrap();
        g.add_edge(2, 1, 1).unwrap();
        let inst = GmegInstance::unit(g);
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        assert!(matches!(
            solve_exact(&inst, &oracle, &ExactConfig::default()),
            Err(Error::InfeasibleInstance { witness: 0 })
        ));
    }

    #[test]
    fn zero_cost_vertices_ride_along_free() {
        // P3 with middle vertex free: optimum still picks the endpoints but
        // the middle rides along at cost 0.
        let g = path_graph(3);
        let inst = GmegInstance::new(g, vec![1, 0, 1], [0, 1].into_iter().collect()).unwrap();
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        let sol = solve_exact(&inst, &oracle, &ExactConfig::default()).unwrap();
        assert_eq!(sol.vertices, [0, 1, 2].into_iter().collect());
        assert_eq!(sol.cost, 2);
    }
}
