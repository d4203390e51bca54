//! The monitoring oracle and solution verification machinery.
//!
//! An edge e is monitored by a pair x,y when every shortest x-y path
//! traverses e. Two interchangeable criteria are implemented:
//!
//! * `Reference` — delete e and require the x-y distance to strictly
//!   increase. One Dijkstra run per query; this is the ground truth.
//! * `Fast` — compare the count of shortest x-y paths through e against the
//!   total count, both modulo the oracle prime. Constant time per query
//!   given the all-pairs oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GmegInstance, VertexId, WeightedGraph, INFINITE_DIST};
use crate::oracle::{distance_without_edge, DistanceOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleMode {
    #[default]
    Fast,
    Reference,
}

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exact,
    SimpleApx,
    Hierarchical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionFlag {
    /// Returned by a budget-exhausted exact search; optimality not proven.
    NonOptimal,
    /// Some decomposition leaf was too large for the exact solver and was
    /// handed to the simple approximation instead.
    SizeFallback,
}

/// A vertex set with its cost and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub vertices: BTreeSet<VertexId>,
    pub cost: u64,
    pub algorithm: Algorithm,
    pub feasible: bool,
    pub flags: BTreeSet<SolutionFlag>,
}

impl Solution {
    pub fn new(inst: &GmegInstance, vertices: BTreeSet<VertexId>, algorithm: Algorithm) -> Self {
        let cost = inst.set_cost(&vertices);
        Solution {
            vertices,
            cost,
            algorithm,
            feasible: false,
            flags: BTreeSet::new(),
        }
    }

    pub fn with_flag(mut self, flag: SolutionFlag) -> Self {
        self.flags.insert(flag);
        self
    }
}

/// Does the pair x,y monitor edge e?
pub fn pair_monitors_edge(
    oracle: &DistanceOracle,
    g: &WeightedGraph,
    e: EdgeId,
    x: VertexId,
    y: VertexId,
    mode: OracleMode,
) -> Result<bool> {
    if x == y {
        return Err(Error::InvalidArgument(format!(
            "monitoring pair must be two distinct vertices, got ({x},{x})"
        )));
    }
    g.edge(e)?;
    Ok(match mode {
        OracleMode::Reference => reference_check(oracle, g, e, x, y)?,
        OracleMode::Fast => fast_check(oracle, g, e, x, y),
    })
}

fn reference_check(
    oracle: &DistanceOracle,
    g: &WeightedGraph,
    e: EdgeId,
    x: VertexId,
    y: VertexId,
) -> Result<bool> {
    let d = oracle.dist(x, y);
    if d == INFINITE_DIST {
        return Ok(false);
    }
    Ok(distance_without_edge(g, e, x, y)? > d)
}

/// Counts shortest x-y paths through e as the sum over both orientations of
/// sigma(x, near endpoint) * sigma(far endpoint, y), each orientation
/// contributing only when its distances are tight. At most one orientation
/// can be tight for positive weights, so nothing is double-counted. The
/// pair monitors e exactly when some orientation is tight and the through
/// count equals the total count mod p.
fn fast_check(
    oracle: &DistanceOracle,
    g: &WeightedGraph,
    e: EdgeId,
    x: VertexId,
    y: VertexId,
) -> bool {
    let d = oracle.dist(x, y);
    if d == INFINITE_DIST {
        return false;
    }
    let edge = g.edge(e).expect("edge id validated by caller");
    let (a, b, w) = (edge.u, edge.v, edge.weight);
    let mut through = 0u64;
    let mut tight = false;
    for (near, far) in [(a, b), (b, a)] {
        let (dxn, dfy) = (oracle.dist(x, near), oracle.dist(far, y));
        if dxn == INFINITE_DIST || dfy == INFINITE_DIST {
            continue;
        }
        if dxn + w + dfy == d {
            tight = true;
            through = oracle.add_sigma(
                through,
                oracle.mul_sigma(oracle.sigma(x, near), oracle.sigma(far, y)),
            );
        }
    }
    tight && through == oracle.sigma(x, y)
}

/// Required edges monitored by at least one pair of distinct vertices of
/// `set`. Unreachable pairs monitor nothing.
pub fn monitored_edges(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    set: &BTreeSet<VertexId>,
    mode: OracleMode,
) -> Result<BTreeSet<EdgeId>> {
    let members: Vec<VertexId> = set.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &e in inst.required() {
        if edge_monitored_by(inst, oracle, e, &members, mode)? {
            out.insert(e);
        }
    }
    Ok(out)
}

fn edge_monitored_by(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    e: EdgeId,
    members: &[VertexId],
    mode: OracleMode,
) -> Result<bool> {
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if pair_monitors_edge(oracle, inst.graph(), e, x, y, mode)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// True when `set` monitors every required edge.
pub fn is_feasible_solution(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    set: &BTreeSet<VertexId>,
    mode: OracleMode,
) -> Result<bool> {
    let members: Vec<VertexId> = set.iter().copied().collect();
    for &e in inst.required() {
        if !edge_monitored_by(inst, oracle, e, &members, mode)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops removable vertices until no single vertex can be removed. Removal
/// order is cost-1 vertices in ascending id, then cost-0 in ascending id,
/// swept repeatedly to a fixpoint, which makes the result canonical and
/// sheds cost first.
pub fn minimalize(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    set: &BTreeSet<VertexId>,
    mode: OracleMode,
) -> Result<BTreeSet<VertexId>> {
    if !is_feasible_solution(inst, oracle, set, mode)? {
        return Err(Error::Precondition(
            "minimalize needs a feasible starting set".into(),
        ));
    }
    let mut current = set.clone();
    loop {
        let mut removed_any = false;
        let sweep: Vec<VertexId> = current
            .iter()
            .copied()
            .filter(|&v| inst.cost(v) == 1)
            .chain(current.iter().copied().filter(|&v| inst.cost(v) == 0))
            .collect();
        for v in sweep {
            if !current.contains(&v) {
                continue;
            }
            current.remove(&v);
            if is_feasible_solution(inst, oracle, &current, mode)? {
                removed_any = true;
            } else {
                current.insert(v);
            }
        }
        if !removed_any {
            return Ok(current);
        }
    }
}

/// Degree-1 vertices whose sole incident edge is required. Only pairs
/// containing such a vertex can force all shortest paths through its pendant
/// edge, so these belong to every feasible solution.
pub fn forced_vertices(inst: &GmegInstance) -> BTreeSet<VertexId> {
    inst.graph()
        .vertices()
        .filter(|&v| {
            inst.graph().degree(v) == 1
                && inst
                    .graph()
                    .incident(v)
                    .next()
                    .is_some_and(|e| inst.is_required(e.id))
        })
        .collect()
}

/// Vertices that are the sole neighbor of some degree-1 vertex. When every
/// edge is required, the graph is connected, and n >= 3, no minimal solution
/// needs them.
pub fn leaf_neighbors(g: &WeightedGraph) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|&v| g.degree(v) == 1)
        .filter_map(|v| g.neighbors(v).next())
        .collect()
}

/// Every required edge must itself be the unique shortest path between its
/// endpoints, otherwise no vertex set can monitor it. This is the
/// per-required-edge precondition solvers check; unlike
/// [`crate::graph::validate_instance`] it ignores unrequired edges, which in
/// projection instances may be tied with bypass paths.
pub fn solvable_for_required(inst: &GmegInstance, oracle: &DistanceOracle) -> Result<bool> {
    Ok(first_unsolvable_required_edge(inst, oracle)?.is_none())
}

/// First required edge (in id order) that no vertex set can monitor.
pub fn first_unsolvable_required_edge(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
) -> Result<Option<EdgeId>> {
    for &id in inst.required() {
        let e = inst.graph().edge(id)?;
        if oracle.dist(e.u, e.v) != e.weight || !fast_check(oracle, inst.graph(), id, e.u, e.v) {
            return Ok(Some(id));
        }
    }
    Ok(None)
}
