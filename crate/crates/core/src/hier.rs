//! Two-phase hierarchical approximation.
//!
//! Phase one decomposes the subgraph induced by the paid (cost-1) vertices
//! along balanced separators, associating every tree node with the
//! projection of its cluster taken with respect to its parent's instance.
//! Phase two solves leaves outright and, walking up, keeps the cheaper of
//! the combined child solutions and a fresh run of the simple
//! approximation. Adding the cost-0 vertices of the input to the root
//! solution then monitors everything required.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::{solve_exact, ExactConfig};
use crate::graph::{GmegInstance, VertexId, WeightedGraph};
use crate::greedy::solve_simple_apx;
use crate::monitor::{
    is_feasible_solution, Algorithm, OracleMode, Solution, SolutionFlag,
};
use crate::oracle::DistanceOracle;
use crate::projector::{build_projection, ProjectionInstance};
use crate::separator::{find_separator, Alpha, SeparatorOutcome, SeparatorStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafReason {
    /// The cost-0 vertices of the node's instance already monitor all its
    /// required edges.
    CostZero,
    /// The separator search reported the cluster non-separable.
    NonSeparable,
    /// The cluster is small enough for the exact leaf solver.
    SizeFallback,
}

#[derive(Debug, Clone)]
pub struct NodeSolution {
    /// Vertex set in the node instance's local ids.
    pub vertices: BTreeSet<VertexId>,
    /// Cost under the node instance's cost function.
    pub cost: u64,
    /// True when this subtree resorted to the simple approximation at an
    /// oversized leaf.
    pub size_fallback: bool,
}

#[derive(Debug)]
pub struct DecompositionNode {
    /// Cluster V(G_u) in input-instance vertex ids.
    pub vertices: BTreeSet<VertexId>,
    /// The instance H_u: the projection of the cluster w.r.t. the parent
    /// instance. At the root the parent is the input instance. For the
    /// degenerate all-cost-0 input the cluster is empty.
    pub projection: ProjectionInstance,
    /// Node-local vertex id -> input-instance vertex id.
    pub to_input: Vec<VertexId>,
    /// Separator in input-instance ids; internal nodes only.
    pub separator: Option<BTreeSet<VertexId>>,
    /// Zero or exactly two children.
    pub children: Vec<DecompositionNode>,
    pub height: usize,
    /// n_u, the cluster size.
    pub size: usize,
    pub leaf_reason: Option<LeafReason>,
    /// Filled by the solving phase.
    pub solution: Option<NodeSolution>,
}

impl DecompositionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HierConfig {
    pub alpha: Alpha,
    pub strategy: SeparatorStrategy,
    /// Clusters at most this large go to the exact leaf solver.
    pub size_cap: usize,
    /// Budget forwarded to exact leaf solves.
    pub budget: u64,
    pub mode: OracleMode,
}

pub const DEFAULT_SIZE_CAP: usize = 12;

impl Default for HierConfig {
    fn default() -> Self {
        HierConfig {
            alpha: Alpha::default(),
            strategy: SeparatorStrategy::Auto,
            size_cap: DEFAULT_SIZE_CAP,
            budget: crate::exact::DEFAULT_BUDGET,
            mode: OracleMode::Fast,
        }
    }
}

/// Phase one: the decomposition tree. The root cluster is the set of paid
/// vertices; a node becomes a leaf when its cost-0 vertices already solve
/// it, when its cluster is non-separable, or when the cluster fits the size
/// cap. Children are the two sides of the separation, each projected with
/// respect to the node's own instance.
pub fn build_decomposition(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    config: &HierConfig,
) -> Result<DecompositionNode> {
    let paid = inst.one_cost_vertices();
    if paid.is_empty() {
        let empty = GmegInstance::new(WeightedGraph::new(0), Vec::new(), BTreeSet::new())?;
        return Ok(DecompositionNode {
            vertices: BTreeSet::new(),
            projection: ProjectionInstance {
                cluster: BTreeSet::new(),
                boundary: BTreeSet::new(),
                instance: empty,
                to_base: Vec::new(),
                bypasses: BTreeMap::new(),
            },
            to_input: Vec::new(),
            separator: None,
            children: Vec::new(),
            height: 0,
            size: 0,
            leaf_reason: Some(LeafReason::CostZero),
            solution: None,
        });
    }
    let projection = build_projection(inst, oracle, &paid)?;
    let to_input = projection.to_base.clone();
    build_node(inst, projection, to_input, paid, config)
}

fn build_node(
    inst: &GmegInstance,
    projection: ProjectionInstance,
    to_input: Vec<VertexId>,
    cluster_input: BTreeSet<VertexId>,
    config: &HierConfig,
) -> Result<DecompositionNode> {
    let size = cluster_input.len();
    let node_instance = &projection.instance;
    let node_oracle = DistanceOracle::build(node_instance.graph())?;

    let zero = node_instance.zero_cost_vertices();
    if is_feasible_solution(node_instance, &node_oracle, &zero, config.mode)? {
        return Ok(leaf(projection, to_input, cluster_input, LeafReason::CostZero));
    }

    let (subgraph, sub_to_input) = inst.graph().induced_subgraph(&cluster_input);
    let outcome = find_separator(&subgraph, config.alpha, config.strategy)?;
    let separation = match outcome {
        SeparatorOutcome::NonSeparable { .. } => {
            return Ok(leaf(
                projection,
                to_input,
                cluster_input,
                LeafReason::NonSeparable,
            ));
        }
        SeparatorOutcome::Found(sep) => sep,
    };
    if size <= config.size_cap {
        return Ok(leaf(
            projection,
            to_input,
            cluster_input,
            LeafReason::SizeFallback,
        ));
    }

    let lift = |side: &BTreeSet<VertexId>| -> BTreeSet<VertexId> {
        side.iter().map(|&v| sub_to_input[v]).collect()
    };
    let side_a = lift(&separation.side_a);
    let side_b = lift(&separation.side_b);
    let separator = lift(&separation.separator);

    let mut children = Vec::with_capacity(2);
    for side in [&side_a, &side_b] {
        let local: BTreeSet<VertexId> = side
            .iter()
            .map(|v| {
                to_input
                    .binary_search(v)
                    .expect("cluster vertices are in the node instance")
            })
            .collect();
        let child_projection = build_projection(node_instance, &node_oracle, &local)?;
        let child_to_input: Vec<VertexId> = child_projection
            .to_base
            .iter()
            .map(|&local| to_input[local])
            .collect();
        children.push(build_node(
            inst,
            child_projection,
            child_to_input,
            side.clone(),
            config,
        )?);
    }

    let height = 1 + children.iter().map(|c| c.height).max().unwrap_or(0);
    Ok(DecompositionNode {
        vertices: cluster_input,
        projection,
        to_input,
        separator: Some(separator),
        children,
        height,
        size,
        leaf_reason: None,
        solution: None,
    })
}

fn leaf(
    projection: ProjectionInstance,
    to_input: Vec<VertexId>,
    cluster_input: BTreeSet<VertexId>,
    reason: LeafReason,
) -> DecompositionNode {
    DecompositionNode {
        size: cluster_input.len(),
        vertices: cluster_input,
        projection,
        to_input,
        separator: None,
        children: Vec::new(),
        height: 0,
        leaf_reason: Some(reason),
        solution: None,
    }
}

/// Phase two: fill every node's solution bottom-up and return the root's.
fn solve_node(node: &mut DecompositionNode, config: &HierConfig) -> Result<()> {
    let instance = node.projection.instance.clone();
    if instance.graph().vertex_count() == 0 {
        node.solution = Some(NodeSolution {
            vertices: BTreeSet::new(),
            cost: 0,
            size_fallback: false,
        });
        return Ok(());
    }
    let oracle = DistanceOracle::build(instance.graph())?;

    if node.is_leaf() {
        node.solution = Some(solve_leaf(node, &instance, &oracle, config)?);
        return Ok(());
    }

    let mut size_fallback = false;
    let mut combined: BTreeSet<VertexId> = BTreeSet::new();
    for child in &mut node.children {
        solve_node(child, config)?;
        let child_solution = child.solution.as_ref().expect("children solved first");
        size_fallback |= child_solution.size_fallback;
        // Child-local ids are positions in the child's to_base, which maps
        // into this node's ids.
        combined.extend(
            child_solution
                .vertices
                .iter()
                .map(|&v| child.projection.to_base[v]),
        );
    }
    let combined_cost = instance.set_cost(&combined);
    let combined_feasible = is_feasible_solution(&instance, &oracle, &combined, config.mode)?;

    let apx = solve_simple_apx(&instance, &oracle, config.mode)?;

    let take_combined = combined_feasible && combined_cost <= apx.cost;
    node.solution = Some(if take_combined {
        NodeSolution {
            vertices: combined,
            cost: combined_cost,
            size_fallback,
        }
    } else {
        NodeSolution {
            vertices: apx.vertices,
            cost: apx.cost,
            size_fallback,
        }
    });
    Ok(())
}

fn solve_leaf(
    node: &DecompositionNode,
    instance: &GmegInstance,
    oracle: &DistanceOracle,
    config: &HierConfig,
) -> Result<NodeSolution> {
    if node.leaf_reason == Some(LeafReason::CostZero) {
        let zero = instance.zero_cost_vertices();
        return Ok(NodeSolution {
            vertices: zero,
            cost: 0,
            size_fallback: false,
        });
    }
    if node.size <= config.size_cap {
        let exact_config = ExactConfig {
            budget: config.budget,
            mode: config.mode,
        };
        let sol = solve_exact(instance, oracle, &exact_config)?;
        return Ok(NodeSolution {
            vertices: sol.vertices,
            cost: sol.cost,
            size_fallback: false,
        });
    }
    let sol = solve_simple_apx(instance, oracle, config.mode)?;
    Ok(NodeSolution {
        vertices: sol.vertices,
        cost: sol.cost,
        size_fallback: true,
    })
}

/// Runs both phases and returns the final solution together with the solved
/// decomposition tree.
pub fn solve_decomposition(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    config: &HierConfig,
) -> Result<(Solution, DecompositionNode)> {
    if let Some(witness) = crate::monitor::first_unsolvable_required_edge(inst, oracle)? {
        return Err(Error::InfeasibleInstance { witness });
    }
    let mut root = build_decomposition(inst, oracle, config)?;
    solve_node(&mut root, config)?;
    let root_solution = root.solution.as_ref().expect("root solved");

    let mut vertices: BTreeSet<VertexId> = root_solution
        .vertices
        .iter()
        .map(|&v| root.to_input[v])
        .collect();
    vertices.extend(inst.zero_cost_vertices());

    let mut solution = Solution::new(inst, vertices, Algorithm::Hierarchical);
    if root_solution.size_fallback {
        solution = solution.with_flag(SolutionFlag::SizeFallback);
    }
    solution.feasible = is_feasible_solution(inst, oracle, &solution.vertices, config.mode)?;
    if !solution.feasible {
        return Err(Error::InvariantViolation(
            "hierarchical solution failed final verification".into(),
        ));
    }
    Ok((solution, root))
}

pub fn solve_hier(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    config: &HierConfig,
) -> Result<Solution> {
    solve_decomposition(inst, oracle, config).map(|(s, _)| s)
}

/// Parameters of the theoretical approximation bound: the balance fraction,
/// the separator-size exponent and coefficient, and the instance size.
#[derive(Debug, Clone, Copy)]
pub struct BoundParams {
    pub alpha: Alpha,
    pub beta: f64,
    pub beta0: f64,
    pub n: usize,
}

impl BoundParams {
    pub fn new(alpha: Alpha, beta: f64, beta0: f64, n: usize) -> Result<Self> {
        if beta < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "separator exponent must be non-negative, got {beta}"
            )));
        }
        if beta0 < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "separator coefficient must be at least 1, got {beta0}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "bound needs n >= 2, got {n}"
            )));
        }
        Ok(BoundParams {
            alpha,
            beta,
            beta0,
            n,
        })
    }
}

/// Guaranteed approximation ratio of a node at the given height whose
/// cluster has `size` vertices. With a positive separator exponent the bound
/// is geometric in the cluster size; with exponent zero it grows linearly
/// with the height.
pub fn ratio_bound(params: &BoundParams, height: usize, size: usize) -> f64 {
    let log_term = (2.0 * params.beta0 * (params.n as f64).ln()).sqrt();
    if params.beta > 0.0 {
        let decay = 1.0 - (1.0 - params.alpha.as_f64()).powf(params.beta / 2.0);
        (size as f64).powf(params.beta / 2.0) * log_term / decay
    } else {
        (height as f64 + 1.0) * log_term
    }
}

/// Upper bound on the decomposition height for a root cluster of `n_r` paid
/// vertices: ceil(log base 1/(1-alpha) of n_r).
pub fn height_bound(alpha: Alpha, n_r: usize) -> usize {
    if n_r <= 1 {
        return 0;
    }
    ((n_r as f64).ln() / (1.0 / (1.0 - alpha.as_f64())).ln()).ceil() as usize
}
