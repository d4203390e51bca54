//! Graph and instance representation.
//!
//! A [`WeightedGraph`] is simple and undirected, with positive integer edge
//! weights and stable edge ids: extracting a subgraph or building a
//! projection keeps the ids of surviving edges, so required-edge bookkeeping
//! works across nested instances. A [`GmegInstance`] adds binary vertex
//! costs and the subset of edges that must be monitored.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Sentinel for unreachable pairs.
pub const INFINITE_DIST: u64 = u64::MAX;

/// One undirected edge, endpoints normalized to `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRec {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: u64,
}

impl EdgeRec {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

/// Simple undirected graph with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<EdgeRec>,
    /// Per-vertex list of incident edge slots (indices into `edges`).
    adjacency: Vec<Vec<usize>>,
    /// Edge id -> slot.
    id_index: HashMap<EdgeId, usize>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
            id_index: HashMap::new(),
        }
    }

    /// Adds an edge with the next free id (one past the current maximum).
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: u64) -> Result<EdgeId> {
        let id = self.next_edge_id();
        self.add_edge_with_id(id, u, v, weight)?;
        Ok(id)
    }

    pub fn add_edge_with_id(
        &mut self,
        id: EdgeId,
        u: VertexId,
        v: VertexId,
        weight: u64,
    ) -> Result<()> {
        if u >= self.vertex_count {
            return Err(Error::VertexOutOfRange(u, self.vertex_count));
        }
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange(v, self.vertex_count));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if weight == 0 {
            return Err(Error::ZeroWeight { u, v });
        }
        if self.id_index.contains_key(&id) {
            return Err(Error::DuplicateEdgeId(id));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::ParallelEdge(u, v));
        }
        let slot = self.edges.len();
        let (u, v) = (u.min(v), u.max(v));
        self.edges.push(EdgeRec { id, u, v, weight });
        self.adjacency[u].push(slot);
        self.adjacency[v].push(slot);
        self.id_index.insert(id, slot);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> impl Iterator<Item = &EdgeRec> {
        self.edges.iter()
    }

    pub fn edge(&self, id: EdgeId) -> Result<&EdgeRec> {
        self.id_index
            .get(&id)
            .map(|&slot| &self.edges[slot])
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn has_edge_id(&self, id: EdgeId) -> bool {
        self.id_index.contains_key(&id)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&EdgeRec> {
        if u >= self.vertex_count {
            return None;
        }
        self.adjacency[u]
            .iter()
            .map(|&slot| &self.edges[slot])
            .find(|e| e.other(u) == v)
    }

    /// Incident edges of `v` in insertion order.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = &EdgeRec> {
        self.adjacency[v].iter().map(move |&slot| &self.edges[slot])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).map(move |e| e.other(v))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for w in self.neighbors(x) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for w in self.neighbors(x) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `verts`, reindexed to dense ids. Edge ids are
    /// preserved. Returns the subgraph and the map from new to old vertex
    /// ids (ascending).
    pub fn induced_subgraph(&self, verts: &BTreeSet<VertexId>) -> (WeightedGraph, Vec<VertexId>) {
        let to_old: Vec<VertexId> = verts.iter().copied().collect();
        let mut to_new = HashMap::new();
        for (new, &old) in to_old.iter().enumerate() {
            to_new.insert(old, new);
        }
        let mut sub = WeightedGraph::new(to_old.len());
        for e in &self.edges {
            if let (Some(&nu), Some(&nv)) = (to_new.get(&e.u), to_new.get(&e.v)) {
                sub.add_edge_with_id(e.id, nu, nv, e.weight)
                    .expect("induced subgraph preserves simplicity");
            }
        }
        (sub, to_old)
    }

    /// Length in edges of a shortest cycle, ignoring weights; `None` for
    /// forests. Every shortest cycle contains some edge (u,v); removing that
    /// edge and measuring the hop distance u->v recovers the cycle length.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (skip, e) in self.edges.iter().enumerate() {
            if let Some(d) = self.hop_distance_skipping(e.u, e.v, skip) {
                let cycle = d + 1;
                if best.is_none_or(|b| cycle < b) {
                    best = Some(cycle);
                }
            }
        }
        best
    }

    fn hop_distance_skipping(&self, from: VertexId, to: VertexId, skip: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                return Some(dist[x]);
            }
            for &slot in &self.adjacency[x] {
                if slot == skip {
                    continue;
                }
                let w = self.edges[slot].other(x);
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A generalized monitoring instance: graph, binary vertex costs, and the
/// subset of edges that must be monitored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmegInstance {
    graph: WeightedGraph,
    costs: Vec<u8>,
    required: BTreeSet<EdgeId>,
}

impl GmegInstance {
    pub fn new(graph: WeightedGraph, costs: Vec<u8>, required: BTreeSet<EdgeId>) -> Result<Self> {
        if costs.len() != graph.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "{} costs for a graph on {} vertices",
                costs.len(),
                graph.vertex_count()
            )));
        }
        for (v, &c) in costs.iter().enumerate() {
            if c > 1 {
                return Err(Error::NonBinaryCost {
                    vertex: v,
                    found: c as u64,
                });
            }
        }
        for &id in &required {
            if !graph.has_edge_id(id) {
                return Err(Error::RequiredEdgeMissing(id));
            }
        }
        Ok(GmegInstance {
            graph,
            costs,
            required,
        })
    }

    /// Unit costs and every edge required: the classic monitoring problem.
    pub fn unit(graph: WeightedGraph) -> Self {
        let costs = vec![1; graph.vertex_count()];
        let required = graph.edges().map(|e| e.id).collect();
        GmegInstance {
            graph,
            costs,
            required,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn cost(&self, v: VertexId) -> u8 {
        self.costs[v]
    }

    pub fn costs(&self) -> &[u8] {
        &self.costs
    }

    pub fn required(&self) -> &BTreeSet<EdgeId> {
        &self.required
    }

    pub fn is_required(&self, e: EdgeId) -> bool {
        self.required.contains(&e)
    }

    /// True when every edge of the graph is required.
    pub fn requires_all_edges(&self) -> bool {
        self.required.len() == self.graph.edge_count()
    }

    pub fn zero_cost_vertices(&self) -> BTreeSet<VertexId> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.costs[v] == 0)
            .collect()
    }

    pub fn one_cost_vertices(&self) -> BTreeSet<VertexId> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.costs[v] == 1)
            .collect()
    }

    pub fn set_cost(&self, set: &BTreeSet<VertexId>) -> u64 {
        set.iter().map(|&v| self.costs[v] as u64).sum()
    }
}

/// Verdict of [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityReport {
    Feasible,
    /// `witness` is the first edge (in id order) that is not the unique
    /// shortest path between its endpoints.
    Infeasible {
        witness: EdgeId,
    },
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityReport::Feasible)
    }
}

/// Checks that every edge is the unique shortest path between its endpoints,
/// the criterion for a monitoring set to exist at all. The uniqueness check
/// deletes the edge and requires the distance to strictly increase.
pub fn validate_instance(inst: &GmegInstance) -> Result<FeasibilityReport> {
    let oracle = crate::oracle::DistanceOracle::build(inst.graph())?;
    let mut ids: Vec<EdgeId> = inst.graph().edges().map(|e| e.id).collect();
    ids.sort_unstable();
    for id in ids {
        let e = inst.graph().edge(id)?;
        if oracle.dist(e.u, e.v) != e.weight {
            return Ok(FeasibilityReport::Infeasible { witness: id });
        }
        let without = crate::oracle::distance_without_edge(inst.graph(), id, e.u, e.v)?;
        if without <= e.weight {
            return Ok(FeasibilityReport::Infeasible { witness: id });
        }
    }
    Ok(FeasibilityReport::Feasible)
}
