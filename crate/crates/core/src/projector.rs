//! Cluster projections.
//!
//! The projection of a cluster C keeps the subgraph induced by C and its
//! boundary, gives boundary vertices cost 0, and adds one synthetic edge per
//! boundary pair joined by a bypass: a shortest path of the base graph with
//! at least two edges running entirely outside C and its boundary. Synthetic
//! edges carry the base distance as weight, so distances inside the
//! projection match the base graph and monitoring of original edges is
//! unchanged.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GmegInstance, VertexId, WeightedGraph, INFINITE_DIST};
use crate::oracle::DistanceOracle;

#[derive(Debug, Clone)]
pub struct ProjectionInstance {
    /// Cluster C, in base vertex ids.
    pub cluster: BTreeSet<VertexId>,
    /// Boundary N(C) \ C, in base vertex ids.
    pub boundary: BTreeSet<VertexId>,
    /// The projected instance over C and its boundary, reindexed densely.
    pub instance: GmegInstance,
    /// Local vertex id -> base vertex id (ascending).
    pub to_base: Vec<VertexId>,
    /// Ids of the synthetic edges, each with its bypass as a base-graph
    /// vertex path.
    pub bypasses: BTreeMap<EdgeId, Vec<VertexId>>,
}

impl ProjectionInstance {
    pub fn local_of(&self, base: VertexId) -> Option<VertexId> {
        self.to_base.binary_search(&base).ok()
    }

    pub fn to_base_set(&self, local: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        local.iter().map(|&v| self.to_base[v]).collect()
    }

    /// Inherited (non-synthetic) edge ids.
    pub fn original_edges(&self) -> BTreeSet<EdgeId> {
        self.instance
            .graph()
            .edges()
            .map(|e| e.id)
            .filter(|id| !self.bypasses.contains_key(id))
            .collect()
    }
}

/// Boundary of a cluster: vertices outside `cluster` adjacent to it.
pub fn cluster_boundary(g: &WeightedGraph, cluster: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut boundary = BTreeSet::new();
    for &v in cluster {
        for w in g.neighbors(v) {
            if !cluster.contains(&w) {
                boundary.insert(w);
            }
        }
    }
    boundary
}

/// A bypass between boundary vertices u and v: a shortest u-v path of the
/// base graph with at least two edges and all internal vertices outside the
/// cluster and its boundary, or `None`. Found by comparing the base distance
/// with the u-v distance in the subgraph induced by the outside vertices
/// plus u and v, with any direct (u,v) edge removed. The returned path is
/// deterministic: from u, always step to the smallest-id neighbor that stays
/// on a shortest path.
pub fn find_bypass(
    base: &GmegInstance,
    oracle: &DistanceOracle,
    cluster: &BTreeSet<VertexId>,
    u: VertexId,
    v: VertexId,
) -> Result<Option<Vec<VertexId>>> {
    let boundary = cluster_boundary(base.graph(), cluster);
    if !boundary.contains(&u) || !boundary.contains(&v) {
        return Err(Error::InvalidArgument(format!(
            "bypass endpoints {u},{v} must both lie on the cluster boundary"
        )));
    }
    if u == v {
        return Err(Error::InvalidArgument(
            "bypass endpoints must be distinct".into(),
        ));
    }
    Ok(bypass_inner(base.graph(), oracle, cluster, &boundary, u, v))
}

fn bypass_inner(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    cluster: &BTreeSet<VertexId>,
    boundary: &BTreeSet<VertexId>,
    u: VertexId,
    v: VertexId,
) -> Option<Vec<VertexId>> {
    let base_dist = oracle.dist(u, v);
    if base_dist == INFINITE_DIST {
        return None;
    }
    let mut keep: BTreeSet<VertexId> = g
        .vertices()
        .filter(|x| !cluster.contains(x) && !boundary.contains(x))
        .collect();
    keep.insert(u);
    keep.insert(v);
    let (mut sub, to_old) = g.induced_subgraph(&keep);
    let lu = to_old.binary_search(&u).expect("u kept");
    let lv = to_old.binary_search(&v).expect("v kept");
    if let Some(direct) = sub.edge_between(lu, lv).map(|e| e.id) {
        sub = remove_edge(&sub, direct);
    }
    let (dist, _) = single_source(&sub, lu);
    if dist[lv] != base_dist {
        return None;
    }
    // Walk from u, picking the smallest-id next vertex that keeps the path
    // tight: dist(u, x) + w(x, w) + dist_from_v(w) == base_dist.
    let (dist_v, _) = single_source(&sub, lv);
    let mut path = vec![u];
    let mut x = lu;
    while x != lv {
        let next = sub
            .incident(x)
            .map(|e| (e.other(x), e.weight))
            .filter(|&(w, wt)| {
                dist[x] + wt == dist[w] && dist_v[w] != INFINITE_DIST && dist[w] + dist_v[w] == base_dist
            })
            .map(|(w, _)| w)
            .min()?;
        path.push(to_old[next]);
        x = next;
    }
    if path.len() < 3 {
        return None;
    }
    Some(path)
}

fn remove_edge(g: &WeightedGraph, id: EdgeId) -> WeightedGraph {
    let mut out = WeightedGraph::new(g.vertex_count());
    for e in g.edges() {
        if e.id != id {
            out.add_edge_with_id(e.id, e.u, e.v, e.weight)
                .expect("copy of a simple graph stays simple");
        }
    }
    out
}

fn single_source(g: &WeightedGraph, s: VertexId) -> (Vec<u64>, Vec<VertexId>) {
    use std::cmp::Reverse;
    let mut dist = vec![INFINITE_DIST; g.vertex_count()];
    let mut prev = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for e in g.incident(x) {
            let w = e.other(x);
            let nd = d + e.weight;
            if nd < dist[w] {
                dist[w] = nd;
                prev[w] = x;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, prev)
}

/// Builds the projection of `cluster` with respect to `base`.
///
/// Synthetic edges get fresh ids above every id of the base so nested
/// projections never collide; each records its bypass. A synthetic edge is
/// only added when the boundary pair has no direct edge, which for feasible
/// bases is implied by the existence of a bypass.
pub fn build_projection(
    base: &GmegInstance,
    oracle: &DistanceOracle,
    cluster: &BTreeSet<VertexId>,
) -> Result<ProjectionInstance> {
    if cluster.is_empty() {
        return Err(Error::InvalidArgument(
            "projection cluster must be non-empty".into(),
        ));
    }
    for &v in cluster {
        if v >= base.graph().vertex_count() {
            return Err(Error::VertexOutOfRange(v, base.graph().vertex_count()));
        }
    }
    let boundary = cluster_boundary(base.graph(), cluster);
    let keep: BTreeSet<VertexId> = cluster.union(&boundary).copied().collect();
    let (mut graph, to_base) = base.graph().induced_subgraph(&keep);

    let mut costs = Vec::with_capacity(to_base.len());
    for &old in &to_base {
        costs.push(if boundary.contains(&old) {
            0
        } else {
            base.cost(old)
        });
    }
    let required: BTreeSet<EdgeId> = graph
        .edges()
        .map(|e| e.id)
        .filter(|id| base.is_required(*id))
        .collect();

    let mut next_id = base.graph().next_edge_id().max(graph.next_edge_id());
    let mut bypasses = BTreeMap::new();
    let blist: Vec<VertexId> = boundary.iter().copied().collect();
    for (i, &bu) in blist.iter().enumerate() {
        for &bv in &blist[i + 1..] {
            if let Some(path) = bypass_inner(base.graph(), oracle, cluster, &boundary, bu, bv) {
                let lu = to_base.binary_search(&bu).expect("boundary kept");
                let lv = to_base.binary_search(&bv).expect("boundary kept");
                if graph.edge_between(lu, lv).is_some() {
                    continue;
                }
                let id = next_id;
                next_id += 1;
                graph.add_edge_with_id(id, lu, lv, oracle.dist(bu, bv))?;
                bypasses.insert(id, path);
            }
        }
    }

    let instance = GmegInstance::new(graph, costs, required)?;
    Ok(ProjectionInstance {
        cluster: cluster.clone(),
        boundary,
        instance,
        to_base,
        bypasses,
    })
}
