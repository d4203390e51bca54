//! Instance generators for tests, benchmarks, and the CLI.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{GmegInstance, VertexId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Cycle,
    Tree,
    Grid,
    RandomConnected,
}

impl GraphKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "tree" => Ok(GraphKind::Tree),
            "grid" => Ok(GraphKind::Grid),
            "random" | "random-connected" => Ok(GraphKind::RandomConnected),
            other => Err(Error::InvalidArgument(format!(
                "unknown graph kind '{other}'"
            ))),
        }
    }
}

/// Probability of keeping each non-tree edge in `RandomConnected`.
pub const DEFAULT_EXTRA_EDGE_PROB: f64 = 0.15;

pub fn path_graph(n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v, 1).unwrap();
    }
    g
}

pub fn cycle_graph(n: usize) -> WeightedGraph {
    let mut g = path_graph(n);
    if n >= 3 {
        g.add_edge(n - 1, 0, 1).unwrap();
    }
    g
}

pub fn star_graph(leaves: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v, 1).unwrap();
    }
    g
}

pub fn complete_graph(n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, 1).unwrap();
        }
    }
    g
}

/// Partial grid on n vertices in row-major order, with rows of width
/// floor(sqrt(n)).
pub fn grid_graph(n: usize) -> WeightedGraph {
    let cols = (n as f64).sqrt().floor().max(1.0) as usize;
    let mut g = WeightedGraph::new(n);
    for v in 0..n {
        let (r, c) = (v / cols, v % cols);
        if c + 1 < cols && v + 1 < n {
            g.add_edge(v, v + 1, 1).unwrap();
        }
        let below = (r + 1) * cols + c;
        if below < n {
            g.add_edge(v, below, 1).unwrap();
        }
    }
    g
}

/// Uniform random labeled tree from a seeded Pruefer sequence.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> WeightedGraph {
    if n == 1 {
        return WeightedGraph::new(1);
    }
    if n == 2 {
        return path_graph(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut g = WeightedGraph::new(n);
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &seq {
        let std::cmp::Reverse(leaf) = heap.pop().unwrap();
        g.add_edge(leaf, v, 1).unwrap();
        degree[v] -= 1;
        if degree[v] == 1 {
            heap.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = heap.pop().unwrap();
    let std::cmp::Reverse(b) = heap.pop().unwrap();
    g.add_edge(a, b, 1).unwrap();
    g
}

/// Uniform spanning tree plus Bernoulli extra edges, weights all 1.
pub fn random_connected(n: usize, extra_edge_prob: f64, rng: &mut ChaCha8Rng) -> WeightedGraph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if g.edge_between(u, v).is_none() && rng.random_bool(extra_edge_prob) {
                g.add_edge(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// Like [`random_connected`] but with weights drawn uniformly from
/// `1..=max_weight`.
pub fn random_connected_weighted(
    n: usize,
    extra_edge_prob: f64,
    max_weight: u64,
    rng: &mut ChaCha8Rng,
) -> WeightedGraph {
    let shape = random_connected(n, extra_edge_prob, rng);
    let mut g = WeightedGraph::new(n);
    for e in shape.edges() {
        g.add_edge_with_id(e.id, e.u, e.v, rng.random_range(1..=max_weight))
            .unwrap();
    }
    g
}

/// Unit-cost instance of the requested shape; deterministic per seed.
pub fn gen_graph(kind: GraphKind, n: usize, seed: u64) -> Result<GmegInstance> {
    gen_graph_with(kind, n, seed, DEFAULT_EXTRA_EDGE_PROB)
}

pub fn gen_graph_with(
    kind: GraphKind,
    n: usize,
    seed: u64,
    extra_edge_prob: f64,
) -> Result<GmegInstance> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "generator needs n >= 2, got {n}"
        )));
    }
    if kind == GraphKind::Cycle && n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a simple cycle needs n >= 3, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {extra_edge_prob} outside [0,1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match kind {
        GraphKind::Path => path_graph(n),
        GraphKind::Cycle => cycle_graph(n),
        GraphKind::Tree => random_tree(n, &mut rng),
        GraphKind::Grid => grid_graph(n),
        GraphKind::RandomConnected => random_connected(n, extra_edge_prob, &mut rng),
    };
    Ok(GmegInstance::unit(graph))
}

/// A cycle of length `cycle_len` (>= 7 keeps the girth valid for the apex
/// construction) with pendant vertices attached at seeded positions.
pub fn cycle_with_pendants(cycle_len: usize, pendants: usize, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cycle_len + pendants;
    let mut g = WeightedGraph::new(n);
    for v in 1..cycle_len {
        g.add_edge(v - 1, v, 1).unwrap();
    }
    g.add_edge(cycle_len - 1, 0, 1).unwrap();
    for p in 0..pendants {
        let anchor = rng.random_range(0..cycle_len + p);
        g.add_edge(anchor, cycle_len + p, 1).unwrap();
    }
    g
}

/// All non-isomorphic free trees on `n` vertices.
///
/// Enumerates parent arrays with `parent[i] < i` (every unlabeled rooted
/// tree admits such a labeling) and dedupes by a centroid-rooted canonical
/// form.
pub fn all_free_trees(n: usize) -> Vec<WeightedGraph> {
    assert!(n >= 1, "free trees need at least one vertex");
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    let mut parents = vec![0usize; n];
    enumerate_parent_arrays(n, 1, &mut parents, &mut seen, &mut out);
    out
}

fn enumerate_parent_arrays(
    n: usize,
    next: usize,
    parents: &mut Vec<usize>,
    seen: &mut HashSet<String>,
    out: &mut Vec<WeightedGraph>,
) {
    if next == n {
        let mut g = WeightedGraph::new(n);
        for v in 1..n {
            g.add_edge(parents[v], v, 1).unwrap();
        }
        let canon = free_tree_canonical_form(&g);
        if seen.insert(canon) {
            out.push(g);
        }
        return;
    }
    for p in 0..next {
        parents[next] = p;
        enumerate_parent_arrays(n, next + 1, parents, seen, out);
    }
}

/// Canonical string of a free tree: the minimum rooted canonical form over
/// its one or two centroids.
fn free_tree_canonical_form(g: &WeightedGraph) -> String {
    tree_centroids(g)
        .into_iter()
        .map(|c| rooted_canonical_form(g, c, usize::MAX))
        .min()
        .expect("tree has a centroid")
}

fn rooted_canonical_form(g: &WeightedGraph, v: VertexId, parent: VertexId) -> String {
    let mut parts: Vec<String> = g
        .neighbors(v)
        .filter(|&w| w != parent)
        .map(|w| rooted_canonical_form(g, w, v))
        .collect();
    parts.sort();
    format!("({})", parts.join(""))
}

/// The one or two vertices of a tree minimizing the largest component left
/// by their removal.
pub fn tree_centroids(g: &WeightedGraph) -> Vec<VertexId> {
    let n = g.vertex_count();
    if n == 1 {
        return vec![0];
    }
    // Iterative BFS order, then subtree sizes bottom-up.
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut subtree = vec![1usize; n];
    for &v in order.iter().skip(1).rev() {
        subtree[parent[v]] += subtree[v];
    }
    let mut best = usize::MAX;
    let mut centroids = Vec::new();
    for v in 0..n {
        let mut largest = n - subtree[v];
        for w in g.neighbors(v) {
            if w != parent[v] {
                largest = largest.max(subtree[w]);
            }
        }
        match largest.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = largest;
                centroids = vec![v];
            }
            std::cmp::Ordering::Equal => centroids.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    centroids
}

/// Helper for tests that need a deterministic set of leaves.
pub fn leaves(g: &WeightedGraph) -> BTreeSet<VertexId> {
    g.vertices().filter(|&v| g.degree(v) == 1).collect()
}
