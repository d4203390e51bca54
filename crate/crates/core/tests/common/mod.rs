//! Brute-force oracles for the test suite, deliberately independent of the
//! library's Dijkstra/modular-count implementation: distances come from
//! Floyd-Warshall, path counts from explicit path enumeration, and optima
//! from full subset scans.

#![allow(dead_code)]

use std::collections::BTreeSet;

use megset::graph::{EdgeId, GmegInstance, VertexId, WeightedGraph, INFINITE_DIST};

pub fn floyd_warshall(g: &WeightedGraph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let mut dist = vec![vec![INFINITE_DIST; n]; n];
    for v in 0..n {
        dist[v][v] = 0;
    }
    for e in g.edges() {
        dist[e.u][e.v] = dist[e.u][e.v].min(e.weight);
        dist[e.v][e.u] = dist[e.v][e.u].min(e.weight);
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k] == INFINITE_DIST {
                continue;
            }
            for j in 0..n {
                if dist[k][j] == INFINITE_DIST {
                    continue;
                }
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    dist
}

/// Every shortest s-t path as a vertex sequence, by DFS over tight edges.
pub fn enumerate_shortest_paths(g: &WeightedGraph, s: VertexId, t: VertexId) -> Vec<Vec<VertexId>> {
    let dist = floyd_warshall(g);
    if dist[s][t] == INFINITE_DIST {
        return Vec::new();
    }
    let mut paths = Vec::new();
    let mut current = vec![s];
    dfs_paths(g, &dist, t, dist[s][t], &mut current, &mut paths);
    paths
}

fn dfs_paths(
    g: &WeightedGraph,
    dist: &[Vec<u64>],
    t: VertexId,
    budget: u64,
    current: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    let x = *current.last().unwrap();
    if x == t {
        out.push(current.clone());
        return;
    }
    for e in g.incident(x) {
        let w = e.other(x);
        if e.weight <= budget && dist[w][t] == budget - e.weight {
            current.push(w);
            dfs_paths(g, dist, t, budget - e.weight, current, out);
            current.pop();
        }
    }
}

pub fn exact_path_count(g: &WeightedGraph, s: VertexId, t: VertexId) -> u128 {
    if s == t {
        return 1;
    }
    enumerate_shortest_paths(g, s, t).len() as u128
}

fn path_uses_edge(path: &[VertexId], u: VertexId, v: VertexId) -> bool {
    path.windows(2)
        .any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
}

/// Ground truth: x,y monitors e iff some shortest path exists and all of
/// them traverse e.
pub fn brute_pair_monitors(g: &WeightedGraph, e: EdgeId, x: VertexId, y: VertexId) -> bool {
    let edge = g.edge(e).unwrap();
    let paths = enumerate_shortest_paths(g, x, y);
    !paths.is_empty() && paths.iter().all(|p| path_uses_edge(p, edge.u, edge.v))
}

/// Precomputed pair-monitors-edge answers from path enumeration, so that
/// exhaustive subset scans stay affordable.
pub struct MonitorTable {
    required: Vec<EdgeId>,
    /// `table[k][x][y]`: pair (x,y) monitors required edge `required[k]`.
    table: Vec<Vec<Vec<bool>>>,
}

impl MonitorTable {
    pub fn build(inst: &GmegInstance) -> Self {
        let n = inst.graph().vertex_count();
        let required: Vec<EdgeId> = inst.required().iter().copied().collect();
        let table = required
            .iter()
            .map(|&e| {
                let mut per_edge = vec![vec![false; n]; n];
                for x in 0..n {
                    for y in x + 1..n {
                        let hit = brute_pair_monitors(inst.graph(), e, x, y);
                        per_edge[x][y] = hit;
                        per_edge[y][x] = hit;
                    }
                }
                per_edge
            })
            .collect();
        MonitorTable { required, table }
    }

    pub fn monitored(&self, set: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
        let members: Vec<VertexId> = set.iter().copied().collect();
        let mut out = BTreeSet::new();
        for (k, &e) in self.required.iter().enumerate() {
            'pairs: for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    if self.table[k][x][y] {
                        out.insert(e);
                        break 'pairs;
                    }
                }
            }
        }
        out
    }

    pub fn is_feasible(&self, set: &BTreeSet<VertexId>) -> bool {
        self.monitored(set).len() == self.required.len()
    }
}

pub fn brute_monitored_edges(inst: &GmegInstance, set: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
    MonitorTable::build(inst).monitored(set)
}

pub fn brute_is_feasible(inst: &GmegInstance, set: &BTreeSet<VertexId>) -> bool {
    let table = MonitorTable::build(inst);
    table.is_feasible(set)
}

/// Minimum cost over all 2^n subsets, with the full list of optimal sets.
/// Only sensible for small n.
pub fn brute_optima(inst: &GmegInstance) -> Option<(u64, Vec<BTreeSet<VertexId>>)> {
    let n = inst.graph().vertex_count();
    assert!(n <= 20, "subset scan needs a small instance");
    let table = MonitorTable::build(inst);
    let mut best: Option<u64> = None;
    let mut optima = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<VertexId> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if !table.is_feasible(&set) {
            continue;
        }
        let cost = inst.set_cost(&set);
        match best {
            Some(b) if cost > b => {}
            Some(b) if cost == b => optima.push(set),
            _ => {
                best = Some(cost);
                optima = vec![set];
            }
        }
    }
    best.map(|b| (b, optima))
}

/// Exhaustive check that no valid separation of any size exists.
pub fn brute_non_separable(g: &WeightedGraph, alpha: megset::separator::Alpha) -> bool {
    let n = g.vertex_count();
    assert!(n <= 12, "3^n scan needs a small graph");
    let mut assignment = vec![0u8; n]; // 0 = S, 1 = A, 2 = B
    loop {
        let sep: BTreeSet<VertexId> = (0..n).filter(|&v| assignment[v] == 0).collect();
        let a: BTreeSet<VertexId> = (0..n).filter(|&v| assignment[v] == 1).collect();
        let b: BTreeSet<VertexId> = (0..n).filter(|&v| assignment[v] == 2).collect();
        let candidate = megset::separator::Separation {
            separator: sep,
            side_a: a,
            side_b: b,
            alpha,
        };
        if megset::separator::verify_separation(g, &candidate).unwrap_or(false) {
            return false;
        }
        // Next assignment in base 3.
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            assignment[i] += 1;
            if assignment[i] < 3 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Seeded corpus of random connected weighted instances, unit costs, all
/// edges required.
pub fn random_corpus(
    count: usize,
    n_min: usize,
    n_max: usize,
    max_weight: u64,
    seed: u64,
) -> Vec<GmegInstance> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(n_min..=n_max);
            let g = if max_weight <= 1 {
                megset::gen::random_connected(n, 0.2, &mut rng)
            } else {
                megset::gen::random_connected_weighted(n, 0.2, max_weight, &mut rng)
            };
            GmegInstance::unit(g)
        })
        .collect()
}
