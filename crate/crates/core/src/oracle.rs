//! All-pairs distances and shortest-path counts.
//!
//! Path counts grow exponentially, so the oracle stores them modulo one
//! random 62-bit prime drawn from a seeded generator. Two counts are then
//! compared as residues; a collision happens with probability at most 1/p
//! per comparison, and the reference edge-removal criterion cross-checks the
//! fast one throughout the test suite.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph, INFINITE_DIST};

/// Seed for the oracle prime when the caller does not supply one.
pub const DEFAULT_ORACLE_SEED: u64 = 0x6d65_6773_6574_5031;

/// Any finite distance is a sum of at most all edge weights; capping the
/// total keeps three-term sums inside u64.
const MAX_TOTAL_WEIGHT: u64 = 1 << 62;

#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    prime: u64,
    dist: Vec<u64>,
    sigma: Vec<u64>,
}

impl DistanceOracle {
    /// Builds the oracle with the default prime seed.
    pub fn build(g: &WeightedGraph) -> Result<Self> {
        Self::build_seeded(g, DEFAULT_ORACLE_SEED)
    }

    pub fn build_seeded(g: &WeightedGraph, seed: u64) -> Result<Self> {
        let total: u64 = g
            .edges()
            .try_fold(0u64, |acc, e| acc.checked_add(e.weight))
            .ok_or(Error::ArithmeticOverflow)?;
        if total > MAX_TOTAL_WEIGHT {
            return Err(Error::ArithmeticOverflow);
        }
        let n = g.vertex_count();
        let prime = random_prime_62(seed);
        let mut dist = vec![INFINITE_DIST; n * n];
        let mut sigma = vec![0u64; n * n];
        for s in 0..n {
            let (d, c) = dijkstra_counting(g, s, prime, None);
            dist[s * n..(s + 1) * n].copy_from_slice(&d);
            sigma[s * n..(s + 1) * n].copy_from_slice(&c);
        }
        Ok(DistanceOracle {
            n,
            prime,
            dist,
            sigma,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dist(&self, u: VertexId, v: VertexId) -> u64 {
        self.dist[u * self.n + v]
    }

    /// Shortest-path count modulo the oracle prime.
    pub fn sigma(&self, u: VertexId, v: VertexId) -> u64 {
        self.sigma[u * self.n + v]
    }

    pub fn mul_sigma(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.prime as u128) as u64
    }

    pub fn add_sigma(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.prime as u128) as u64
    }
}

/// All-pairs distances and modular path counts with the default seed.
pub fn all_pairs_distances(g: &WeightedGraph) -> Result<DistanceOracle> {
    DistanceOracle::build(g)
}

/// Shortest u-v distance with edge `e` deleted.
pub fn distance_without_edge(
    g: &WeightedGraph,
    e: EdgeId,
    u: VertexId,
    v: VertexId,
) -> Result<u64> {
    g.edge(e)?;
    Ok(dijkstra_skipping(g, u, e)[v])
}

fn dijkstra_skipping(g: &WeightedGraph, source: VertexId, skip: EdgeId) -> Vec<u64> {
    let n = g.vertex_count();
    let mut dist = vec![INFINITE_DIST; n];
    dist[source] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for e in g.incident(x) {
            if e.id == skip {
                continue;
            }
            let w = e.other(x);
            let nd = d + e.weight;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    dist
}

/// Single-source Dijkstra that also counts shortest paths modulo `modulus`,
/// optionally ignoring one edge. Counts are finalized when a vertex is
/// settled, so contributions are added exactly once per settled neighbor.
fn dijkstra_counting(
    g: &WeightedGraph,
    source: VertexId,
    modulus: u64,
    skip: Option<EdgeId>,
) -> (Vec<u64>, Vec<u64>) {
    let n = g.vertex_count();
    let mut dist = vec![INFINITE_DIST; n];
    let mut count = vec![0u64; n];
    if n == 0 {
        return (dist, count);
    }
    dist[source] = 0;
    count[source] = 1;
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if settled[x] {
            continue;
        }
        settled[x] = true;
        for e in g.incident(x) {
            if Some(e.id) == skip {
                continue;
            }
            let w = e.other(x);
            if settled[w] {
                continue;
            }
            let nd = d + e.weight;
            if nd < dist[w] {
                dist[w] = nd;
                count[w] = count[x];
                heap.push(Reverse((nd, w)));
            } else if nd == dist[w] {
                count[w] = ((count[w] as u128 + count[x] as u128) % modulus as u128) as u64;
            }
        }
    }
    (dist, count)
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// First prime found among seeded random odd 62-bit candidates.
fn random_prime_62(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = (rng.random::<u64>() | (1 << 61) | 1) & ((1 << 62) - 1);
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{cycle_graph, path_graph};

    #[test]
    fn path_distances_and_counts() {
        let g = path_graph(3);
        let o = DistanceOracle::build(&g).unwrap();
        assert_eq!(o.dist(0, 2), 2);
        assert_eq!(o.sigma(0, 2), 1);
        assert_eq!(o.dist(1, 1), 0);
        assert_eq!(o.sigma(1, 1), 1);
    }

    #[test]
    fn cycle_has_two_antipodal_paths() {
        let g = cycle_graph(4);
        let o = DistanceOracle::build(&g).unwrap();
        assert_eq!(o.dist(0, 2), 2);
        assert_eq!(o.sigma(0, 2), 2);
        assert_eq!(o.sigma(0, 1), 1);
    }

    #[test]
    fn disconnected_pair_is_infinite_with_zero_count() {
        let g = WeightedGraph::new(2);
        let o = DistanceOracle::build(&g).unwrap();
        assert_eq!(o.dist(0, 1), INFINITE_DIST);
        assert_eq!(o.sigma(0, 1), 0);
    }

    #[test]
    fn removal_examples() {
        let p3 = path_graph(3);
        assert_eq!(distance_without_edge(&p3, 0, 0, 2).unwrap(), INFINITE_DIST);
        let c4 = cycle_graph(4);
        assert_eq!(distance_without_edge(&c4, 0, 0, 1).unwrap(), 3);
        assert_eq!(distance_without_edge(&c4, 0, 2, 3).unwrap(), 1);
        assert!(matches!(
            distance_without_edge(&c4, 99, 0, 1),
            Err(Error::UnknownEdge(99))
        ));
    }

    #[test]
    fn oracle_prime_is_deterministic_per_seed() {
        let g = path_graph(2);
        let a = DistanceOracle::build_seeded(&g, 7).unwrap();
        let b = DistanceOracle::build_seeded(&g, 7).unwrap();
        let c = DistanceOracle::build_seeded(&g, 8).unwrap();
        assert_eq!(a.prime(), b.prime());
        assert_ne!(a.prime(), c.prime());
        assert!(is_prime_u64(a.prime()));
        assert!(a.prime() < 1 << 62);
    }

    #[test]
    fn weight_sum_overflow_is_an_error() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, u64::MAX / 2).unwrap();
        g.add_edge(1, 2, u64::MAX / 2).unwrap();
        assert!(matches!(
            DistanceOracle::build(&g),
            Err(Error::ArithmeticOverflow)
        ));
    }
}
