//! Balanced vertex separators.
//!
//! A separation (S, A, B) of a graph splits the vertices so that no edge
//! joins A and B and both sides hold at least an alpha fraction of the
//! vertices. Three finders are provided: an exhaustive one that certifies
//! non-separability on small graphs, a centroid-based one for forests, and a
//! BFS-layer heuristic for everything else.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};

/// Balance fraction, kept rational so side checks are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    /// Requires 0 < num/den < 1/2.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || 2 * num >= den {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1/2), got {num}/{den}"
            )));
        }
        Ok(Alpha { num, den })
    }

    pub fn parse(s: &str) -> Result<Self> {
        if let Some((n, d)) = s.split_once('/') {
            let num = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad alpha numerator '{n}'")))?;
            let den = d
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad alpha denominator '{d}'")))?;
            return Alpha::new(num, den);
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad alpha '{s}'")))?;
        if !(0.0..0.5).contains(&x) || x <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1/2), got {s}"
            )));
        }
        Alpha::new((x * 10_000.0).round() as u64, 10_000)
    }

    /// min side size required for a graph on n vertices: |side| >= alpha*n.
    pub fn side_ok(&self, side: usize, n: usize) -> bool {
        side as u64 * self.den >= self.num * n as u64
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha { num: 1, den: 4 }
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub separator: BTreeSet<VertexId>,
    pub side_a: BTreeSet<VertexId>,
    pub side_b: BTreeSet<VertexId>,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorStrategy {
    Exact,
    BfsLayer,
    TreeCentroid,
    Auto,
}

impl SeparatorStrategy {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "bfs-layer" | "bfs" => Ok(Self::BfsLayer),
            "tree-centroid" | "centroid" => Ok(Self::TreeCentroid),
            "auto" => Ok(Self::Auto),
            other => Err(Error::InvalidArgument(format!(
                "unknown separator strategy '{other}'"
            ))),
        }
    }
}

/// Outcome of a separator search. Only the exhaustive strategy certifies a
/// negative answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorOutcome {
    Found(Separation),
    NonSeparable { certified: bool },
}

impl SeparatorOutcome {
    pub fn separation(&self) -> Option<&Separation> {
        match self {
            SeparatorOutcome::Found(s) => Some(s),
            SeparatorOutcome::NonSeparable { .. } => None,
        }
    }
}

const EXACT_MAX_N: usize = 15;
const BFS_SEED_LIMIT: usize = 8;

/// Checks all separation invariants against `g`: partition (an error when
/// violated), non-empty sides, no A-B edge, and the balance bound. S may be
/// empty for disconnected graphs; the path condition then holds vacuously.
pub fn verify_separation(g: &WeightedGraph, sep: &Separation) -> Result<bool> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for set in [&sep.separator, &sep.side_a, &sep.side_b] {
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} appears in two parts of the separation"
                )));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::InvalidArgument(
            "separation does not cover every vertex".into(),
        ));
    }
    if sep.side_a.is_empty() || sep.side_b.is_empty() {
        return Ok(false);
    }
    for e in g.edges() {
        let crosses = (sep.side_a.contains(&e.u) && sep.side_b.contains(&e.v))
            || (sep.side_a.contains(&e.v) && sep.side_b.contains(&e.u));
        if crosses {
            return Ok(false);
        }
    }
    let min_side = sep.side_a.len().min(sep.side_b.len());
    Ok(sep.alpha.side_ok(min_side, n))
}

pub fn find_separator(
    g: &WeightedGraph,
    alpha: Alpha,
    strategy: SeparatorStrategy,
) -> Result<SeparatorOutcome> {
    let n = g.vertex_count();
    // Disconnected inputs may split along component lines with no separator
    // vertices at all.
    if !g.is_connected() {
        if let Some((a, b)) = pack_components(&sorted_components(g), alpha, n) {
            return Ok(SeparatorOutcome::Found(Separation {
                separator: BTreeSet::new(),
                side_a: a,
                side_b: b,
                alpha,
            }));
        }
    }
    Ok(match strategy {
        SeparatorStrategy::Exact => exact_separator(g, alpha),
        SeparatorStrategy::TreeCentroid => {
            if !is_forest(g) {
                return Err(Error::InvalidArgument(
                    "tree-centroid separator strategy needs a forest".into(),
                ));
            }
            centroid_separator(g, alpha)
        }
        SeparatorStrategy::BfsLayer => bfs_layer_separator(g, alpha),
        SeparatorStrategy::Auto => {
            if n <= EXACT_MAX_N {
                exact_separator(g, alpha)
            } else if is_forest(g) {
                centroid_separator(g, alpha)
            } else {
                bfs_layer_separator(g, alpha)
            }
        }
    })
}

fn is_forest(g: &WeightedGraph) -> bool {
    g.edge_count() + g.components().len() == g.vertex_count()
}

fn sorted_components(g: &WeightedGraph) -> Vec<Vec<VertexId>> {
    let mut comps = g.components();
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    comps
}

/// Exact subset-sum packing of whole components into two sides, preferring
/// the most balanced valid split. Side A greedily takes a component
/// (largest-first order) whenever the remaining ones can still reach the
/// chosen target, so the assignment is canonical.
fn pack_components(
    comps: &[Vec<VertexId>],
    alpha: Alpha,
    n: usize,
) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
    if comps.len() < 2 {
        return None;
    }
    let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let total: usize = sizes.iter().sum();
    // reachable[i][t]: components i.. can sum to exactly t
    let mut reachable = vec![vec![false; total + 1]; sizes.len() + 1];
    reachable[sizes.len()][0] = true;
    for i in (0..sizes.len()).rev() {
        for t in 0..=total {
            reachable[i][t] =
                reachable[i + 1][t] || (t >= sizes[i] && reachable[i + 1][t - sizes[i]]);
        }
    }
    let valid = |t: usize| -> bool {
        t > 0 && t < total && alpha.side_ok(t, n) && alpha.side_ok(total - t, n)
    };
    let target = (0..=total)
        .filter(|&t| valid(t) && reachable[0][t])
        .min_by_key(|&t| (total.abs_diff(2 * t), t))?;
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    let mut need = target;
    for (i, comp) in comps.iter().enumerate() {
        if comp.len() <= need && reachable[i + 1][need - comp.len()] {
            need -= comp.len();
            a.extend(comp.iter().copied());
        } else {
            b.extend(comp.iter().copied());
        }
    }
    Some((a, b))
}

/// Minimum-size separator by exhaustive search, lexicographically smallest
/// among minimums; certified NonSeparable when nothing works.
fn exact_separator(g: &WeightedGraph, alpha: Alpha) -> SeparatorOutcome {
    let n = g.vertex_count();
    let vertices: Vec<VertexId> = g.vertices().collect();
    for size in 0..n.saturating_sub(1) {
        let mut combo = crate::util::Combinations::new(n, size);
        while let Some(ix) = combo.next() {
            let sep: BTreeSet<VertexId> = ix.iter().map(|&i| vertices[i]).collect();
            let remaining: BTreeSet<VertexId> =
                g.vertices().filter(|v| !sep.contains(v)).collect();
            let (sub, to_old) = g.induced_subgraph(&remaining);
            let comps: Vec<Vec<VertexId>> = sorted_components(&sub)
                .into_iter()
                .map(|c| c.into_iter().map(|v| to_old[v]).collect())
                .collect();
            if let Some((a, b)) = pack_components(&comps, alpha, n) {
                return SeparatorOutcome::Found(Separation {
                    separator: sep,
                    side_a: a,
                    side_b: b,
                    alpha,
                });
            }
        }
    }
    SeparatorOutcome::NonSeparable { certified: true }
}

/// Single-vertex separator at a tree centroid; on disconnected forests the
/// centroid of the largest component is used. Not a certificate.
fn centroid_separator(g: &WeightedGraph, alpha: Alpha) -> SeparatorOutcome {
    let n = g.vertex_count();
    if n < 2 {
        return SeparatorOutcome::NonSeparable { certified: false };
    }
    let comps = sorted_components(g);
    let largest: BTreeSet<VertexId> = comps[0].iter().copied().collect();
    let (sub, to_old) = g.induced_subgraph(&largest);
    let centroid = to_old[crate::gen::tree_centroids(&sub)[0]];

    let sep: BTreeSet<VertexId> = [centroid].into_iter().collect();
    let remaining: BTreeSet<VertexId> = g.vertices().filter(|&v| v != centroid).collect();
    let (rest, rest_map) = g.induced_subgraph(&remaining);
    let pieces: Vec<Vec<VertexId>> = sorted_components(&rest)
        .into_iter()
        .map(|c| c.into_iter().map(|v| rest_map[v]).collect())
        .collect();
    match pack_greedy(&pieces, alpha, n) {
        Some((a, b)) => SeparatorOutcome::Found(Separation {
            separator: sep,
            side_a: a,
            side_b: b,
            alpha,
        }),
        None => SeparatorOutcome::NonSeparable { certified: false },
    }
}

/// Largest-first greedy packing into the currently smaller side.
fn pack_greedy(
    comps: &[Vec<VertexId>],
    alpha: Alpha,
    n: usize,
) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
    if comps.len() < 2 {
        return None;
    }
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for comp in comps {
        let side = if a.len() <= b.len() { &mut a } else { &mut b };
        side.extend(comp.iter().copied());
    }
    let min_side = a.len().min(b.len());
    if !a.is_empty() && !b.is_empty() && alpha.side_ok(min_side, n) {
        Some((a, b))
    } else {
        None
    }
}

/// Up to eight BFS sweeps from extremal-eccentricity seeds; each layer of
/// each sweep is a candidate separator with the nearer layers on one side
/// and the farther ones plus unreached components on the other. The
/// smallest valid candidate wins; ties prefer better balance, then the
/// earlier seed.
fn bfs_layer_separator(g: &WeightedGraph, alpha: Alpha) -> SeparatorOutcome {
    let n = g.vertex_count();
    let mut ecc: Vec<(usize, VertexId)> = (0..n)
        .map(|v| {
            let levels = bfs_levels(g, v);
            let e = levels
                .iter()
                .filter(|&&d| d != usize::MAX)
                .copied()
                .max()
                .unwrap_or(0);
            (e, v)
        })
        .collect();
    ecc.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let mut best: Option<(usize, usize, Separation)> = None;
    for &(_, seed) in ecc.iter().take(BFS_SEED_LIMIT) {
        let levels = bfs_levels(g, seed);
        let max_level = levels
            .iter()
            .filter(|&&d| d != usize::MAX)
            .copied()
            .max()
            .unwrap_or(0);
        for cut in 1..max_level.max(1) {
            let mut sep = BTreeSet::new();
            let mut near = BTreeSet::new();
            let mut far = BTreeSet::new();
            for v in 0..n {
                match levels[v] {
                    usize::MAX => {
                        far.insert(v);
                    }
                    d if d < cut => {
                        near.insert(v);
                    }
                    d if d == cut => {
                        sep.insert(v);
                    }
                    _ => {
                        far.insert(v);
                    }
                }
            }
            // Vertices outside the seed's component land on the far side;
            // no edge can join them to the near layers.
            let candidate = Separation {
                separator: sep,
                side_a: near,
                side_b: far,
                alpha,
            };
            if verify_separation(g, &candidate).unwrap_or(false) {
                let balance = candidate.side_a.len().abs_diff(candidate.side_b.len());
                let key = (candidate.separator.len(), balance);
                if best
                    .as_ref()
                    .is_none_or(|(s, b, _)| key < (*s, *b))
                {
                    best = Some((key.0, key.1, candidate));
                }
            }
        }
    }
    match best {
        Some((_, _, sep)) => SeparatorOutcome::Found(sep),
        None => SeparatorOutcome::NonSeparable { certified: false },
    }
}

fn bfs_levels(g: &WeightedGraph, source: VertexId) -> Vec<usize> {
    let mut level = vec![usize::MAX; g.vertex_count()];
    level[source] = 0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for w in g.neighbors(x) {
            if level[w] == usize::MAX {
                level[w] = level[x] + 1;
                queue.push_back(w);
            }
        }
    }
    level
}
