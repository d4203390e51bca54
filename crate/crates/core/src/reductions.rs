//! Executable hardness constructions with certified solution converters.
//!
//! Two gadget families are built here. The first turns a set-cover instance
//! into a monitoring instance made of k copies of the element-set incidence
//! graph plus anchor and leaf apparatus; optimal monitoring sets of the
//! gadget decompose into k set covers. The second attaches pendant paths and
//! one near-universal apex to a high-girth graph so that monitoring sets
//! correspond to dominating sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{GmegInstance, VertexId, WeightedGraph};
use crate::monitor::{is_feasible_solution, minimalize, OracleMode};
use crate::oracle::DistanceOracle;
use crate::util::Combinations;

/// A set-cover instance over items 0..item_count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub item_count: usize,
    pub sets: Vec<BTreeSet<usize>>,
}

impl SetCoverInstance {
    pub fn new(item_count: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        for (j, s) in sets.iter().enumerate() {
            if let Some(&bad) = s.iter().find(|&&x| x >= item_count) {
                return Err(Error::InvalidArgument(format!(
                    "set {j} contains item {bad} outside 0..{item_count}"
                )));
            }
        }
        Ok(SetCoverInstance { item_count, sets })
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Normalized means: at least two sets, every set has at least two
    /// items, every item lies in at least two sets, and the sets cover
    /// everything.
    pub fn is_normalized(&self) -> bool {
        if self.sets.len() < 2 {
            return false;
        }
        if self.sets.iter().any(|s| s.len() < 2) {
            return false;
        }
        (0..self.item_count).all(|x| self.sets.iter().filter(|s| s.contains(&x)).count() >= 2)
    }

    pub fn covers(&self, selection: &BTreeSet<usize>) -> bool {
        let covered: BTreeSet<usize> = selection
            .iter()
            .flat_map(|&j| self.sets[j].iter().copied())
            .collect();
        covered.len() == self.item_count
    }

    /// Minimum cover size by exhaustive search, None when no cover exists.
    pub fn optimum_size(&self) -> Option<usize> {
        let all: BTreeSet<usize> = (0..self.sets.len()).collect();
        if !self.covers(&all) {
            return None;
        }
        for k in 0..=self.sets.len() {
            let mut combos = Combinations::new(self.sets.len(), k);
            while let Some(ix) = combos.next() {
                if self.covers(&ix.iter().copied().collect()) {
                    return Some(k);
                }
            }
        }
        None
    }
}

/// Repeatedly applies two reduction rules until the instance is normalized:
/// an item contained in a single set forces that set (the set and all its
/// items leave the instance), and a set with fewer than two items is
/// dropped. Returns the normalized instance (items reindexed densely) and
/// the forced sets as original indices; the original optimum is the forced
/// count plus the normalized optimum.
pub fn reduce_set_cover_instance(
    sc: &SetCoverInstance,
) -> Result<(SetCoverInstance, Vec<usize>)> {
    let union: BTreeSet<usize> = sc.sets.iter().flatten().copied().collect();
    if let Some(missing) = (0..sc.item_count).find(|x| !union.contains(x)) {
        return Err(Error::UncoverableItem(missing));
    }

    let mut items: BTreeSet<usize> = (0..sc.item_count).collect();
    // (original index, live item set); dead sets become None
    let mut sets: Vec<Option<BTreeSet<usize>>> = sc.sets.iter().cloned().map(Some).collect();
    let mut forced = Vec::new();

    loop {
        let live =
            |sets: &Vec<Option<BTreeSet<usize>>>, x: usize| -> Vec<usize> {
                sets.iter()
                    .enumerate()
                    .filter_map(|(j, s)| s.as_ref().filter(|s| s.contains(&x)).map(|_| j))
                    .collect()
            };

        // Rule 1: an item with a single occurrence forces its set.
        let singleton_item = items
            .iter()
            .copied()
            .find_map(|x| match live(&sets, x).as_slice() {
                [only] => Some((x, *only)),
                _ => None,
            });
        if let Some((_, j)) = singleton_item {
            forced.push(j);
            let gone = sets[j].take().expect("live set");
            for x in &gone {
                items.remove(x);
            }
            for s in sets.iter_mut().flatten() {
                for x in &gone {
                    s.remove(x);
                }
            }
            continue;
        }

        // Rule 2: a set with fewer than two live items is useless.
        let small = sets
            .iter()
            .position(|s| s.as_ref().is_some_and(|s| s.len() < 2));
        if let Some(j) = small {
            sets[j] = None;
            continue;
        }
        break;
    }

    let kept_items: Vec<usize> = items.iter().copied().collect();
    let reindex = |x: usize| kept_items.binary_search(&x).expect("kept item");
    let new_sets: Vec<BTreeSet<usize>> = sets
        .into_iter()
        .flatten()
        .map(|s| s.iter().map(|&x| reindex(x)).collect())
        .collect();
    let normalized = SetCoverInstance::new(kept_items.len(), new_sets)?;
    Ok((normalized, forced))
}

/// Role of one gadget vertex in the set-cover construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverRole {
    /// Copy `copy` of item `item`.
    ItemCopy { item: usize, copy: usize },
    /// Copy `copy` of set `set`.
    SetCopy { set: usize, copy: usize },
    /// The clique vertex shared by all copies of item `item`.
    ItemAnchor { item: usize },
    /// The pendant attached to an item anchor.
    ItemLeaf { item: usize },
    /// The vertex shared by all copies of set `set`.
    SetAnchor { set: usize },
    /// The pendant attached to a set anchor.
    SetLeaf { set: usize },
}

#[derive(Debug, Clone)]
pub struct SetCoverGadget {
    pub source: SetCoverInstance,
    pub copies: usize,
    pub instance: GmegInstance,
    pub roles: Vec<CoverRole>,
}

impl SetCoverGadget {
    fn stride(&self) -> usize {
        self.source.item_count + self.source.set_count()
    }

    pub fn item_copy(&self, item: usize, copy: usize) -> VertexId {
        copy * self.stride() + item
    }

    pub fn set_copy(&self, set: usize, copy: usize) -> VertexId {
        copy * self.stride() + self.source.item_count + set
    }

    pub fn item_anchor(&self, item: usize) -> VertexId {
        self.copies * self.stride() + item
    }

    pub fn item_leaf(&self, item: usize) -> VertexId {
        self.copies * self.stride() + self.source.item_count + item
    }

    pub fn set_anchor(&self, set: usize) -> VertexId {
        self.copies * self.stride() + 2 * self.source.item_count + set
    }

    pub fn set_leaf(&self, set: usize) -> VertexId {
        self.copies * self.stride() + 2 * self.source.item_count + self.source.set_count() + set
    }

    /// All pendant vertices; they belong to every feasible solution.
    pub fn pendant_vertices(&self) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for x in 0..self.source.item_count {
            out.insert(self.item_leaf(x));
        }
        for j in 0..self.source.set_count() {
            out.insert(self.set_leaf(j));
        }
        out
    }
}

/// Builds the gadget: `copies` disjoint copies of the item-set incidence
/// graph, one anchor-plus-pendant pair per item and per set, anchors of
/// items forming a clique, anchors joined to all their copies. Unit weights,
/// unit costs, every edge required.
pub fn build_setcover_gadget(sc: &SetCoverInstance, copies: usize) -> Result<SetCoverGadget> {
    if !sc.is_normalized() {
        return Err(Error::Precondition(
            "set-cover gadget needs a normalized instance: >=2 sets, >=2 items per set, \
             >=2 occurrences per item"
                .into(),
        ));
    }
    if copies < 2 {
        return Err(Error::Precondition(format!(
            "set-cover gadget needs at least 2 copies, got {copies}"
        )));
    }
    let eta = sc.item_count;
    let h = sc.set_count();
    let stride = eta + h;
    let n = (copies + 2) * stride;
    let mut g = WeightedGraph::new(n);
    let mut roles = vec![CoverRole::ItemLeaf { item: 0 }; n];

    let item_copy = |item: usize, copy: usize| copy * stride + item;
    let set_copy = |set: usize, copy: usize| copy * stride + eta + set;
    let item_anchor = |item: usize| copies * stride + item;
    let item_leaf = |item: usize| copies * stride + eta + item;
    let set_anchor = |set: usize| copies * stride + 2 * eta + set;
    let set_leaf = |set: usize| copies * stride + 2 * eta + h + set;

    for copy in 0..copies {
        for item in 0..eta {
            roles[item_copy(item, copy)] = CoverRole::ItemCopy { item, copy };
        }
        for set in 0..h {
            roles[set_copy(set, copy)] = CoverRole::SetCopy { set, copy };
        }
    }
    for item in 0..eta {
        roles[item_anchor(item)] = CoverRole::ItemAnchor { item };
        roles[item_leaf(item)] = CoverRole::ItemLeaf { item };
    }
    for set in 0..h {
        roles[set_anchor(set)] = CoverRole::SetAnchor { set };
        roles[set_leaf(set)] = CoverRole::SetLeaf { set };
    }

    // Incidence edges inside every copy.
    for copy in 0..copies {
        for (j, s) in sc.sets.iter().enumerate() {
            for &x in s {
                g.add_edge(item_copy(x, copy), set_copy(j, copy), 1)?;
            }
        }
    }
    // Item apparatus: anchor to each copy, pendant, and the anchor clique.
    for item in 0..eta {
        for copy in 0..copies {
            g.add_edge(item_copy(item, copy), item_anchor(item), 1)?;
        }
        g.add_edge(item_anchor(item), item_leaf(item), 1)?;
    }
    for a in 0..eta {
        for b in a + 1..eta {
            g.add_edge(item_anchor(a), item_anchor(b), 1)?;
        }
    }
    // Set apparatus: anchor to each copy plus pendant.
    for set in 0..h {
        for copy in 0..copies {
            g.add_edge(set_copy(set, copy), set_anchor(set), 1)?;
        }
        g.add_edge(set_anchor(set), set_leaf(set), 1)?;
    }

    Ok(SetCoverGadget {
        source: sc.clone(),
        copies,
        instance: GmegInstance::unit(g),
        roles,
    })
}

/// Converts a feasible monitoring set of the gadget into one verified set
/// cover per copy: minimalize, then replace each surviving item-copy vertex
/// by the lowest-index set covering that item, and read off the chosen sets
/// per copy.
pub fn extract_set_covers(
    gadget: &SetCoverGadget,
    solution: &BTreeSet<VertexId>,
) -> Result<Vec<BTreeSet<usize>>> {
    let inst = &gadget.instance;
    let oracle = DistanceOracle::build(inst.graph())?;
    if !is_feasible_solution(inst, &oracle, solution, OracleMode::Fast)? {
        return Err(Error::Precondition(
            "set-cover extraction needs a feasible monitoring set".into(),
        ));
    }
    let minimal = minimalize(inst, &oracle, solution, OracleMode::Fast)?;

    let mut per_copy: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); gadget.copies];
    for &v in &minimal {
        match gadget.roles[v] {
            CoverRole::SetCopy { set, copy } => {
                per_copy[copy].insert(set);
            }
            CoverRole::ItemCopy { item, copy } => {
                let set = gadget
                    .source
                    .sets
                    .iter()
                    .position(|s| s.contains(&item))
                    .expect("normalized instances cover every item");
                per_copy[copy].insert(set);
            }
            _ => {}
        }
    }

    for (copy, cover) in per_copy.iter().enumerate() {
        if !gadget.source.covers(cover) {
            return Err(Error::InvariantViolation(format!(
                "extracted selection for copy {copy} is not a cover"
            )));
        }
    }
    Ok(per_copy)
}

/// Role of one vertex in the apex construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApexRole {
    /// A vertex of the input graph.
    Original { v: VertexId },
    /// The middle vertex of the pendant path hung off `v`.
    Mid { v: VertexId },
    /// The outer pendant of the path hung off `v`.
    Leaf { v: VertexId },
    /// The vertex adjacent to every mid vertex; removing it leaves the
    /// graph planar whenever the input was.
    Apex,
    /// The pendant attached to the apex.
    ApexLeaf,
}

#[derive(Debug, Clone)]
pub struct ApexGadget {
    pub base_vertex_count: usize,
    pub instance: GmegInstance,
    pub roles: Vec<ApexRole>,
}

impl ApexGadget {
    pub fn original(&self, v: VertexId) -> VertexId {
        v
    }

    pub fn mid(&self, v: VertexId) -> VertexId {
        self.base_vertex_count + v
    }

    pub fn leaf(&self, v: VertexId) -> VertexId {
        2 * self.base_vertex_count + v
    }

    pub fn apex(&self) -> VertexId {
        3 * self.base_vertex_count
    }

    pub fn apex_leaf(&self) -> VertexId {
        3 * self.base_vertex_count + 1
    }
}

/// Builds the 1-apex gadget: each input vertex gets a pendant path of two
/// vertices, and one apex adjacent to every path midpoint shortcuts all
/// leaf-to-leaf routes. Weights are ignored; the output is unweighted with
/// every edge required. The input must have girth at least 7 (planarity is
/// the caller's responsibility and is not checked).
pub fn build_apex_gadget(g: &WeightedGraph) -> Result<ApexGadget> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "apex gadget needs at least 2 vertices, got {n}"
        )));
    }
    if let Some(girth) = g.girth() {
        if girth < 7 {
            return Err(Error::Precondition(format!(
                "apex gadget needs girth >= 7, got {girth}"
            )));
        }
    }
    let mut out = WeightedGraph::new(3 * n + 2);
    let mut roles = Vec::with_capacity(3 * n + 2);
    for v in 0..n {
        roles.push(ApexRole::Original { v });
    }
    for v in 0..n {
        roles.push(ApexRole::Mid { v });
    }
    for v in 0..n {
        roles.push(ApexRole::Leaf { v });
    }
    roles.push(ApexRole::Apex);
    roles.push(ApexRole::ApexLeaf);

    for e in g.edges() {
        out.add_edge(e.u, e.v, 1)?;
    }
    let apex = 3 * n;
    for v in 0..n {
        out.add_edge(v, n + v, 1)?;
    }
    for v in 0..n {
        out.add_edge(n + v, 2 * n + v, 1)?;
    }
    for v in 0..n {
        out.add_edge(apex, n + v, 1)?;
    }
    out.add_edge(apex, apex + 1, 1)?;

    Ok(ApexGadget {
        base_vertex_count: n,
        instance: GmegInstance::unit(out),
        roles,
    })
}

/// Converts a feasible monitoring set of the apex gadget into a verified
/// dominating set of the input graph: strip the path midpoints and the apex
/// (never needed by minimal solutions), then intersect with the original
/// vertices.
pub fn extract_dominating_set(
    gadget: &ApexGadget,
    base: &WeightedGraph,
    solution: &BTreeSet<VertexId>,
) -> Result<BTreeSet<VertexId>> {
    let inst = &gadget.instance;
    let oracle = DistanceOracle::build(inst.graph())?;
    if !is_feasible_solution(inst, &oracle, solution, OracleMode::Fast)? {
        return Err(Error::Precondition(
            "dominating-set extraction needs a feasible monitoring set".into(),
        ));
    }
    let dominating: BTreeSet<VertexId> = solution
        .iter()
        .copied()
        .filter(|&v| matches!(gadget.roles[v], ApexRole::Original { .. }))
        .collect();
    if !is_dominating_set(base, &dominating) {
        return Err(Error::InvariantViolation(
            "extracted vertex set does not dominate the input graph".into(),
        ));
    }
    Ok(dominating)
}

pub fn is_dominating_set(g: &WeightedGraph, set: &BTreeSet<VertexId>) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || g.neighbors(v).any(|w| set.contains(&w)))
}

/// Minimum dominating set by cardinality-ascending enumeration, ties broken
/// to the lexicographically smallest set.
pub fn exact_dominating_set(g: &WeightedGraph) -> BTreeSet<VertexId> {
    let n = g.vertex_count();
    for k in 0..=n {
        let mut combos = Combinations::new(n, k);
        while let Some(ix) = combos.next() {
            let candidate: BTreeSet<VertexId> = ix.iter().copied().collect();
            if is_dominating_set(g, &candidate) {
                return candidate;
            }
        }
    }
    unreachable!("the full vertex set dominates")
}
