//! The pair-based set-cover approximation.
//!
//! Items are the required edges not already monitored by the cost-0
//! vertices Z; one candidate set per unordered pair of cost-1 vertices
//! collects everything monitored once both pair members join Z. Greedy
//! selection then yields a logarithmic cover, with an exact branch-and-bound
//! taking over on small item counts.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GmegInstance, VertexId};
use crate::monitor::{
    first_unsolvable_required_edge, is_feasible_solution, monitored_edges, pair_monitors_edge,
    Algorithm, OracleMode, Solution,
};
use crate::oracle::DistanceOracle;

/// Item counts up to this bound go to the exact branch-and-bound cover.
pub const EXACT_COVER_MAX_ITEMS: usize = 20;

pub type VertexPair = (VertexId, VertexId);

#[derive(Debug, Clone)]
pub struct PairCoverInstance {
    /// Required edges not monitored by Z alone.
    pub items: BTreeSet<EdgeId>,
    /// For each pair p of cost-1 vertices, the items monitored by Z u p.
    pub sets: BTreeMap<VertexPair, BTreeSet<EdgeId>>,
}

/// Builds the pair cover. A pair's set may contain items the pair does not
/// monitor on its own: mixed pairs with one member in Z count too.
pub fn build_cover_instance(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    mode: OracleMode,
) -> Result<PairCoverInstance> {
    let zero = inst.zero_cost_vertices();
    let covered = monitored_edges(inst, oracle, &zero, mode)?;
    let items: BTreeSet<EdgeId> = inst.required().difference(&covered).copied().collect();

    let ones: Vec<VertexId> = inst.one_cost_vertices().into_iter().collect();
    let zeros: Vec<VertexId> = zero.iter().copied().collect();

    // Items each single cost-1 vertex unlocks through a cost-0 partner.
    let with_zero: BTreeMap<VertexId, BTreeSet<EdgeId>> = ones
        .par_iter()
        .map(|&u| {
            let mut mon = BTreeSet::new();
            for &e in &items {
                for &z in &zeros {
                    if pair_monitors_edge(oracle, inst.graph(), e, u, z, mode)? {
                        mon.insert(e);
                        break;
                    }
                }
            }
            Ok((u, mon))
        })
        .collect::<Result<_>>()?;

    let mut pairs: Vec<VertexPair> = Vec::new();
    for (i, &u) in ones.iter().enumerate() {
        for &v in &ones[i + 1..] {
            pairs.push((u, v));
        }
    }
    let sets: BTreeMap<VertexPair, BTreeSet<EdgeId>> = pairs
        .par_iter()
        .map(|&(u, v)| {
            let mut covered: BTreeSet<EdgeId> = with_zero[&u].union(&with_zero[&v]).copied().collect();
            for &e in &items {
                if !covered.contains(&e)
                    && pair_monitors_edge(oracle, inst.graph(), e, u, v, mode)?
                {
                    covered.insert(e);
                }
            }
            Ok(((u, v), covered))
        })
        .collect::<Result<_>>()?;

    Ok(PairCoverInstance { items, sets })
}

/// Greedy set cover: repeatedly take the set covering the most uncovered
/// items, ties to the lexicographically smallest label. On instances with at
/// most [`EXACT_COVER_MAX_ITEMS`] items an exact branch-and-bound also runs
/// and the smaller selection wins.
pub fn greedy_set_cover<L: Ord + Clone + std::fmt::Debug>(
    items: &BTreeSet<usize>,
    sets: &BTreeMap<L, BTreeSet<usize>>,
) -> Result<Vec<L>> {
    let coverable: BTreeSet<usize> = sets.values().flatten().copied().collect();
    if let Some(&missing) = items.difference(&coverable).next() {
        return Err(Error::UncoverableItem(missing));
    }

    let mut uncovered = items.clone();
    let mut selection = Vec::new();
    while !uncovered.is_empty() {
        let (label, gain) = sets
            .iter()
            .map(|(l, s)| (l, s.intersection(&uncovered).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)))
            .expect("cover instance has at least one set");
        debug_assert!(gain > 0);
        for item in &sets[label] {
            uncovered.remove(item);
        }
        selection.push(label.clone());
    }

    if items.len() <= EXACT_COVER_MAX_ITEMS {
        if let Some(exact) = exact_set_cover(items, sets) {
            if exact.len() < selection.len() {
                return Ok(exact);
            }
        }
    }
    Ok(selection)
}

/// Branch and bound over the item with the fewest remaining covers;
/// deterministic because labels are explored in order and only strict
/// improvements are kept.
fn exact_set_cover<L: Ord + Clone>(
    items: &BTreeSet<usize>,
    sets: &BTreeMap<L, BTreeSet<usize>>,
) -> Option<Vec<L>> {
    let item_ids: Vec<usize> = items.iter().copied().collect();
    let bit_of: BTreeMap<usize, usize> = item_ids
        .iter()
        .enumerate()
        .map(|(bit, &id)| (id, bit))
        .collect();
    let labels: Vec<&L> = sets.keys().collect();
    let masks: Vec<u32> = labels
        .iter()
        .map(|l| {
            sets[*l]
                .iter()
                .filter_map(|id| bit_of.get(id))
                .fold(0u32, |m, &b| m | (1 << b))
        })
        .collect();
    let full: u32 = if item_ids.is_empty() {
        0
    } else {
        (1u32 << item_ids.len()) - 1
    };
    let max_gain = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    if max_gain == 0 && full != 0 {
        return None;
    }

    let mut best: Option<Vec<usize>> = None;
    let mut chosen: Vec<usize> = Vec::new();
    search_cover(full, 0, &masks, max_gain, &mut chosen, &mut best);
    best.map(|ix| ix.into_iter().map(|i| labels[i].clone()).collect())
}

fn search_cover(
    uncovered: u32,
    depth: usize,
    masks: &[u32],
    max_gain: u32,
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    if uncovered == 0 {
        if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
            *best = Some(chosen.clone());
        }
        return;
    }
    let lower = depth + (uncovered.count_ones() as usize).div_ceil(max_gain as usize);
    if best.as_ref().is_some_and(|b| lower >= b.len()) {
        return;
    }
    let pivot = uncovered.trailing_zeros();
    for (i, &m) in masks.iter().enumerate() {
        if m & (1 << pivot) != 0 {
            chosen.push(i);
            search_cover(uncovered & !m, depth + 1, masks, max_gain, chosen, best);
            chosen.pop();
        }
    }
}

/// The simple approximation: return Z if it already works, then try Z plus
/// one cost-1 vertex, and only then fall back to the pair cover.
pub fn solve_simple_apx(
    inst: &GmegInstance,
    oracle: &DistanceOracle,
    mode: OracleMode,
) -> Result<Solution> {
    if let Some(witness) = first_unsolvable_required_edge(inst, oracle)? {
        return Err(Error::InfeasibleInstance { witness });
    }

    let zero = inst.zero_cost_vertices();
    if is_feasible_solution(inst, oracle, &zero, mode)? {
        let mut sol = Solution::new(inst, zero, Algorithm::SimpleApx);
        sol.feasible = true;
        return Ok(sol);
    }

    for v in inst.one_cost_vertices() {
        let mut guess = zero.clone();
        guess.insert(v);
        if is_feasible_solution(inst, oracle, &guess, mode)? {
            let mut sol = Solution::new(inst, guess, Algorithm::SimpleApx);
            sol.feasible = true;
            return Ok(sol);
        }
    }

    let cover = build_cover_instance(inst, oracle, mode)?;
    let selected = greedy_set_cover(&cover.items, &cover.sets)?;
    let mut vertices = zero;
    for (u, v) in selected {
        vertices.insert(u);
        vertices.insert(v);
    }
    let mut sol = Solution::new(inst, vertices, Algorithm::SimpleApx);
    sol.feasible = is_feasible_solution(inst, oracle, &sol.vertices, mode)?;
    if !sol.feasible {
        return Err(Error::InvariantViolation(
            "greedy cover produced an infeasible solution".into(),
        ));
    }
    Ok(sol)
}
