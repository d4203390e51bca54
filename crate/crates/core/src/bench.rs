//! Benchmark runner: solves a corpus with selected algorithms and emits a
//! deterministic report.
//!
//! Reports are JSON-serializable and, given the same corpus spec and seeds,
//! byte-identical across runs and thread counts: instances are solved in
//! parallel but assembled in corpus order, and wall-clock timings are kept
//! out of the serialized form unless explicitly requested.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve_exact, ExactConfig};
use crate::gen::{all_free_trees, gen_graph_with, GraphKind};
use crate::graph::{validate_instance, FeasibilityReport, GmegInstance};
use crate::greedy::solve_simple_apx;
use crate::hier::{height_bound, solve_hier, BoundParams, HierConfig};
use crate::monitor::{Algorithm, OracleMode};
use crate::oracle::DistanceOracle;
use crate::reductions::{build_setcover_gadget, SetCoverInstance};

/// Largest instance the runner solves exactly for ratio columns.
pub const DEFAULT_OPT_MAX: usize = 12;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub opt_max: usize,
    pub mode: OracleMode,
    pub hier: HierConfig,
    pub budget: u64,
    /// Include wall-clock timings in the JSON (breaks byte-level
    /// reproducibility across runs).
    pub timings: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algorithms: vec![Algorithm::Exact, Algorithm::SimpleApx, Algorithm::Hierarchical],
            opt_max: DEFAULT_OPT_MAX,
            mode: OracleMode::Fast,
            hier: HierConfig::default(),
            budget: crate::exact::DEFAULT_BUDGET,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgorithmRecord {
    pub algorithm: Algorithm,
    pub cost: Option<u64>,
    pub feasible: Option<bool>,
    pub ratio: Option<f64>,
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub total_cost: u64,
    pub feasible_input: bool,
    pub optimum: Option<u64>,
    pub results: Vec<AlgorithmRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgorithmAggregate {
    pub algorithm: Algorithm,
    pub instances: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentReport {
    pub corpus: String,
    pub instances: Vec<InstanceRecord>,
    pub aggregates: Vec<AlgorithmAggregate>,
}

/// A named corpus of instances. Specs:
/// `trees:<nmax>`, `paths:<nmax>`, `cycles:<nmax>`,
/// `random:<count>:<nmax>:<seed>[:<extra-edge-percent>]`, and
/// `ring-gadget:<copies>`.
pub fn build_corpus(spec: &str) -> Result<Vec<(String, GmegInstance)>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str, what: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::InvalidArgument(format!("bad {what} '{s}' in corpus spec")))
    };
    match parts.as_slice() {
        ["trees", nmax] => {
            let nmax = parse(nmax, "tree size")?;
            let mut out = Vec::new();
            for n in 2..=nmax {
                for (i, tree) in all_free_trees(n).into_iter().enumerate() {
                    out.push((format!("tree-n{n}-{i}"), GmegInstance::unit(tree)));
                }
            }
            Ok(out)
        }
        ["paths", nmax] => Ok((2..=parse(nmax, "path length")?)
            .map(|n| {
                (
                    format!("path-{n}"),
                    GmegInstance::unit(crate::gen::path_graph(n)),
                )
            })
            .collect()),
        ["cycles", nmax] => Ok((3..=parse(nmax, "cycle length")?)
            .map(|n| {
                (
                    format!("cycle-{n}"),
                    GmegInstance::unit(crate::gen::cycle_graph(n)),
                )
            })
            .collect()),
        ["random", count, nmax, seed] | ["random", count, nmax, seed, _] => {
            let count = parse(count, "instance count")?;
            let nmax = parse(nmax, "max size")?;
            let seed = parse(seed, "seed")? as u64;
            let prob = match parts.get(4) {
                Some(p) => parse(p, "extra-edge percent")? as f64 / 100.0,
                None => crate::gen::DEFAULT_EXTRA_EDGE_PROB,
            };
            if nmax < 4 {
                return Err(Error::InvalidArgument(
                    "random corpus needs nmax >= 4".into(),
                ));
            }
            (0..count)
                .map(|i| {
                    let n = 4 + (i % (nmax - 3));
                    let inst =
                        gen_graph_with(GraphKind::RandomConnected, n, seed.wrapping_add(i as u64), prob)?;
                    Ok((format!("random-{i}-n{n}"), inst))
                })
                .collect()
        }
        ["ring-gadget", copies] => {
            let copies = parse(copies, "copy count")?;
            let ring = SetCoverInstance::new(
                4,
                vec![
                    [0, 1].into_iter().collect(),
                    [1, 2].into_iter().collect(),
                    [2, 3].into_iter().collect(),
                    [3, 0].into_iter().collect(),
                ],
            )?;
            let gadget = build_setcover_gadget(&ring, copies)?;
            Ok(vec![(format!("ring-gadget-k{copies}"), gadget.instance)])
        }
        _ => Err(Error::InvalidArgument(format!(
            "unknown corpus spec '{spec}'"
        ))),
    }
}

/// Solves every corpus instance with every selected algorithm. Per-instance
/// failures are recorded in the report and do not stop the run.
pub fn run_bench(
    corpus_spec: &str,
    corpus: &[(String, GmegInstance)],
    config: &BenchConfig,
) -> ExperimentReport {
    // Indexed parallel map keeps corpus order in the report regardless of
    // scheduling.
    let instances: Vec<InstanceRecord> = corpus
        .par_iter()
        .map(|(id, inst)| bench_one(id, inst, config))
        .collect();

    let aggregates = config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let ratios: Vec<f64> = instances
                .iter()
                .flat_map(|r| &r.results)
                .filter(|r| r.algorithm == algorithm)
                .filter_map(|r| r.ratio)
                .collect();
            AlgorithmAggregate {
                algorithm,
                instances: instances.len(),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                mean_ratio: if ratios.is_empty() {
                    None
                } else {
                    Some(ratios.iter().sum::<f64>() / ratios.len() as f64)
                },
            }
        })
        .collect();

    ExperimentReport {
        corpus: corpus_spec.to_string(),
        instances,
        aggregates,
    }
}

fn bench_one(id: &str, inst: &GmegInstance, config: &BenchConfig) -> InstanceRecord {
    let n = inst.graph().vertex_count();
    let m = inst.graph().edge_count();
    let total_cost = inst.set_cost(&inst.graph().vertices().collect::<BTreeSet<_>>());

    let feasible_input = matches!(
        validate_instance(inst),
        Ok(FeasibilityReport::Feasible)
    );
    if !feasible_input {
        return InstanceRecord {
            id: id.to_string(),
            n,
            m,
            total_cost,
            feasible_input,
            optimum: None,
            results: config
                .algorithms
                .iter()
                .map(|&algorithm| AlgorithmRecord {
                    algorithm,
                    cost: None,
                    feasible: None,
                    ratio: None,
                    bound: None,
                    error: Some("infeasible instance".into()),
                    millis: None,
                })
                .collect(),
        };
    }

    let oracle = match DistanceOracle::build(inst.graph()) {
        Ok(o) => o,
        Err(e) => {
            return InstanceRecord {
                id: id.to_string(),
                n,
                m,
                total_cost,
                feasible_input,
                optimum: None,
                results: config
                    .algorithms
                    .iter()
                    .map(|&algorithm| AlgorithmRecord {
                        algorithm,
                        cost: None,
                        feasible: None,
                        ratio: None,
                        bound: None,
                        error: Some(e.to_string()),
                        millis: None,
                    })
                    .collect(),
            }
        }
    };

    let optimum = if n <= config.opt_max {
        solve_exact(
            inst,
            &oracle,
            &ExactConfig {
                budget: config.budget,
                mode: config.mode,
            },
        )
        .ok()
        .map(|s| s.cost)
    } else {
        None
    };

    let results = config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let started = std::time::Instant::now();
            let solved = match algorithm {
                Algorithm::Exact => solve_exact(
                    inst,
                    &oracle,
                    &ExactConfig {
                        budget: config.budget,
                        mode: config.mode,
                    },
                ),
                Algorithm::SimpleApx => solve_simple_apx(inst, &oracle, config.mode),
                Algorithm::Hierarchical => solve_hier(inst, &oracle, &config.hier),
            };
            let millis = config.timings.then(|| started.elapsed().as_millis() as u64);
            match solved {
                Ok(sol) => {
                    let ratio = optimum
                        .filter(|&opt| opt > 0)
                        .map(|opt| sol.cost as f64 / opt as f64);
                    AlgorithmRecord {
                        algorithm,
                        cost: Some(sol.cost),
                        feasible: Some(sol.feasible),
                        ratio,
                        bound: theoretical_bound(algorithm, inst, config),
                        error: None,
                        millis,
                    }
                }
                Err(e) => AlgorithmRecord {
                    algorithm,
                    cost: None,
                    feasible: None,
                    ratio: None,
                    bound: None,
                    error: Some(e.to_string()),
                    millis,
                },
            }
        })
        .collect();

    InstanceRecord {
        id: id.to_string(),
        n,
        m,
        total_cost,
        feasible_input,
        optimum,
        results,
    }
}

/// Guarantee for the algorithm on this instance: the square-root bound
/// for the simple approximation, the height-based bound for the
/// hierarchical one (exponent-zero regime), and 1 for exact.
fn theoretical_bound(algorithm: Algorithm, inst: &GmegInstance, config: &BenchConfig) -> Option<f64> {
    let n = inst.graph().vertex_count();
    if n < 2 {
        return None;
    }
    let paid = inst.one_cost_vertices().len();
    match algorithm {
        Algorithm::Exact => Some(1.0),
        Algorithm::SimpleApx => {
            Some((2.0 * paid as f64 * (n as f64).ln()).sqrt().max(1.0))
        }
        Algorithm::Hierarchical => {
            let params = BoundParams::new(config.hier.alpha, 0.0, 1.0, n).ok()?;
            let h = height_bound(config.hier.alpha, paid.max(1));
            Some(crate::hier::ratio_bound(&params, h, paid.max(1)).max(1.0))
        }
    }
}

/// Plain-text table for terminal consumption.
pub fn render_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("corpus: {}\n", report.corpus));
    out.push_str(&format!(
        "{:<22} {:>4} {:>4} {:>5} {:<12} {:>6} {:>6} {:>7} {:>8}\n",
        "instance", "n", "m", "opt", "algorithm", "cost", "ratio", "bound", "ms"
    ));
    for inst in &report.instances {
        for r in &inst.results {
            out.push_str(&format!(
                "{:<22} {:>4} {:>4} {:>5} {:<12} {:>6} {:>6} {:>7} {:>8}\n",
                inst.id,
                inst.n,
                inst.m,
                inst.optimum.map_or("-".into(), |o| o.to_string()),
                format!("{:?}", r.algorithm),
                r.cost.map_or("-".into(), |c| c.to_string()),
                r.ratio.map_or("-".into(), |x| format!("{x:.3}")),
                r.bound.map_or("-".into(), |x| format!("{x:.2}")),
                r.millis.map_or("-".into(), |x| x.to_string()),
            ));
        }
    }
    for agg in &report.aggregates {
        out.push_str(&format!(
            "{:?}: {} instances, max ratio {}, mean ratio {}\n",
            agg.algorithm,
            agg.instances,
            agg.max_ratio.map_or("-".into(), |x| format!("{x:.3}")),
            agg.mean_ratio.map_or("-".into(), |x| format!("{x:.3}")),
        ));
    }
    out
}
