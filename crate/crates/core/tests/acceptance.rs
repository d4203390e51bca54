//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Tolerances and corpus sizes are pinned here.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use megset::bench::{build_corpus, run_bench, BenchConfig};
use megset::exact::{solve_exact, ExactConfig};
use megset::gen;
use megset::graph::{validate_instance, FeasibilityReport, GmegInstance, VertexId, WeightedGraph};
use megset::greedy::solve_simple_apx;
use megset::hier::{solve_decomposition, HierConfig};
use megset::monitor::{
    is_feasible_solution, minimalize, pair_monitors_edge, OracleMode,
};
use megset::oracle::DistanceOracle;
use megset::projector::build_projection;
use megset::reductions::{
    build_apex_gadget, build_setcover_gadget, exact_dominating_set, extract_dominating_set,
    extract_set_covers, SetCoverInstance,
};
use megset::separator::SeparatorStrategy;

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget: Duration) -> Self {
        Criterion {
            name,
            budget,
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let ok = elapsed <= self.budget;
        println!(
            "acceptance {}: {} ({elapsed:.2?} of {:?} allowed)",
            self.name,
            if ok { "PASS" } else { "FAIL" },
            self.budget
        );
        assert!(
            ok,
            "{} exceeded its runtime budget: {elapsed:?} > {:?}",
            self.name, self.budget
        );
    }
}

fn seeded_corpus(count: usize, n_max: usize, max_weight: u64, seed: u64) -> Vec<GmegInstance> {
    common::random_corpus(count, 4, n_max, max_weight, seed)
}

/// Criterion 1: FAST and REFERENCE verdicts agree on every (edge, ordered pair)
/// triple over 500 seeded random connected graphs, n <= 12, weights 1..4.
#[test]
fn criterion_1_oracle_equivalence() {
    let timer = Criterion::start("1 oracle equivalence", Duration::from_secs(60));
    let corpus = seeded_corpus(500, 12, 4, 0xC1);
    assert_eq!(corpus.len(), 500);
    let mut triples = 0u64;
    for inst in &corpus {
        let g = inst.graph();
        let oracle = DistanceOracle::build(g).unwrap();
        for e in g.edges() {
            for x in g.vertices() {
                for y in g.vertices() {
                    if x == y {
                        continue;
                    }
                    let fast =
                        pair_monitors_edge(&oracle, g, e.id, x, y, OracleMode::Fast).unwrap();
                    let reference =
                        pair_monitors_edge(&oracle, g, e.id, x, y, OracleMode::Reference).unwrap();
                    assert_eq!(fast, reference, "edge {} pair ({x},{y})", e.id);
                    triples += 1;
                }
            }
        }
    }
    assert!(triples > 100_000, "corpus too small: {triples} triples");
    timer.finish();
}

/// Criterion 2: Over all free trees with n <= 9 (unit costs, all edges required):
/// every optimum contains every leaf, and no minimalized solution keeps a
/// leaf-neighbor for n >= 3.
#[test]
fn criterion_2_structural_lemmas() {
    let timer = Criterion::start("2 structural lemmas", Duration::from_secs(120));
    let mut trees_checked = 0usize;
    for n in 2..=9usize {
        for tree in gen::all_free_trees(n) {
            let inst = GmegInstance::unit(tree);
            let leaves = gen::leaves(inst.graph());
            let table = common::MonitorTable::build(&inst);

            // Independent optimum scan: every minimum feasible subset
            // contains every leaf.
            let mut best = usize::MAX;
            let mut optima: Vec<BTreeSet<VertexId>> = Vec::new();
            for mask in 0u32..(1 << n) {
                let set: BTreeSet<VertexId> =
                    (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                if !table.is_feasible(&set) {
                    continue;
                }
                match set.len().cmp(&best) {
                    std::cmp::Ordering::Less => {
                        best = set.len();
                        optima = vec![set];
                    }
                    std::cmp::Ordering::Equal => optima.push(set),
                    std::cmp::Ordering::Greater => {}
                }
            }
            assert!(!optima.is_empty(), "tree n={n} has no feasible set");
            for optimum in &optima {
                assert!(
                    leaves.is_subset(optimum),
                    "n={n}: optimum {optimum:?} misses a leaf"
                );
            }

            // The solver agrees with the scan.
            let oracle = DistanceOracle::build(inst.graph()).unwrap();
            let sol = solve_exact(&inst, &oracle, &ExactConfig::default()).unwrap();
            assert_eq!(sol.cost as usize, best);

            if n >= 3 {
                let neighbors = megset::monitor::leaf_neighbors(inst.graph());
                let all: BTreeSet<VertexId> = inst.graph().vertices().collect();
                // Minimalize from the full set and from seeded feasible
                // supersets of an optimum.
                let mut starts = vec![all];
                let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 1000 + trees_checked as u64);
                for _ in 0..2 {
                    let mut start = optima[0].clone();
                    for v in 0..n {
                        if rng.random_bool(0.5) {
                            start.insert(v);
                        }
                    }
                    starts.push(start);
                }
                for start in starts {
                    let minimal = minimalize(&inst, &oracle, &start, OracleMode::Fast).unwrap();
                    assert!(
                        minimal.is_disjoint(&neighbors),
                        "n={n}: minimalized {minimal:?} keeps a leaf-neighbor"
                    );
                }
            }
            trees_checked += 1;
        }
    }
    assert_eq!(trees_checked, 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47);
    timer.finish();
}

/// Criterion 3: Simple approximation over 300 seeded random connected graphs n <= 10:
/// feasible, and within both guaranteed bounds of the exact optimum.
#[test]
fn criterion_3_simple_bounds() {
    let timer = Criterion::start("3 simple-approximation bounds", Duration::from_secs(300));
    let corpus = seeded_corpus(300, 10, 1, 0xC3);
    assert_eq!(corpus.len(), 300);
    for (i, inst) in corpus.iter().enumerate() {
        let n = inst.graph().vertex_count() as f64;
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        let apx = solve_simple_apx(&inst.clone(), &oracle, OracleMode::Fast).unwrap();
        assert!(
            is_feasible_solution(inst, &oracle, &apx.vertices, OracleMode::Reference).unwrap(),
            "instance {i}: infeasible approximation"
        );
        let opt = solve_exact(inst, &oracle, &ExactConfig::default())
            .unwrap()
            .cost as f64;
        let apx_cost = apx.cost as f64;
        let sqrt_bound = (2.0 * n * n.ln()).sqrt() * opt;
        let square_bound = 2.0 * opt * opt * n.ln();
        assert!(
            apx_cost <= sqrt_bound + 1e-9,
            "instance {i}: {apx_cost} > sqrt bound {sqrt_bound}"
        );
        assert!(
            apx_cost <= square_bound + 1e-9,
            "instance {i}: {apx_cost} > square bound {square_bound}"
        );
    }
    timer.finish();
}

/// Criterion 4: Projection machinery on 200 seeded (graph, cluster) pairs, n <= 10:
/// distance preservation, monitoring equivalence, restriction, and lift.
#[test]
fn criterion_4_projection_machinery() {
    let timer = Criterion::start("4 projection machinery", Duration::from_secs(120));
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut done = 0;
    while done < 200 {
        let n = rng.random_range(4..=10);
        let inst = GmegInstance::unit(gen::random_connected_weighted(n, 0.2, 3, &mut rng));
        if !validate_instance(&inst).unwrap().is_feasible() {
            continue;
        }
        let g = inst.graph();
        let oracle = DistanceOracle::build(g).unwrap();
        let mut cluster: BTreeSet<VertexId> =
            (0..n).filter(|_| rng.random_bool(0.4)).collect();
        cluster.insert(rng.random_range(0..n));
        let proj = build_projection(&inst, &oracle, &cluster).unwrap();
        let h = &proj.instance;
        let h_oracle = DistanceOracle::build(h.graph()).unwrap();

        // (a) distances agree on cluster plus boundary
        for (lu, &bu) in proj.to_base.iter().enumerate() {
            for (lv, &bv) in proj.to_base.iter().enumerate() {
                assert_eq!(h_oracle.dist(lu, lv), oracle.dist(bu, bv));
            }
        }
        // (b) monitoring equivalence for every inherited edge and pair
        for id in proj.original_edges() {
            for lx in 0..proj.to_base.len() {
                for ly in lx + 1..proj.to_base.len() {
                    let in_h =
                        pair_monitors_edge(&h_oracle, h.graph(), id, lx, ly, OracleMode::Fast)
                            .unwrap();
                    let in_g = pair_monitors_edge(
                        &oracle,
                        g,
                        id,
                        proj.to_base[lx],
                        proj.to_base[ly],
                        OracleMode::Fast,
                    )
                    .unwrap();
                    assert_eq!(in_h, in_g);
                }
            }
        }
        // (c) restriction of a random feasible base solution is feasible
        let all: BTreeSet<VertexId> = g.vertices().collect();
        let mut feasible = minimalize(&inst, &oracle, &all, OracleMode::Fast).unwrap();
        for v in 0..n {
            if rng.random_bool(0.3) {
                feasible.insert(v);
            }
        }
        let restricted: BTreeSet<VertexId> = feasible
            .iter()
            .filter(|v| cluster.contains(v))
            .filter_map(|&v| proj.local_of(v))
            .chain(proj.boundary.iter().filter_map(|&b| proj.local_of(b)))
            .collect();
        assert!(
            is_feasible_solution(h, &h_oracle, &restricted, OracleMode::Fast).unwrap(),
            "restriction infeasible"
        );
        // (d) projection solutions monitor inherited required edges in base
        let h_all: BTreeSet<VertexId> = h.graph().vertices().collect();
        let h_sol = minimalize(h, &h_oracle, &h_all, OracleMode::Fast).unwrap();
        let lifted = proj.to_base_set(&h_sol);
        let covered =
            megset::monitor::monitored_edges(&inst, &oracle, &lifted, OracleMode::Fast).unwrap();
        for id in h.required() {
            assert!(covered.contains(id), "lifted solution misses edge {id}");
        }
        done += 1;
    }
    timer.finish();
}

/// Criterion 5: Hierarchical solver: feasible on the full random corpus; on all free
/// trees n <= 9 the cost respects the exponent-zero bound; on the 7-path
/// the cost is exactly 2.
#[test]
fn criterion_5_hierarchical_solver() {
    let timer = Criterion::start("5 hierarchical solver", Duration::from_secs(300));

    // Feasibility across the random corpus, re-verified with the
    // reference criterion. Weighted instances that fail validation cannot
    // be solved by anything and must be rejected cleanly.
    let corpus = seeded_corpus(500, 12, 4, 0xC1);
    let mut solved = 0usize;
    for (i, inst) in corpus.iter().enumerate() {
        let oracle = DistanceOracle::build(inst.graph()).unwrap();
        let solvable = validate_instance(inst).unwrap().is_feasible();
        match megset::hier::solve_hier(inst, &oracle, &HierConfig::default()) {
            Ok(sol) => {
                assert!(solvable, "instance {i}: solver accepted an infeasible input");
                assert!(
                    is_feasible_solution(inst, &oracle, &sol.vertices, OracleMode::Reference)
                        .unwrap(),
                    "instance {i}: hierarchical output infeasible"
                );
                solved += 1;
            }
            Err(megset::Error::InfeasibleInstance { .. }) => {
                assert!(!solvable, "instance {i}: solver rejected a feasible input");
            }
            Err(other) => panic!("instance {i}: unexpected error {other}"),
        }
    }
    assert!(solved >= 100, "only {solved} feasible instances in corpus");

    // Exponent-zero bound over every tree shape up to nine vertices.
    let tree_config = HierConfig {
        strategy: SeparatorStrategy::TreeCentroid,
        size_cap: 3,
        ..Default::default()
    };
    for n in 2..=9usize {
        for tree in gen::all_free_trees(n) {
            let inst = GmegInstance::unit(tree);
            let oracle = DistanceOracle::build(inst.graph()).unwrap();
            let (sol, root) = solve_decomposition(&inst, &oracle, &tree_config).unwrap();
            let opt = solve_exact(&inst, &oracle, &ExactConfig::default())
                .unwrap()
                .cost as f64;
            let bound = (root.height as f64 + 1.0) * (2.0 * (n as f64).ln()).sqrt() * opt;
            assert!(
                (sol.cost as f64) <= bound + 1e-9,
                "tree n={n}: cost {} above bound {bound}",
                sol.cost
            );
        }
    }

    // The 7-path lands exactly on the optimum.
    let p7 = GmegInstance::unit(gen::path_graph(7));
    let oracle = DistanceOracle::build(p7.graph()).unwrap();
    let sol = megset::hier::solve_hier(&p7, &oracle, &tree_config).unwrap();
    assert_eq!(sol.cost, 2);
    assert_eq!(sol.vertices, [0, 6].into_iter().collect::<BTreeSet<_>>());
    timer.finish();
}

/// Criterion 6: Set-cover reduction equality on the ring instance with two copies:
/// gadget optimum N + k*h* = 12, and the optimum decomposes into two covers
/// of size two.
#[test]
fn criterion_6_setcover_reduction() {
    let timer = Criterion::start("6 set-cover reduction equality", Duration::from_secs(120));
    let ring = SetCoverInstance::new(
        4,
        vec![
            [0, 1].into_iter().collect(),
            [1, 2].into_iter().collect(),
            [2, 3].into_iter().collect(),
            [3, 0].into_iter().collect(),
        ],
    )
    .unwrap();
    assert!(ring.is_normalized());
    assert_eq!(ring.optimum_size(), Some(2));

    let gadget = build_setcover_gadget(&ring, 2).unwrap();
    assert_eq!(gadget.instance.graph().vertex_count(), 32);
    // Pendant pinning (8 vertices) and anchor pruning (8 leaf-neighbors)
    // leave the 16 copy vertices as the search space.
    assert_eq!(megset::monitor::forced_vertices(&gadget.instance).len(), 8);
    assert_eq!(
        megset::monitor::leaf_neighbors(gadget.instance.graph()).len(),
        8
    );
    let oracle = DistanceOracle::build(gadget.instance.graph()).unwrap();
    let sol = solve_exact(&gadget.instance, &oracle, &ExactConfig::default()).unwrap();
    assert_eq!(sol.cost, 8 + 2 * 2, "gadget optimum must be N + k*h*");

    let covers = extract_set_covers(&gadget, &sol.vertices).unwrap();
    assert_eq!(covers.len(), 2);
    for cover in &covers {
        assert_eq!(cover.len(), 2, "cover {cover:?} is not minimum");
        assert!(ring.covers(cover));
    }
    timer.finish();
}

/// Criterion 7: Apex reduction equality: on the 7-cycle the gadget optimum is
/// gamma + n + 1 = 11 and extraction recovers a minimum dominating set;
/// likewise for five seeded girth-7 cycles with pendants.
#[test]
fn criterion_7_apex_reduction() {
    let timer = Criterion::start("7 apex reduction equality", Duration::from_secs(300));
    let check = |g: &WeightedGraph| {
        let n = g.vertex_count() as u64;
        let gamma = exact_dominating_set(g).len() as u64;
        let gadget = build_apex_gadget(g).unwrap();
        let oracle = DistanceOracle::build(gadget.instance.graph()).unwrap();
        let sol = solve_exact(&gadget.instance, &oracle, &ExactConfig::default()).unwrap();
        assert_eq!(
            sol.cost,
            gamma + n + 1,
            "gadget optimum must be gamma + n + 1"
        );
        let extracted = extract_dominating_set(&gadget, g, &sol.vertices).unwrap();
        assert_eq!(extracted.len() as u64, gamma);
    };

    let c7 = gen::cycle_graph(7);
    assert_eq!(exact_dominating_set(&c7).len(), 3);
    check(&c7);

    let mut produced = 0;
    let mut seed = 0u64;
    while produced < 5 {
        seed += 1;
        let cycle_len = 7 + (seed as usize % 3);
        let pendants = (9usize.saturating_sub(cycle_len)).min(seed as usize % 3);
        let g = gen::cycle_with_pendants(cycle_len, pendants, seed);
        if g.vertex_count() > 9 {
            continue;
        }
        check(&g);
        produced += 1;
    }
    timer.finish();
}

/// Criterion 8: Feasibility detection: the weighted triangle is infeasible with the
/// heavy edge as witness; unit-weight connected graphs are always feasible.
#[test]
fn criterion_8_feasibility_detection() {
    let timer = Criterion::start("8 feasibility detection", Duration::from_secs(60));
    let mut g = WeightedGraph::new(3);
    g.add_edge(0, 1, 2).unwrap(); // (a,b)
    g.add_edge(0, 2, 1).unwrap();
    g.add_edge(2, 1, 1).unwrap();
    let report = validate_instance(&GmegInstance::unit(g)).unwrap();
    assert_eq!(report, FeasibilityReport::Infeasible { witness: 0 });

    for inst in seeded_corpus(120, 12, 1, 0xC8) {
        assert!(validate_instance(&inst).unwrap().is_feasible());
    }
    for n in 2..=8usize {
        for tree in gen::all_free_trees(n) {
            assert!(validate_instance(&GmegInstance::unit(tree))
                .unwrap()
                .is_feasible());
        }
    }
    timer.finish();
}

/// Criterion 9: Two bench runs with identical seeds and different thread counts
/// produce byte-identical JSON reports.
#[test]
fn criterion_9_bench_determinism() {
    let timer = Criterion::start("9 bench determinism", Duration::from_secs(300));
    for spec in ["random:20:10:1234", "trees:7"] {
        let corpus = build_corpus(spec).unwrap();
        let config = BenchConfig::default();
        let render = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let report = pool.install(|| run_bench(spec, &corpus, &config));
            serde_json::to_string_pretty(&report).unwrap()
        };
        let single = render(1);
        let multi = render(4);
        assert_eq!(single.as_bytes(), multi.as_bytes(), "spec {spec}");
    }
    timer.finish();
}
