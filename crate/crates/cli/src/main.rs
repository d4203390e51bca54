//! Command-line front end: verify, solve, query the monitoring oracle,
//! generate instances and hardness gadgets, extract reduced solutions, run
//! benchmarks, and evaluate the theoretical ratio bounds.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use megset::bench::{build_corpus, render_table, run_bench, BenchConfig};
use megset::exact::{solve_exact, ExactConfig};
use megset::gen::{gen_graph_with, GraphKind, DEFAULT_EXTRA_EDGE_PROB};
use megset::graph::{validate_instance, FeasibilityReport, GmegInstance};
use megset::greedy::solve_simple_apx;
use megset::hier::{ratio_bound, solve_hier, BoundParams, HierConfig};
use megset::io;
use megset::monitor::{pair_monitors_edge, Algorithm, OracleMode};
use megset::oracle::{DistanceOracle, DEFAULT_ORACLE_SEED};
use megset::reductions::{
    build_apex_gadget, build_setcover_gadget, extract_dominating_set, extract_set_covers,
    reduce_set_cover_instance,
};
use megset::separator::{Alpha, SeparatorStrategy};
use megset::Error;

#[derive(Parser)]
#[command(name = "megset", version, about = "Monitoring edge-geodetic set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every edge is the unique shortest path between its
    /// endpoints, i.e. that monitoring sets exist.
    Verify {
        /// Instance file.
        instance: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve an instance.
    Solve {
        instance: PathBuf,
        /// exact | simple | hier
        #[arg(long, default_value = "exact")]
        algo: String,
        /// Candidate-evaluation budget for the exact search.
        #[arg(long, default_value_t = megset::exact::DEFAULT_BUDGET)]
        budget: u64,
        /// Balance fraction for the hierarchical decomposition (e.g. 1/4).
        #[arg(long, default_value = "1/4")]
        alpha: String,
        /// Separator strategy: auto | exact | bfs-layer | tree-centroid.
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Clusters at most this large are solved exactly.
        #[arg(long, default_value_t = megset::hier::DEFAULT_SIZE_CAP)]
        size_cap: usize,
        /// Seed for the oracle's count-hashing prime.
        #[arg(long, default_value_t = DEFAULT_ORACLE_SEED)]
        seed: u64,
        /// Use the edge-deletion reference criterion everywhere.
        #[arg(long)]
        paranoid: bool,
        /// Write the solution JSON here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ask whether a pair of vertices monitors an edge.
    Oracle {
        instance: PathBuf,
        /// Edge id (file order).
        #[arg(long)]
        edge: usize,
        /// Pair as `x,y`.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        paranoid: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_SEED)]
        seed: u64,
    },
    /// Generate instances and hardness gadgets.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Convert gadget solutions back to the source problem.
    #[command(subcommand)]
    Extract(ExtractCommand),
    /// Solve a corpus with several algorithms and report costs and ratios.
    Bench {
        /// Corpus spec: trees:N | paths:N | cycles:N |
        /// random:COUNT:NMAX:SEED[:EXTRA%] | ring-gadget:K
        #[arg(long)]
        corpus: String,
        /// Comma-separated: exact,simple,hier
        #[arg(long, default_value = "exact,simple,hier")]
        algos: String,
        /// Instances up to this size get exact optima for ratio columns.
        #[arg(long, default_value_t = megset::bench::DEFAULT_OPT_MAX)]
        opt_max: usize,
        /// Balance fraction for the hierarchical runs.
        #[arg(long, default_value = "1/4")]
        alpha: String,
        /// Cluster size cap for the hierarchical runs.
        #[arg(long, default_value_t = megset::hier::DEFAULT_SIZE_CAP)]
        size_cap: usize,
        /// Rayon worker threads (0 = library default).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Include wall-clock timings in the JSON output (breaks
        /// byte-for-byte reproducibility).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        paranoid: bool,
        /// Write the JSON report here; the table still goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print JSON to stdout instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the theoretical approximation-ratio bound.
    Bound(BoundArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// A unit-cost instance of the given shape.
    Graph {
        /// path | cycle | tree | grid | random
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each extra non-tree edge (random kind only).
        #[arg(long, default_value_t = DEFAULT_EXTRA_EDGE_PROB)]
        edge_prob: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The k-copy monitoring gadget of a set-cover instance.
    SetcoverGadget {
        /// Set-cover file: `eta h` then h lines of 1-based items.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        copies: usize,
        /// Normalize the instance first (forced sets go to stderr).
        #[arg(long)]
        reduce: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The 1-apex monitoring gadget of a girth-7 graph.
    ApexGadget {
        /// Instance file; costs and weights are ignored.
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtractCommand {
    /// Per-copy set covers from a gadget solution.
    Setcover {
        /// The original set-cover file.
        #[arg(long)]
        setcover: PathBuf,
        #[arg(long)]
        copies: usize,
        /// Whether the gadget was generated with --reduce.
        #[arg(long)]
        reduce: bool,
        /// Solution JSON for the gadget instance.
        #[arg(long)]
        solution: PathBuf,
    },
    /// A dominating set from an apex-gadget solution.
    Domset {
        /// The original instance file.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value = "1/4")]
    alpha: String,
    /// Separator size exponent (0 for the height-based regime).
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    beta0: f64,
    /// Instance size.
    #[arg(long)]
    n: usize,
    /// Node height (used when beta = 0).
    #[arg(long, default_value_t = 0)]
    height: usize,
    /// Cluster size (used when beta > 0); defaults to n.
    #[arg(long)]
    x: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InfeasibleInstance { .. } => 1,
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn read_instance(path: &Path) -> Result<GmegInstance, Error> {
    let text = std::fs::read_to_string(path)?;
    io::parse_instance(&text)
}

fn emit_instance(inst: &GmegInstance, output: Option<&Path>) -> Result<(), Error> {
    let text = io::print_instance(inst);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify { instance, json } => {
            let inst = read_instance(&instance)?;
            let report = validate_instance(&inst)?;
            match (&report, json) {
                (FeasibilityReport::Feasible, false) => println!("FEASIBLE"),
                (FeasibilityReport::Infeasible { witness }, false) => {
                    let e = inst.graph().edge(*witness)?;
                    println!("INFEASIBLE witness edge {} ({},{})", witness, e.u, e.v);
                }
                (_, true) => {
                    let value = match &report {
                        FeasibilityReport::Feasible => {
                            serde_json::json!({ "feasible": true })
                        }
                        FeasibilityReport::Infeasible { witness } => {
                            serde_json::json!({ "feasible": false, "witness": witness })
                        }
                    };
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
            }
            Ok(if report.is_feasible() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Solve {
            instance,
            algo,
            budget,
            alpha,
            strategy,
            size_cap,
            seed,
            paranoid,
            output,
        } => {
            let inst = read_instance(&instance)?;
            if let FeasibilityReport::Infeasible { witness } = validate_instance(&inst)? {
                return Err(Error::InfeasibleInstance { witness });
            }
            let mode = if paranoid {
                OracleMode::Reference
            } else {
                OracleMode::Fast
            };
            let oracle = DistanceOracle::build_seeded(inst.graph(), seed)?;
            let solution = match algo.as_str() {
                "exact" => solve_exact(&inst, &oracle, &ExactConfig { budget, mode })?,
                "simple" => solve_simple_apx(&inst, &oracle, mode)?,
                "hier" => {
                    let config = HierConfig {
                        alpha: Alpha::parse(&alpha)?,
                        strategy: SeparatorStrategy::parse(&strategy)?,
                        size_cap,
                        budget,
                        mode,
                    };
                    solve_hier(&inst, &oracle, &config)?
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown algorithm '{other}' (expected exact, simple, or hier)"
                    )))
                }
            };
            match output {
                Some(path) => {
                    io::write_solution(&solution, &path)?;
                    println!(
                        "cost {} with {} vertices written to {}",
                        solution.cost,
                        solution.vertices.len(),
                        path.display()
                    );
                }
                None => println!("{}", serde_json::to_string_pretty(&solution)?),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle {
            instance,
            edge,
            pair,
            paranoid,
            seed,
        } => {
            let inst = read_instance(&instance)?;
            let (x, y) = parse_pair(&pair)?;
            let mode = if paranoid {
                OracleMode::Reference
            } else {
                OracleMode::Fast
            };
            let oracle = DistanceOracle::build_seeded(inst.graph(), seed)?;
            let monitored = pair_monitors_edge(&oracle, inst.graph(), edge, x, y, mode)?;
            println!("{monitored}");
            Ok(ExitCode::SUCCESS)
        }

        Command::Gen(gen) => {
            run_gen(gen)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Extract(extract) => {
            run_extract(extract)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Bench {
            corpus,
            algos,
            opt_max,
            alpha,
            size_cap,
            threads,
            timings,
            paranoid,
            output,
            json,
        } => {
            let algorithms = parse_algos(&algos)?;
            let mode = if paranoid {
                OracleMode::Reference
            } else {
                OracleMode::Fast
            };
            let hier = HierConfig {
                alpha: Alpha::parse(&alpha)?,
                size_cap,
                mode,
                ..Default::default()
            };
            let config = BenchConfig {
                algorithms,
                opt_max,
                mode,
                hier,
                timings,
                ..Default::default()
            };
            let instances = build_corpus(&corpus)?;
            let report = if threads > 0 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                pool.install(|| run_bench(&corpus, &instances, &config))
            } else {
                run_bench(&corpus, &instances, &config)
            };
            if let Some(path) = &output {
                let mut text = serde_json::to_string_pretty(&report)?;
                text.push('\n');
                std::fs::write(path, text)?;
            }
            if json && output.is_none() {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render_table(&report));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Bound(args) => {
            let params = BoundParams::new(
                Alpha::parse(&args.alpha)?,
                args.beta,
                args.beta0,
                args.n,
            )?;
            let x = args.x.unwrap_or(args.n);
            println!("{}", ratio_bound(&params, args.height, x));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_gen(gen: GenCommand) -> Result<(), Error> {
    match gen {
        GenCommand::Graph {
            kind,
            n,
            seed,
            edge_prob,
            output,
        } => {
            let inst = gen_graph_with(GraphKind::parse(&kind)?, n, seed, edge_prob)?;
            emit_instance(&inst, output.as_deref())
        }
        GenCommand::SetcoverGadget {
            input,
            copies,
            reduce,
            output,
        } => {
            let sc = io::parse_set_cover(&std::fs::read_to_string(&input)?)?;
            let sc = if reduce {
                let (normalized, forced) = reduce_set_cover_instance(&sc)?;
                if !forced.is_empty() {
                    let shown: Vec<usize> = forced.iter().map(|j| j + 1).collect();
                    eprintln!("forced sets (1-based): {shown:?}");
                }
                normalized
            } else {
                sc
            };
            let gadget = build_setcover_gadget(&sc, copies)?;
            emit_instance(&gadget.instance, output.as_deref())
        }
        GenCommand::ApexGadget { input, output } => {
            let inst = read_instance(&input)?;
            eprintln!(
                "note: planarity of the input is not checked; the gadget is \
                 1-apex only for planar inputs"
            );
            let gadget = build_apex_gadget(inst.graph())?;
            emit_instance(&gadget.instance, output.as_deref())
        }
    }
}

fn run_extract(extract: ExtractCommand) -> Result<(), Error> {
    match extract {
        ExtractCommand::Setcover {
            setcover,
            copies,
            reduce,
            solution,
        } => {
            let sc = io::parse_set_cover(&std::fs::read_to_string(&setcover)?)?;
            let sc = if reduce {
                reduce_set_cover_instance(&sc)?.0
            } else {
                sc
            };
            let gadget = build_setcover_gadget(&sc, copies)?;
            let sol = io::read_solution(&solution)?;
            let covers = extract_set_covers(&gadget, &sol.vertices)?;
            for (copy, cover) in covers.iter().enumerate() {
                let shown: Vec<usize> = cover.iter().map(|j| j + 1).collect();
                println!("copy {copy}: sets {shown:?}");
            }
            Ok(())
        }
        ExtractCommand::Domset { graph, solution } => {
            let inst = read_instance(&graph)?;
            let gadget = build_apex_gadget(inst.graph())?;
            let sol = io::read_solution(&solution)?;
            let dominating = extract_dominating_set(&gadget, inst.graph(), &sol.vertices)?;
            let shown: Vec<usize> = dominating.into_iter().collect();
            println!("dominating set: {shown:?}");
            Ok(())
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), Error> {
    let (x, y) = s.split_once(',').ok_or_else(|| {
        Error::InvalidArgument(format!("pair must be 'x,y', got '{s}'"))
    })?;
    let parse = |t: &str| {
        t.trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad vertex id '{t}'")))
    };
    Ok((parse(x)?, parse(y)?))
}

fn parse_algos(s: &str) -> Result<Vec<Algorithm>, Error> {
    s.split(',')
        .map(|token| match token.trim() {
            "exact" => Ok(Algorithm::Exact),
            "simple" => Ok(Algorithm::SimpleApx),
            "hier" => Ok(Algorithm::Hierarchical),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm '{other}'"
            ))),
        })
        .collect()
}
