//! `dps`: generate instances, solve them, verify subgraphs, export DOT.
//!
//! Exit codes: 0 success, 1 infeasible instance or negative answer (decide
//! "no", failed verification, oracle disagreement), 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use dps_core::biinterval::build_dps;
use dps_core::generate::{
    gen_antiparallel, gen_diag, gen_random_bi, gen_random_interval, BiInstance, Instance, IntervalInstance,
};
use dps_core::io::{
    export_dot, read_instance, read_result, verify_result, write_instance, write_result, write_text, DecisionRecord,
    OracleRecord, OracleStatus, ResultBody, ResultFile,
};
use dps_core::oracle::{all_pairs_bfs, materialize_product, oracle_sssp};
use dps_core::sssp::{solve_general, SolverStats};
use dps_core::Error;

#[derive(Parser)]
#[command(name = "dps", version, about = "Distance-preserving subgraphs with few branching vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// King's graph lower-bound instance (terminals on the black boundary).
    GenDiag {
        #[arg(long)]
        board: usize,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Anti-parallel lower-bound instance; n must be a multiple of 4.
    GenAntiparallel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Seeded random instance; interval by default, bi-interval with --bi.
    GenRandom {
        #[arg(long, required_unless_present = "bi")]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, requires_all = ["nx", "ny"])]
        bi: bool,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Optimal single-source tree for an interval instance.
    SolveSssp {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check the optimum with the brute-force oracle (small inputs only).
        #[arg(long)]
        oracle_check: bool,
        /// Answer whether a tree with at most M branching vertices exists.
        #[arg(long, value_name = "M")]
        decide: Option<usize>,
    },
    /// All-pairs construction for a bi-interval instance.
    SolveBi {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Recheck distances on the explicit product (at most 12 per axis).
        #[arg(long)]
        oracle_check: bool,
    },
    /// Recompute every required distance in a stored subgraph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
    },
    /// Graphviz rendering of an instance, optionally with a subgraph.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        subgraph: Option<PathBuf>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

enum Failure {
    /// Infeasible instance or a negative answer.
    Negative(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) | Error::Unreachable { .. } => Failure::Negative(e.to_string()),
            other => Failure::Input(other),
        }
    }
}

type Outcome = Result<(), Failure>;

fn interval_instance(path: &Path) -> Result<IntervalInstance, Failure> {
    match read_instance(path)? {
        Instance::Interval(inst) => Ok(inst),
        Instance::BiInterval(_) => Err(Failure::Input(Error::Field {
            field: "kind".into(),
            message: "solve-sssp needs an interval instance".into(),
        })),
    }
}

fn bi_instance(path: &Path) -> Result<BiInstance, Failure> {
    match read_instance(path)? {
        Instance::BiInterval(inst) => Ok(inst),
        Instance::Interval(_) => Err(Failure::Input(Error::Field {
            field: "kind".into(),
            message: "solve-bi needs a bi-interval instance".into(),
        })),
    }
}

fn solve_sssp(input: &Path, out: Option<&Path>, oracle_check: bool, decide: Option<usize>) -> Outcome {
    let inst = interval_instance(input)?;
    let source = inst.source.ok_or_else(|| {
        Failure::Input(Error::Field {
            field: "source".into(),
            message: "single-source instances need a source".into(),
        })
    })?;
    let solution = match solve_general(&inst.graph, source, &inst.terminals) {
        Ok(s) => s,
        Err(e) if decide.is_some() => {
            println!("no");
            return Err(Failure::Negative(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let mut result = ResultFile::from_solution(&inst, &solution);
    let mut disagreement = None;
    if oracle_check {
        result.oracle = Some(match oracle_sssp(&inst.graph, source, &inst.terminals) {
            Ok(value) if value == solution.branching_count => OracleRecord {
                status: OracleStatus::Agrees,
                value: Some(value),
                message: None,
            },
            Ok(value) => {
                disagreement = Some(format!("oracle optimum {value}, solver {}", solution.branching_count));
                OracleRecord {
                    status: OracleStatus::Disagrees,
                    value: Some(value),
                    message: disagreement.clone(),
                }
            }
            Err(e) => {
                eprintln!("warning: oracle check skipped: {e}");
                OracleRecord {
                    status: OracleStatus::Refused,
                    value: None,
                    message: Some(e.to_string()),
                }
            }
        });
    }
    let mut accepted = true;
    if let Some(m) = decide {
        accepted = solution.branching_count <= m;
        if let ResultBody::Sssp { decision, .. } = &mut result.body {
            *decision = Some(DecisionRecord { threshold: m, accepted });
        }
        println!("{}", if accepted { "yes" } else { "no" });
    }
    match (out, decide) {
        (Some(path), _) => write_result(path, &result)?,
        (None, None) => write_result(Path::new("-"), &result)?,
        (None, Some(_)) => {}
    }
    if let Some(msg) = disagreement {
        return Err(Failure::Negative(msg));
    }
    if !result.distances_ok {
        return Err(Failure::Negative("solution does not preserve every terminal distance".into()));
    }
    if !accepted {
        return Err(Failure::Negative(format!(
            "optimum {} exceeds {}",
            solution.branching_count,
            decide.unwrap_or_default()
        )));
    }
    Ok(())
}

fn solve_bi(input: &Path, out: &Path, oracle_check: bool) -> Outcome {
    let inst = bi_instance(input)?;
    let start = Instant::now();
    let report = build_dps(&inst.graph, &inst.terminals)?;
    let stats = SolverStats {
        wall_time_us: start.elapsed().as_micros() as u64,
        ..SolverStats::default()
    };
    let mut result = ResultFile::from_report(&inst, &report, stats);
    if oracle_check {
        result.oracle = Some(match materialize_product(&inst.graph) {
            Ok(adj) => {
                // Compare the stored expected distances with BFS on the explicit product.
                let ny = inst.graph.y_axis().len();
                let dist = all_pairs_bfs(&adj);
                let ResultBody::AllPairs { verification, .. } = &result.body else {
                    unreachable!("from_report builds an all-pairs body")
                };
                let bad = verification
                    .iter()
                    .filter(|p| dist[p.from.ix * ny + p.from.iy][p.to.ix * ny + p.to.iy] != p.expected)
                    .count();
                OracleRecord {
                    status: if bad == 0 { OracleStatus::Agrees } else { OracleStatus::Disagrees },
                    value: None,
                    message: (bad > 0).then(|| format!("{bad} pairs differ from explicit BFS")),
                }
            }
            Err(e) => {
                eprintln!("warning: oracle check skipped: {e}");
                OracleRecord {
                    status: OracleStatus::Refused,
                    value: None,
                    message: Some(e.to_string()),
                }
            }
        });
    }
    write_result(out, &result)?;
    if !result.distances_ok || result.oracle.as_ref().is_some_and(|o| o.status == OracleStatus::Disagrees) {
        return Err(Failure::Negative("subgraph fails the distance check".into()));
    }
    Ok(())
}

fn verify(input: &Path, subgraph: &Path) -> Outcome {
    let inst = read_instance(input)?;
    let stored = read_result(subgraph)?;
    let fresh = verify_result(&inst, &stored)?;
    let (failed, total) = match &fresh.body {
        ResultBody::Sssp { verification, .. } => (verification.iter().filter(|p| !p.ok).count(), verification.len()),
        ResultBody::AllPairs { verification, .. } => (verification.iter().filter(|p| !p.ok).count(), verification.len()),
    };
    println!(
        "{} of {total} pairs preserved; branching {} (out-degree), {} (undirected)",
        total - failed,
        fresh.branching.out_degree,
        fresh.branching.undirected_degree
    );
    if failed > 0 {
        return Err(Failure::Negative(format!("{failed} pairs not preserved")));
    }
    Ok(())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::GenDiag { board, out } => write_instance(&out, &Instance::BiInterval(gen_diag(board)?))?,
        Command::GenAntiparallel { n, out } => {
            write_instance(&out, &Instance::Interval(gen_antiparallel(n)?.instance))?
        }
        Command::GenRandom { n, k, seed, bi, nx, ny, out } => {
            let instance = if bi {
                Instance::BiInterval(gen_random_bi(nx.unwrap_or(0), ny.unwrap_or(0), k, seed)?)
            } else {
                Instance::Interval(gen_random_interval(n.unwrap_or(0), k, seed)?)
            };
            write_instance(&out, &instance)?
        }
        Command::SolveSssp {
            input,
            out,
            oracle_check,
            decide,
        } => solve_sssp(&input, out.as_deref(), oracle_check, decide)?,
        Command::SolveBi { input, out, oracle_check } => solve_bi(&input, &out, oracle_check)?,
        Command::Verify { input, subgraph } => verify(&input, &subgraph)?,
        Command::ExportDot { input, subgraph, out } => {
            let inst = read_instance(&input)?;
            let sub = subgraph.as_deref().map(read_result).transpose()?;
            write_text(&out, &export_dot(&inst, sub.as_ref())?)?
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
