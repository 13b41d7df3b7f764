//! Command-line front end. Exit codes: 0 success, 2 invalid input, 3 an
//! internal invariant failed.

use std::io::Write;
use std::path::PathBuf;

use adaptivity_core::oracle::{EssentialState, HiddenDag};
use adaptivity_core::search::{
    path_search_on, search_on, separating_system_nonadaptive, tree_search_on, SearchConfig, SearchError,
};
use adaptivity_core::synth::{Family, GeneratorConfig};
use adaptivity_core::verify::{clique_sum_lower_bound, covered_edges, verification_number_atomic};
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{self, Algorithm, SweepSpec};
use crate::io::{read_graph, transcript_json, write_edge_list, write_graph};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn internal(e: impl ToString) -> CliError {
    CliError::Internal(e.to_string())
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Incomplete(_) | SearchError::Oracle(_) | SearchError::Chordal(_) => internal(e),
            _ => invalid(e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "adaptivity", version, about = "Round-limited causal graph discovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    ErStyled,
    TreeLike,
    GnpUnionTree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic DAG as an edge list, with a JSON sidecar.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        rho: f64,
        #[arg(long, default_value_t = 0.03)]
        p: f64,
        #[arg(long, default_value_t = 0.4)]
        d_prop: f64,
        #[arg(long, default_value_t = 0.2)]
        e_min_prop: f64,
        #[arg(long, default_value_t = 0.5)]
        e_max_prop: f64,
        /// Output file; the sidecar goes to `<out>.json`. Prints to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one search against the DAG in `--graph` and print the transcript.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = false, action = ArgAction::Set)]
        checks: bool,
        /// adaptive, path, tree, separating, or a benchmark name such as adaptive_r2 (which sets r).
        #[arg(long, default_value = "adaptive")]
        algo: String,
        /// Final round on a minimum vertex cover.
        #[arg(long, default_value_t = false, action = ArgAction::Set)]
        vc: bool,
        /// Switch to the final round early when it is cheaper.
        #[arg(long, default_value_t = false, action = ArgAction::Set)]
        early: bool,
    },
    /// Print the atomic verification number of the DAG in `--graph`.
    Verify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a sweep and write results.ndjson and results.csv.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the master seed in the spec.
        #[arg(long)]
        master_seed: Option<u64>,
    },
    /// Aggregate every *.ndjson file in a directory into a CSV.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
}

fn load_dag(path: &std::path::Path) -> Result<HiddenDag, CliError> {
    let g = read_graph(path).map_err(invalid)?;
    if g.undirected_count() > 0 {
        return Err(invalid(format!("{}: expected a fully directed graph", path.display())));
    }
    HiddenDag::new(g).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { family, n, seed, rho, p, d_prop, e_min_prop, e_max_prop, out: path } => {
            let family = match family {
                FamilyName::ErStyled => Family::ErStyled { rho },
                FamilyName::TreeLike => Family::TreeLike { d_prop, e_min_prop, e_max_prop },
                FamilyName::GnpUnionTree => Family::GnpUnionTree { p },
            };
            let cfg = GeneratorConfig { family, n, seed };
            let hidden = cfg.generate().map_err(invalid)?;
            let sidecar = serde_json::to_string_pretty(&cfg).map_err(internal)?;
            let comment = format!("{} n={} seed={}", cfg.family.name(), n, seed);
            match path {
                Some(path) => {
                    write_graph(&path, hidden.dag(), Some(&comment)).map_err(invalid)?;
                    let mut side = path.clone().into_os_string();
                    side.push(".json");
                    std::fs::write(&side, sidecar + "\n").map_err(invalid)?;
                }
                None => out.write_all(write_edge_list(hidden.dag(), Some(&comment)).as_bytes()).map_err(internal)?,
            }
        }
        Command::Search { graph, r, k, checks, algo, vc, early } => {
            let hidden = load_dag(&graph)?;
            let n = hidden.n();
            let mut cfg = SearchConfig {
                r,
                k,
                checks_enabled: checks,
                check_budget: None,
                final_round_vc_optimization: vc,
                early_final_round: early,
            };
            if k == 0 {
                return Err(invalid("k must be at least 1"));
            }
            let start = hidden.observe_with_bound(k);
            let mut orienter = hidden.clone();
            let text = match algo.as_str() {
                "adaptive" => transcript_json(&search_on(&mut orienter, start, &cfg)?),
                "path" => transcript_json(&path_search_on(&mut orienter, start, &cfg)?),
                "tree" => transcript_json(&tree_search_on(&mut orienter, start, &cfg)?),
                "separating" => {
                    let i = separating_system_nonadaptive(&start)?;
                    let mut state = EssentialState::from_graph(start.graph().clone(), k).map_err(internal)?;
                    state.apply_round(&mut orienter, i.interventions()).map_err(internal)?;
                    if !state.is_fully_oriented() {
                        return Err(internal("separating system left edges unoriented"));
                    }
                    serde_json::to_string_pretty(&json!({ "n": n, "k": k, "interventions": i.interventions() }))
                        .map_err(internal)?
                }
                name => {
                    let a = Algorithm::from_name(name).ok_or_else(|| invalid(format!("unknown algorithm {name:?}")))?;
                    cfg = SearchConfig { r: a.rounds(n), checks_enabled: true, ..cfg };
                    transcript_json(&search_on(&mut orienter, start, &cfg)?)
                }
            };
            writeln!(out, "{text}").map_err(internal)?;
        }
        Command::Verify { graph } => {
            let hidden = load_dag(&graph)?;
            let (nu1, witness) = verification_number_atomic(hidden.dag()).map_err(internal)?;
            let forest = covered_edges(hidden.dag()).map_err(internal)?;
            let lb = clique_sum_lower_bound(&hidden.observe()).map_err(internal)?;
            let v = json!({
                "n": hidden.n(),
                "nu1": nu1,
                "witness": witness,
                "covered_edges": forest.edges(),
                "clique_sum_lower_bound": lb,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(internal)?).map_err(internal)?;
        }
        Command::Bench { spec, out: dir, master_seed } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| invalid(format!("{}: {e}", spec.display())))?;
            let spec = SweepSpec::from_json(&text).map_err(invalid)?;
            let master = master_seed.unwrap_or(spec.master_seed);
            let rows = bench::run_sweep(&spec, master);
            bench::write_results(&dir, &rows).map_err(invalid)?;
            let failed = rows.iter().filter(|r| !r.completed).count();
            writeln!(out, "{} trials, {} failed, written to {}", rows.len(), failed, dir.display())
                .map_err(internal)?;
            if failed > 0 {
                return Err(internal(format!("{failed} trials failed")));
            }
        }
        Command::Summarize { input, csv } => {
            let rows = bench::read_results_dir(&input).map_err(invalid)?;
            let summary = bench::summarize(&rows);
            bench::write_csv(&csv, &summary).map_err(invalid)?;
            writeln!(out, "{} cells from {} trials", summary.len(), rows.len()).map_err(internal)?;
        }
    }
    Ok(())
}
