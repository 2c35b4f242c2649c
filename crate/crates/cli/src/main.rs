// SPDX-License-Identifier: Apache-2.0

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::input::GraphFormat;

/// Decide and analyse sum basic equilibria of network creation games.
#[derive(Debug, Parser)]
#[command(name = "sumeq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a graph is a sum basic equilibrium (exit 0 yes, 1 no).
    Check(GraphArgs),
    /// Report bridges, cut vertices, components, pendant worlds and graph classes.
    Analyze(GraphArgs),
    /// Swap-cost aggregates over one 2-edge-connected component.
    Theory(TheoryArgs),
    /// Run best-response swap dynamics.
    Dynamics(DynamicsArgs),
    /// Verify the structural claims over a family of graphs (exit 0 iff no violations).
    Survey(SurveyArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Graph file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Input format; detected from the extension or the content when omitted.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ObserverChoice {
    All,
    Vertex(usize),
}

fn parse_observer(s: &str) -> Result<ObserverChoice, String> {
    if s == "all" {
        return Ok(ObserverChoice::All);
    }
    s.parse().map(ObserverChoice::Vertex).map_err(|_| format!("expected a vertex or \"all\", got {s:?}"))
}

#[derive(Debug, Args)]
struct TheoryArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Index among the 2-edge-connected components with at least one edge.
    #[arg(long, default_value_t = 0)]
    component: usize,
    /// Observer vertex, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_observer)]
    observer: ObserverChoice,
}

#[derive(Debug, Args)]
struct DynamicsArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Records {
    All,
    Equilibria,
    Violations,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["n", "g6"])))]
struct SurveyArgs {
    /// Enumerate every labelled connected graph on this many vertices.
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=8))]
    n: Option<u8>,
    /// Read graph6 strings, one per line, from this file (`-` for standard input).
    #[arg(long)]
    g6: Option<PathBuf>,
    /// Comma-separated claim names, or `all`.
    #[arg(long, default_value = "all")]
    claims: String,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "SUMEQ_WORKERS")]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Group equilibria into isomorphism classes in the summary.
    #[arg(long)]
    dedup: bool,
    /// Which per-graph rows to keep in the report.
    #[arg(long, value_enum, default_value = "all")]
    records: Records,
    /// Permit the 8-vertex enumeration.
    #[arg(long)]
    allow_n8: bool,
    /// Print chunk progress to standard error.
    #[arg(long)]
    progress: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => commands::check(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::Theory(args) => commands::theory(&args),
        Command::Dynamics(args) => commands::dynamics(&args),
        Command::Survey(args) => commands::survey(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
