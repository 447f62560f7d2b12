use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "degen",
    version,
    about = "Exact and sampled degeneracy / k-core decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degeneracy of a graph, exact or approximate.
    Degeneracy(DegeneracyArgs),
    /// Per-node core numbers, exact or approximate.
    Kcore(KcoreArgs),
    /// Mean sample counts across graph sizes.
    BenchScaling(ScalingArgs),
    /// Rewrite a graph as binary CSR or as a plain edge list.
    Convert(ConvertArgs),
}

#[derive(Args, Debug, Clone)]
struct GraphSource {
    /// Edge-list text or binary CSR file (detected automatically).
    #[arg(
        long,
        required_unless_present = "generator",
        conflicts_with = "generator"
    )]
    input: Option<PathBuf>,
    /// Generated graph: `er:n,avgdeg[,seed]` or `clique-union:large,small,count`.
    #[arg(long = "gen")]
    generator: Option<String>,
    /// Keep parallel edges from edge-list input.
    #[arg(long)]
    keep_parallel: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Approx,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_enum, default_value = "approx")]
    mode: Mode,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run exact peeling and report the error factor.
    #[arg(long)]
    with_exact: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DegeneracyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Start at the h-index bound on the degeneracy.
    #[arg(long)]
    lower_start: bool,
    /// Exponential threshold leaps followed by binary search.
    #[arg(long)]
    leaps: bool,
}

#[derive(Args, Debug)]
struct KcoreArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Labels file, one `node<TAB>label` line per node.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Round approximate labels to the nearest integer.
    #[arg(long)]
    round_labels: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Er,
    CliqueUnion,
}

#[derive(Args, Debug)]
struct ScalingArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Average degree for the Erdős–Rényi family.
    #[arg(long, default_value_t = 20.0)]
    avg_degree: f64,
    /// Large-clique exponent b (large clique has round(n^b) nodes).
    #[arg(long, default_value_t = 0.5)]
    exponent: f64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    /// First seed; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    lower_start: bool,
    #[arg(long)]
    leaps: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csr,
    Edges,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "csr")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Degeneracy(args) => commands::degeneracy(args),
        Command::Kcore(args) => commands::kcore(args),
        Command::BenchScaling(args) => commands::bench_scaling(args),
        Command::Convert(args) => commands::convert(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
