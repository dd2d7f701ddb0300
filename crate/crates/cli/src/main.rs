use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use shiftptas::ProblemKind;

mod bench;
mod commands;
mod record;

#[derive(Parser)]
#[command(name = "shiftptas", version, about = "Shifting approximation schemes, tree decompositions and local tree-width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve vertex cover (vc), dominating set (ds) or independent set (is).
    Solve(SolveArgs),
    /// Build and validate a tree decomposition.
    Decompose(DecomposeArgs),
    /// Local tree-width profile, optionally checked against a slope.
    Ltw(LtwArgs),
    /// Run an acceptance suite over a corpus directory or generator family.
    Bench(BenchArgs),
    /// Write a generated graph in the edge-list format.
    Generate(GenerateArgs),
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    s.parse().map_err(|e: shiftptas::Error| e.to_string())
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exact", "ptas", "oracle"])))]
pub struct SolveArgs {
    #[arg(value_parser = parse_kind)]
    pub problem: ProblemKind,
    pub input: PathBuf,
    /// Exact dynamic programming over a min-fill decomposition.
    #[arg(long)]
    pub exact: bool,
    /// Shifting scheme with this epsilon (decimal or a/b).
    #[arg(long, value_name = "EPS")]
    pub ptas: Option<String>,
    /// Exhaustive search.
    #[arg(long)]
    pub oracle: bool,
    /// Also run the exhaustive search and report the ratio.
    #[arg(long, requires = "ptas")]
    pub oracle_compare: bool,
    /// Assumed local tree-width slope; strips above it are flagged.
    #[arg(long)]
    pub lambda: Option<usize>,
    /// Apex bound; defaults to the largest apex set given.
    #[arg(long)]
    pub mu: Option<usize>,
    /// Whitespace-separated 1-based apex vertices.
    #[arg(long, requires = "ptas", conflicts_with = "csd_file")]
    pub apex_file: Option<PathBuf>,
    /// Clique-sum decomposition of the input.
    #[arg(long, requires = "ptas")]
    pub csd_file: Option<PathBuf>,
    /// BFS center: first, all, or a 1-based vertex.
    #[arg(long, default_value = "first")]
    pub center: String,
    /// Also write the record here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("method").required(true).args(["exact", "heuristic", "sqrt", "over_class"])))]
pub struct DecomposeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub heuristic: bool,
    /// min-fill or min-degree.
    #[arg(long, default_value = "min-fill", requires = "heuristic")]
    pub strategy: String,
    /// Level-interval construction with this slope.
    #[arg(long, value_name = "LAMBDA")]
    pub sqrt: Option<usize>,
    /// Apex bound and apex file for --sqrt.
    #[arg(long, num_args = 2, value_names = ["MU", "FILE"], requires = "sqrt")]
    pub apex: Option<Vec<String>>,
    /// 1-based BFS center for --sqrt.
    #[arg(long, default_value_t = 1, requires = "sqrt")]
    pub center: usize,
    /// tw<w> or apex<mu>-tw<w>.
    #[arg(long, value_name = "CLASS")]
    pub over_class: Option<String>,
    /// Write the decomposition here instead of after the record.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct LtwArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub rmax: usize,
    /// Exact neighbourhood tree-width; min-fill upper bounds otherwise.
    #[arg(long)]
    pub exact: bool,
    /// Check ltw(r) <= LAMBDA * r.
    #[arg(long, value_name = "LAMBDA")]
    pub check: Option<usize>,
    /// Contracted balls sampled by --check.
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Directory of graph files, or a generator family such as planar:16.
    pub corpus: String,
    /// ratio-vc, ratio-ds, ratio-is, dp-oracle, ltw or sqrt.
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances drawn from a generator family.
    #[arg(long, default_value_t = 20)]
    pub count: u64,
    #[arg(long, default_value = "0.5")]
    pub epsilon: String,
    #[arg(long, default_value_t = 3)]
    pub lambda: usize,
}

#[derive(Args)]
pub struct GenerateArgs {
    /// grid:5x5, path:9, cycle:6, complete:5, ktree:12,2, triangulation:18,
    /// planar:18, apex:<mu>:<base>, uapex:<mu>:<base>,
    /// cliquesum:<adhesion>:<part>+<part>...
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the decomposition of a clique-sum family.
    #[arg(long)]
    pub csd_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Decompose(a) => commands::decompose(a),
        Command::Ltw(a) => commands::ltw(a),
        Command::Bench(a) => bench::run(a),
        Command::Generate(a) => commands::generate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let rejected = matches!(
                e.downcast_ref::<shiftptas::Error>(),
                Some(shiftptas::Error::ApexOverBound { .. } | shiftptas::Error::AdhesionOverBound { .. })
            );
            ExitCode::from(if rejected { 2 } else { 1 })
        }
    }
}
