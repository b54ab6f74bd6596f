use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triad_balance::AggregationPolicy;

mod run;

/// Structural balance of signed directed networks.
#[derive(Parser, Debug)]
#[command(name = "triadbal", version, about)]
struct Cli {
    /// Worker threads for census and balance (defaults to all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Turn JSON-lines messages or ratings into a signed edgelist CSV.
    Label(LabelArgs),
    /// Balance report over the transitive triad types.
    Analyze(AnalyzeArgs),
    /// Full 16-class triad census.
    Census(GraphArgs),
    /// Descriptive network measures.
    Stats(GraphArgs),
    /// Compare census and balance against the brute-force reference.
    #[command(hide = true)]
    OracleCheck(GraphArgs),
    /// Write a seeded random signed edgelist.
    #[command(hide = true)]
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LabelArgs {
    /// JSON-lines records with `source`, `target` and `text` or `rating`.
    #[arg(long, short)]
    input: PathBuf,
    /// Lexicon TSV (`term, pos, polarity[, category]`), or `builtin:sentiment`
    /// / `builtin:virtue-vice`.
    #[arg(long, required_unless_present = "survey", conflicts_with = "survey")]
    lexicon: Option<String>,
    /// Negation terms, one per line. The bundled list is used when omitted.
    #[arg(long)]
    negations: Option<PathBuf>,
    /// Label ratings by threshold instead of scoring text.
    #[arg(long)]
    survey: bool,
    /// Lowest rating that counts as a positive tie.
    #[arg(long, value_name = "N", default_value_t = triad_balance::labeler::DEFAULT_TRUST_THRESHOLD)]
    threshold: i64,
    /// Ignore text from the first line containing this marker.
    #[arg(long, value_name = "MARKER")]
    strip_quoted: Option<String>,
    /// Text is pre-tagged as `word/TAG`.
    #[arg(long)]
    tagged: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Signed edgelist CSV (`source,target,weight[,t]`) or JSON-lines.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value = "mean")]
    policy: AggregationPolicy,
    /// Two-column TSV mapping aliases to canonical node ids.
    #[arg(long, value_name = "TSV")]
    alias_map: Option<PathBuf>,
    /// Keep pendant nodes.
    #[arg(long)]
    no_prune_pendants: bool,
    /// Skip all pruning (self-loops, isolates, pendants).
    #[arg(long)]
    no_prune: bool,
    /// Also write the prepared graph as Graphviz DOT.
    #[arg(long, value_name = "OUT")]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Fail with exit status 1 when the graph has no transitive triads.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    edges: usize,
    #[arg(long, default_value_t = 0.5)]
    positive: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("triadbal: {:#}", failure.error);
            ExitCode::from(failure.status)
        }
    }
}
