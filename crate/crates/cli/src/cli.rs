use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "amicable",
    version,
    about = "Search toolkit for mixed-parity amicable pairs",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the arithmetic layer against brute-force references.
    Verify(VerifyArgs),
    /// Run the theorem-constrained candidate search.
    Search(SearchArgs),
    /// Exhaustively scan all numbers up to the limit for amicable pairs.
    Scan(ScanArgs),
    /// Render a saved checkpoint as records.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One readable line per record.
    Human,
    /// One JSON object per line.
    Jsonl,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Write records to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Record format.
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Upper bound for the exhaustive property sweeps.
    #[arg(long, default_value_t = 1_000_000)]
    pub limit: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct SearchArgs {
    /// Largest candidate value to examine.
    #[arg(long, default_value_t = 100_000_000)]
    pub limit: u64,

    /// Shard to run. With --shard-count above 1 and no index, all shards
    /// run concurrently and their results are merged.
    #[arg(long, value_name = "INDEX")]
    pub shard_index: Option<u32>,

    /// Number of round-robin shards the candidate set is split into.
    #[arg(long, default_value_t = 1)]
    pub shard_count: u32,

    /// Checkpoint file to resume from and persist to. When all shards run
    /// in one invocation, shard N uses `<FILE>.shardN`.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ScanArgs {
    /// Largest value whose aliquot sum is tabulated.
    #[arg(long, default_value_t = 1_000_000)]
    pub limit: u64,

    /// Write the finished scan state to this checkpoint file.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ReportArgs {
    /// Checkpoint file to render.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: PathBuf,

    #[command(flatten)]
    pub output: OutputArgs,
}
