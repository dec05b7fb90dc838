use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ctqw",
    version,
    about = "Continuous-time quantum walks on graph Laplacians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Build or check a fully interconnected decomposition.
    Decompose(DecomposeArgs),
    /// Transition probabilities from a start vertex, decomposition vs direct.
    Simulate(SimulateArgs),
    /// Run the numerical invariant checks.
    Verify(VerifyArgs),
    /// Return-probability scan over a growing family.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Complete,
    Star,
    Path,
    Cycle,
    Edgeless,
    #[value(name = "erdos_renyi", alias = "erdos-renyi")]
    ErdosRenyi,
    Threshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Trivial,
    Singleton,
    Twin,
    Dominating,
    Clique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFamilyName {
    Complete,
    Star,
    Threshold,
    Clique,
}

#[derive(Debug, Args)]
pub struct GraphSource {
    /// Edge-list file.
    #[arg(long, conflicts_with_all = ["family", "n"], required_unless_present = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for random families.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, env = "CTQW_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PartitionSource {
    /// Partition file: one block per line.
    #[arg(long, conflicts_with = "strategy")]
    pub blocks_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "twin")]
    pub strategy: Strategy,
    /// Clique vertices for `--strategy clique`.
    #[arg(long, value_delimiter = ',')]
    pub clique: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct TimeGrid {
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub t_max: f64,
    #[arg(long, default_value_t = 64)]
    pub t_steps: usize,
    /// Explicit comma-separated times; replaces the grid.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["t_min", "t_max", "t_steps"])]
    pub times: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub partition: PartitionSource,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub partition: PartitionSource,
    #[command(flatten)]
    pub grid: TimeGrid,
    #[arg(long, default_value_t = 1)]
    pub start: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Eigensolver tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub eigen_tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub partition: PartitionSource,
    #[command(flatten)]
    pub grid: TimeGrid,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Tolerance for the walk checks (equivalence, unitarity, symmetry, gap bound).
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Tolerance for the spectral identities.
    #[arg(long, default_value_t = 1e-10)]
    pub exact_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub eigen_tol: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: ScanFamilyName,
    /// Strictly ascending, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub grid: TimeGrid,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, env = "CTQW_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Gateway count for the clique family.
    #[arg(long, default_value_t = 2)]
    pub gateways: usize,
    /// Outer graph for the clique family; a 10-cycle if absent.
    #[arg(long)]
    pub outer_graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Slack added to the bound.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub eigen_tol: f64,
}
