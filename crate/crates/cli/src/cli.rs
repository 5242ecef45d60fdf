use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlbranch::graphs::GraphKind;

#[derive(Debug, Parser)]
#[command(name = "hlbranch", version, about = "Hall-Littlewood branching graphs and invariant measures over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edge weights of a branching graph.
    Weights(WeightsArgs),
    /// Run an exact verification suite.
    Verify(VerifyArgs),
    /// Cylinder and level masses of an invariant measure.
    Measure(MeasureArgs),
    /// Sample paths of the Markov growth process.
    Sample(SampleArgs),
    /// Nilpotent class sizes in gl(n, q).
    Census(CensusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout; relative paths resolve against
    /// $HLB_OUTPUT_DIR when set.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Skip the desk-scale size guards.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GraphKind,
    /// Odd prime, for gl, u-even and u-odd.
    #[arg(long)]
    pub q: Option<u32>,
    /// Exact rational "p/r", for hl, hl-even and hl-odd.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub lmax: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    GlOracle,
    UOracle,
    Pieri,
    Gauge,
    Harmonic,
    C0,
    Census,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    /// Largest |μ| checked.
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Largest dimension for the c0 suite.
    #[arg(long)]
    pub max_m: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct FamilyArgs {
    /// gl-haar, gl-planch, gl-dirac, gl-omega, u-even-planch, u-odd-planch,
    /// u-even-principal, u-odd-principal, u-even-two-point, u-odd-two-point.
    /// Short names (haar, planch, principal, ...) take the parity of the graph.
    #[arg(long)]
    pub family: String,
    /// α parameters of gl-omega, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// β parameters of gl-omega, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<String>,
    /// Number of variables of a principal functional; omit for m = ∞.
    #[arg(long)]
    pub m: Option<u32>,
    /// Two-point coordinates, a1 > 0 > a2 with a1² + a2² = 1.
    #[arg(long, allow_hyphen_values = true, default_value = "4/5")]
    pub a1: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-3/5")]
    pub a2: String,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    #[arg(long, default_value_t = 3)]
    pub lmax: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GraphKind,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print transition frequencies out of this vertex against their exact
    /// probabilities instead of the paths; exits 1 when a frequency falls
    /// outside 3σ.
    #[arg(long)]
    pub check: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    /// Also count by enumerating every n×n matrix.
    #[arg(long)]
    pub brute: bool,
    #[command(flatten)]
    pub common: Common,
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = GraphKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown kind {s:?}; expected one of {}", names.join(", "))
    })
}
