use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robsub_core::rng::DEFAULT_SEED;

/// Desk-scale rainbow subdivisions, α-maximal extraction and hypergraph cycles.
///
/// Exit status: 0 success, 1 nothing found (or a check failed), 2 input error,
/// 3 search budget exhausted.
#[derive(Debug, Parser)]
#[command(name = "robsub", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtractArg {
    Exact,
    Peel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CycleArg {
    Exact,
    Pipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Uncolored neighborhood sampling on the standard bipartite instances.
    Neighborhood,
    /// Colored neighborhood sampling on greedily colored star instances.
    Colored,
    /// Lower-tail Chernoff bound for sums of Bernoulli variables.
    Chernoff,
    /// The elementary inequalities on a log-spaced grid.
    Inequalities,
    /// Sampled rainbow reach in a colored graph.
    Reach,
    /// Sampled face reach in an r-graph.
    ReachFaces,
    /// Restricted neighborhood growth from a vertex set.
    Master,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    AcceptancePrimary,
    McTrends,
}

#[derive(Clone, Debug, Args)]
pub struct InOut {
    /// Input file; relative paths resolve against $ROBSUB_DATA_DIR when set.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct FinderArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub retries: usize,
    /// Per-part vertex probability; switches to independent part sampling.
    #[arg(long)]
    pub p: Option<f64>,
    /// Per-part color probability (used with --p).
    #[arg(long)]
    pub pc: Option<f64>,
    /// Number of sampling parts.
    #[arg(long)]
    pub parts: Option<usize>,
    /// Density exponent for the α-maximal extraction.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Longest witness path.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Search the whole input only, skipping the α-maximal part.
    #[arg(long)]
    pub no_extract: bool,
    /// Accept colorings that are not proper.
    #[arg(long)]
    pub allow_improper: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// α-maximal subgraph of an edge list.
    Extract {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = ExtractArg::Exact)]
        mode: ExtractArg,
    },
    /// Rainbow cycle in a properly edge-colored graph.
    RainbowCycle {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        finder: FinderArgs,
        #[arg(long, value_enum, default_value_t = SearchArg::Heuristic)]
        mode: SearchArg,
        /// Node budget of exact mode.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Rainbow subdivision of K_t.
    RainbowSubdivision {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        finder: FinderArgs,
        #[arg(long)]
        t: usize,
    },
    /// Rainbow K_t subdivision with exactly ℓ internal vertices per path.
    LargeSubdivision {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        finder: FinderArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Re-check a certificate against its host graph.
    Validate {
        certificate: PathBuf,
        /// Host graph the certificate was produced from.
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        allow_improper: bool,
    },
    /// α-maximal sub-hypergraph of a hyperedge list.
    Hextract {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = ExtractArg::Exact)]
        mode: ExtractArg,
        /// Uniformity; inferred from the file when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Density, face-degree and expansion checks of an α-maximal r-graph.
    Hverify {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Higher-order cycle of length ℓ in an r-graph.
    Hcycle {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = CycleArg::Exact)]
        mode: CycleArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        retries: usize,
        #[arg(long)]
        alpha: Option<f64>,
        /// Node budget of exact mode.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Euler characteristic and surface type of a face-cycle certificate.
    Classify {
        certificate: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Explicit constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Monte Carlo estimate for one concentration lemma; writes CSV rows.
    Mc {
        lemma: Lemma,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Failure exponent; defaults to 2 and 3.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        pc: Option<f64>,
        #[arg(long, default_value_t = 0.25)]
        tau: f64,
        #[arg(long, default_value_t = 4)]
        ell: usize,
        #[arg(long)]
        alpha: Option<f64>,
        /// Grid points per axis for `inequalities`.
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Host graph for `reach`, `reach-faces` and `master`.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// CSV output; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Structured summary document.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run a named suite end to end.
    Report {
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// CSV output; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Coordinate-colored hypercube Q_m.
    Hypercube {
        #[arg(long)]
        m: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Random graph with girth above 3ℓ+3.
    Girth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Deletion-log document.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Random 3-graph without face cycles on at most ⌊1/α⌋ vertices.
    #[command(name = "3graph")]
    ThreeGraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Hypercube 2ℓ-cycle representing a face-cycle certificate.
    Embed {
        certificate: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}
