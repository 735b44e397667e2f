use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "negabeta", version, about = "Exact (-beta)-transformation analyses")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct BetaArgs {
    /// `poly:<c0,...,ck>;interval:<lo>,<hi>` or `decimal:<d>;precision:<digits>`
    #[arg(long)]
    pub beta: String,
    /// Step budget for the orbit of 1.
    #[arg(long, default_value_t = 256)]
    pub max_steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expansion i'(1) and its case tag.
    Yrrap(BetaArgs),
    /// The folded automaton, or the unfolded graph up to --horizon.
    Graph {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Ordered chain of irreducible components.
    Components {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// One-way specification certificates.
    Spec {
        #[command(flatten)]
        beta: BetaArgs,
        /// Brute-force the exact minimal gap over words up to this length.
        #[arg(long)]
        maxlen: Option<usize>,
        /// Randomized gluing trials per certificate (needs --seed).
        #[arg(long, default_value_t = 0)]
        gluing: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        word_len: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact cylinder intervals with their bounds.
    Cyl {
        #[command(flatten)]
        beta: BetaArgs,
        /// All admissible words up to this length.
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        /// A single word instead of the full table.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Branching statistic g_beta(n) for n = 1..=nmax.
    Gbeta {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
    },
    /// Component spectral radii and topological entropy.
    Entropy(BetaArgs),
    /// Level-1 rate function at one level or over a sweep.
    Rate {
        #[command(flatten)]
        beta: BetaArgs,
        /// `digitK` or `value`.
        #[arg(long, default_value = "digit1")]
        obs: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// `lo:hi:steps`; defaults to the achievable range in 21 steps.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Monte Carlo deviation probability of the ergodic average.
    Mc {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, default_value = "digit1")]
        obs: String,
        /// `lo:hi`
        #[arg(long)]
        window: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Lebesgue against maximal-entropy rate functions (minimal Pisot only).
    CompareRates(BetaArgs),
    /// The five-branch slope-3 map: measure bounds, language and specification.
    Example31 {
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The circle map with a source and a sink: non-wandering set and occupation deviations.
    Example32 {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long = "N", default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.5")]
        a: Vec<f64>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        /// Relative tolerance against the predicted rate.
        #[arg(long, default_value_t = 0.2)]
        tolerance: f64,
    },
    /// Cross-validation and invariant suites for one beta.
    Validate {
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}
