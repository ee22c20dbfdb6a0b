//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hypercert",
    version,
    about = "Certified checks of sharp binomial-sum inequalities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Starting precision in bits
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(16..))]
    pub prec: u32,
    /// Largest precision tried before a case is reported undecided
    #[arg(long, global = true, default_value_t = 4096)]
    pub prec_cap: u32,
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits for margins and values
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub digits: u32,
    /// Include the wall time in the report (makes output run-dependent)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclosures of p_k = log2 C(2k,k) and r_k = k/p_k with their bounds
    Pk(PkArgs),
    /// The binomial-sum inequality and its auxiliary estimates
    #[command(subcommand)]
    Ineq(IneqCommand),
    /// Differential-equation residuals
    #[command(subcommand)]
    Ode(OdeCommand),
    /// Additive energies of hypercube subsets
    #[command(subcommand)]
    Energy(EnergyCommand),
    /// Lazy random walk laws
    #[command(subcommand)]
    Walk(WalkCommand),
    /// Whiteley and power means
    #[command(subcommand)]
    Means(MeansCommand),
}

#[derive(Debug, Args)]
pub struct PkArgs {
    /// k or an inclusive range lo..hi
    #[arg(long)]
    pub k: String,
}

#[derive(Debug, Subcommand)]
pub enum IneqCommand {
    /// f_k(x) <= 1 on a uniform grid over [0, 1]
    Main {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Small-x estimates, sign of c_k, psi_k(9) > 0, and the p_k / Stirling bounds
    Lemmas {
        #[arg(long)]
        k: String,
        /// Points of the c_k < 0 grid on [1/10, 1/2)
        #[arg(long, default_value_t = 41)]
        grid: usize,
    },
    /// Agreement of f_k with its Legendre-polynomial form at seeded points
    Legendre {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 20)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OdeCommand {
    /// Residuals of the f_k and h_k equations at seeded random points
    Residual {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct SetInput {
    /// Set file: one vertex per line as a 0/1 string, '#' comments
    #[arg(long, conflicts_with_all = ["mask", "d"])]
    pub set: Option<PathBuf>,
    /// Hexadecimal vertex mask (bit v = vertex v)
    #[arg(long, requires = "d")]
    pub mask: Option<String>,
    /// Dimension for --mask
    #[arg(long, requires = "mask")]
    pub d: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum EnergyCommand {
    /// E_k(A) with its sum tally
    Compute {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        input: SetInput,
    },
    /// E_k(A) <= |A|^(p_k), cross-checked by brute force when small
    Verify {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        input: SetInput,
    },
    /// The bound on every nonempty subset of {0,1}^d, d <= 4
    Exhaustive {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: String,
    },
    /// The bound on seeded random subsets of {0,1}^d
    Random {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum WalkCommand {
    /// P(S_k=0)^(1/p) <= P(S_k=-k)^(1/p) + P(S_k=k)^(1/p) on a q-grid
    Verify {
        #[arg(long)]
        k: String,
        /// Number of q values i/(N-1) in [0, 1]
        #[arg(long, default_value_t = 101)]
        q_grid: usize,
        /// Rational exponent replacing p_k
        #[arg(long)]
        p: Option<String>,
    },
    /// Both sides agree with the main inequality under the substitution
    Equivalence {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 21)]
        q_grid: usize,
    },
    /// The inequality at q = 1/2 with exponent p_k - deficit (expected to fail)
    Sharpness {
        #[arg(long)]
        k: String,
        #[arg(long)]
        deficit: String,
    },
    /// Monte Carlo frequencies of S_k in {-k, 0, k} against the exact law
    Simulate {
        /// q = 2 P(X=1) in [0, 1]
        #[arg(
            long,
            conflicts_with = "right_prob",
            required_unless_present = "right_prob"
        )]
        q: Option<String>,
        /// P(X=1) in [0, 1/2]
        #[arg(long)]
        right_prob: Option<String>,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted |z| before a frequency is flagged
        #[arg(long, default_value_t = 4.0)]
        z_max: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Upper,
    Lower,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum MeansCommand {
    /// W_k <= M_(r_k) and/or W_k >= M_(k/(2k-1)) on the ray y = 1, x in [0, x_max]
    Verify {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Direction::Both)]
        direction: Direction,
        #[arg(long, default_value = "4")]
        x_max: String,
        /// Also check the two earlier M_(1/2) bounds
        #[arg(long)]
        prior: bool,
    },
    /// (1 - W_k(1+eps, 1-eps))/eps^2 against (k-1)/(2(2k-1))
    Expand {
        #[arg(long)]
        k: String,
        #[arg(long)]
        eps: String,
        /// Accepted relative error
        #[arg(long, default_value = "1/1000")]
        tolerance: String,
    },
    /// h_k(x) >= h_k(1/2) and positivity of c~_k and its factored form
    Hk {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
}
