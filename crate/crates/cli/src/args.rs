use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hquad_core::{BoundKind, FunctionSpec, HadamardVariant};

use crate::grid::{parse_grid, parse_list, parse_value, Grid, List};

#[derive(Debug, Parser)]
#[command(
    name = "hquad",
    version,
    about = "Check quadrature error bounds against an adaptive-quadrature oracle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one bound per grid point and report whether it holds.
    Verify(RunArgs),
    /// Write the tightness ratio lhs/rhs of one bound per grid point.
    Sweep(RunArgs),
    /// Evaluate several bounds side by side and name the smallest.
    Compare(CompareArgs),
    /// Check the kernel representation of the rule error on a seeded corpus.
    Identity(IdentityArgs),
    /// Check Hermite-Hadamard chains on seeded class-matched corpora.
    Hadamard(HadamardArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Grids and the test function shared by verify, sweep and compare.
#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Comma list (fractions allowed) or `start:stop:count`.
    #[arg(long, value_parser = parse_grid, default_value = "1/2")]
    pub alpha_grid: Grid,
    #[arg(long, value_parser = parse_grid, default_value = "1/3")]
    pub lambda_grid: Grid,
    #[arg(long, value_parser = parse_grid, default_value = "1")]
    pub q_grid: Grid,
    /// Exponent for `--h t^s` and for the fixed-rule comparison bounds.
    #[arg(long, value_parser = parse_grid, default_value = "1")]
    pub s_grid: Grid,
    /// Conjugate exponent; derived from q when absent.
    #[arg(long, value_parser = parse_value)]
    pub p: Option<f64>,
    /// Modulus of the class declared for |f'|^q: t, t^s, 1 or 1/t.
    #[arg(long, default_value = "t")]
    pub h: String,
    /// Whether |f'|^q is declared h-convex or h-concave.
    #[arg(long, value_enum, default_value = "convex")]
    pub class: Class,
    /// poly:c0,c1,..  power:beta,r  exp:beta,k  mirror:beta,r,c  tanh:base,k,x0
    #[arg(long, default_value = "exp:1,1", allow_hyphen_values = true)]
    pub function: FunctionSpec,
    #[arg(long, num_args = 2, value_names = ["A", "B"], value_parser = parse_value,
          default_values = ["0", "1"], allow_hyphen_values = true)]
    pub interval: Vec<f64>,
    /// Seed of the sampled class certification.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled triples in the class certification.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// sup |f''''| on the interval, for classical-simpson.
    #[arg(long, value_parser = parse_value)]
    pub sup_f4: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value = "power-mean")]
    pub bound: BoundKind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated bound kinds.
    #[arg(long, value_parser = parse_list::<BoundKind>, default_value = "power-mean,prior-midpoint-power-mean")]
    pub kinds: List<BoundKind>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HadamardArgs {
    /// Comma-separated chains; all of them when absent.
    #[arg(long, value_parser = parse_list::<HadamardVariant>)]
    pub variants: Option<List<HadamardVariant>>,
    /// Cases per chain.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exponent of the s-convex chain, in (0, 1).
    #[arg(long, value_parser = parse_value, default_value = "1/2")]
    pub s: f64,
    /// Modulus of the h-convex chain: t, t^s, 1 or 1/t.
    #[arg(long, default_value = "t")]
    pub h: String,
    #[command(flatten)]
    pub output: OutputArgs,
}
