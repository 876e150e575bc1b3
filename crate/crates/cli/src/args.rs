use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bnpair", version, about = "Exact alpha-stability computations for Brill-Noether pairs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub json: bool,

    /// Also render rationals as decimals with this many digits; inexact
    /// values are prefixed with `~`. Such output is not meant to be parsed.
    #[arg(long, value_name = "DIGITS", num_args = 0..=1, default_missing_value = "6", global = true)]
    pub decimal: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walls and chambers of a numerical type over an interval of alpha.
    Walls(WallsArgs),
    /// Existence conditions at one alpha, optionally against given subtypes.
    Check(CheckArgs),
    /// Numerical Jordan-Hölder decompositions at one alpha.
    Jh(JhArgs),
    /// Hilbert-Mumford test of a point in a product of Grassmannians.
    GitCheck(GitArgs),
    /// Destabilizer search for an explicit pair on the projective line.
    P1Check(P1CheckArgs),
    /// Destabilizer search across the chambers of an interval.
    P1Sweep(P1SweepArgs),
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Numerical type `r,d,l`.
    #[arg(long = "type", value_name = "R,D,L", allow_hyphen_values = true)]
    pub ty: String,

    /// `P1`, `smooth:G:N`, or a JSON file with the curve data.
    #[arg(long, default_value = "P1")]
    pub curve: String,
}

#[derive(Debug, Args)]
pub struct WallsArgs {
    #[command(flatten)]
    pub ty: TypeArgs,

    /// Search interval `lo,hi`, meaning `lo < alpha <= hi`.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    pub interval: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub ty: TypeArgs,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    /// Proper subtypes `r,d,l` to test against; repeatable.
    #[arg(long = "sub", value_name = "R,D,L", allow_hyphen_values = true)]
    pub subs: Vec<String>,
}

#[derive(Debug, Args)]
pub struct JhArgs {
    #[command(flatten)]
    pub ty: TypeArgs,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    /// Maximal number of factors (default: floor(m_X r)).
    #[arg(long)]
    pub max_parts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Enumeration budget; overrides the BNPAIR_BUDGET environment variable.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GitArgs {
    /// JSON file describing the point.
    #[arg(long)]
    pub point: PathBuf,

    #[arg(long, allow_hyphen_values = true)]
    pub p: String,

    #[arg(long, allow_hyphen_values = true)]
    pub q: String,

    /// Decision method: subspaces, one-ps or sampled.
    #[arg(long, default_value = "subspaces")]
    pub method: String,

    /// Number of random subspaces for the sampled method.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct P1Args {
    /// JSON file describing the pair.
    #[arg(long)]
    pub pair: PathBuf,

    /// Prime whose field enumerates subspaces of Lambda.
    #[arg(long, default_value_t = 3)]
    pub field_order: u32,

    /// Comma-separated subpair families (default: all).
    #[arg(long, value_delimiter = ',')]
    pub families: Vec<String>,

    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct P1CheckArgs {
    #[command(flatten)]
    pub pair: P1Args,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct P1SweepArgs {
    #[command(flatten)]
    pub pair: P1Args,

    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    pub interval: String,
}
