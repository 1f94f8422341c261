//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtomo_core::states::Parity;

use crate::figures::Figure;

#[derive(Debug, Parser)]
#[command(
    name = "qtomo-delta",
    version,
    about = "Wigner functions, tomograms and overlaps for delta-potential bound states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Coarser grids and fewer verification points.
    #[arg(long, global = true)]
    pub quick: bool,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub tol_abs: Option<f64>,

    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub tol_rel: Option<f64>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner function on a (q, p) grid.
    Wigner(WignerArgs),
    /// Symplectic or optical tomogram.
    Tomogram(TomogramArgs),
    /// Probability to stay bound after kappa1 -> kappa2.
    Overlap(OverlapArgs),
    /// Second moments from the limiting tomograms.
    Moments(MomentsArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    #[value(alias = "symmetric", alias = "plus")]
    Sym,
    #[value(alias = "antisymmetric", alias = "minus")]
    Anti,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Sym => Parity::Symmetric,
            ParityArg::Anti => Parity::Antisymmetric,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Well strength.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub chi: f64,

    /// Half distance between two wells; a single well when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Parity of the double-well state.
    #[arg(long, value_enum, default_value_t = ParityArg::Sym)]
    pub parity: ParityArg,

    /// Use the true normalization in figure presets instead of C = 1.
    #[arg(long)]
    pub normalized: bool,

    /// Preset parameter set for figure data.
    #[arg(long, value_enum)]
    pub figure: Option<Figure>,
}

#[derive(Debug, Clone, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Single point instead of a grid (needs --p too).
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "q")]
    pub p: Option<f64>,

    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    pub q_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub q_max: f64,
    #[arg(long, default_value_t = 121)]
    pub q_points: usize,
    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    pub p_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub p_max: f64,
    #[arg(long, default_value_t = 121)]
    pub p_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TomogramArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Symplectic frame (needs --nu too).
    #[arg(long, allow_negative_numbers = true, requires = "nu", conflicts_with_all = ["theta", "theta_min", "theta_max"])]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "mu")]
    pub nu: Option<f64>,

    /// Optical frame angle.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["theta_min", "theta_max"])]
    pub theta: Option<f64>,

    /// Angle sweep.
    #[arg(long, allow_negative_numbers = true, requires = "theta_max")]
    pub theta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "theta_min")]
    pub theta_max: Option<f64>,
    #[arg(long, default_value_t = 31)]
    pub theta_points: usize,

    /// Allow angles on the axes (multiples of pi/2), which use the
    /// limiting position and momentum forms.
    #[arg(long)]
    pub theta_limit: bool,

    /// Single X instead of a sweep.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,

    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 121)]
    pub x_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Wavefunction,
    Wigner,
    Tomogram,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct OverlapArgs {
    /// Initial well strength.
    #[arg(
        allow_negative_numbers = true,
        required_unless_present = "kappa1",
        conflicts_with = "kappa1"
    )]
    pub k1: Option<f64>,
    /// Final well strength.
    #[arg(
        allow_negative_numbers = true,
        required_unless_present = "kappa2",
        conflicts_with = "kappa2"
    )]
    pub k2: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub kappa1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa2: Option<f64>,

    #[arg(long, value_enum, default_value_t = Method::Wavefunction)]
    pub method: Method,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub chi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Special,
    Wigner,
    Tomogram,
    Transitions,
    Moments,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    /// Well strength for the moments suite; 1 and 2 when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
}
