//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::reference::TABLE1_ALPHAS;

#[derive(Debug, Parser)]
#[command(
    name = "diracpt",
    version,
    about = "Spin-symmetric Dirac bound states in a modified Poschl-Teller well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the energy condition over a (D, n, alpha) grid.
    Spectrum(SpectrumArgs),
    /// Sample the normalized upper and lower components of one level.
    Wavefunction(WavefunctionArgs),
    /// Compare computed energies with the published table.
    Table1(Table1Args),
    /// Run the invariant suite and print one line per property.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    /// ∫F² dr = 1.
    Upper,
    /// ∫(F² + G²) dr = 1.
    Both,
}

/// Potential and mass parameters shared by several commands.
#[derive(Debug, Clone, Args)]
pub struct PhysicsArgs {
    /// Rest mass.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Vector well depth.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Scalar well depth.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub s0: f64,
    /// Spin-symmetry constant.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c1: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Spatial dimension; repeat for several.
    #[arg(long = "dim", default_values_t = [3u32, 4, 5])]
    pub dims: Vec<u32>,
    /// Principal numbers 1..=N are solved.
    #[arg(long, default_value_t = 5)]
    pub n_max: u32,
    /// Range parameter; repeat for several.
    #[arg(long = "alpha", default_values_t = TABLE1_ALPHAS)]
    pub alphas: Vec<f64>,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: u32,
    /// Radial quantum number.
    #[arg(long, default_value_t = 0)]
    pub nr: u32,
    /// Orbital quantum number.
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    #[arg(long, default_value_t = 1e-3)]
    pub alpha: f64,
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Outer radius; defaults to 30/(eps*alpha).
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, value_enum, default_value_t = SpacingArg::Hybrid)]
    pub spacing: SpacingArg,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Upper)]
    pub normalize: NormalizeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also run the finite-difference oracle for every cell.
    #[arg(long, value_enum, default_value_t = OnOff::Off)]
    pub oracle: OnOff,
    /// Print the embedded reference table as CSV and exit.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Skip the finite-difference oracle.
    #[arg(long)]
    pub fast: bool,
    /// Seed for the randomized property samples.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
