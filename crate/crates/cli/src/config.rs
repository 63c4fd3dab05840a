//! Command-line flags and their validation.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use desitter_core::contraction::{ContractionParameter, DEFAULT_EPSILONS};
use desitter_core::fock::{FockSpace, ValiditySubspace, DEFAULT_CUTOFF};
use desitter_core::optics::SqueezeParameters;
use desitter_core::algebra::QUADRATIC_MARGIN;
use desitter_core::Result;

#[derive(Debug, Parser)]
#[command(
    name = "desitter",
    version,
    about = "O(3,2) algebra checks, contraction scans and two-photon state exports"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Per-mode photon-number cutoff
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    pub n_max: usize,

    /// Validity margin k: checks use states with n1, n2 <= n_max - k
    #[arg(long, global = true, default_value_t = QUADRATIC_MARGIN)]
    pub margin: usize,

    /// Contraction parameter, repeatable [default: 0.1 0.01 0.001]
    #[arg(long = "eps", global = true, allow_negative_numbers = true)]
    pub eps: Vec<f64>,

    /// Squeeze magnitude
    #[arg(long, global = true, default_value_t = SqueezeParameters::DEFAULT_R, allow_negative_numbers = true)]
    pub r: f64,

    /// Boost rapidity
    #[arg(long, global = true, default_value_t = SqueezeParameters::DEFAULT_ETA, allow_negative_numbers = true)]
    pub eta: f64,

    /// Output file [default: standard output]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format [default: json for verify and squeeze, csv for contract and ellipse]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the algebra, representation and contraction checks
    Verify,
    /// Scan the contraction parameter and fit convergence slopes
    Contract,
    /// Export the two-mode squeezed vacuum and its moments
    Squeeze,
    /// Export the boosted ground-state ellipse on a grid
    Ellipse,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Contract => "contract",
            Command::Squeeze => "squeeze",
            Command::Ellipse => "ellipse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub space: FockSpace,
    pub margin: usize,
    pub epsilons: Vec<ContractionParameter>,
    pub squeeze: SqueezeParameters,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let space = FockSpace::new(cli.n_max)?;
        ValiditySubspace::new(space, cli.margin)?;
        let eps = if cli.eps.is_empty() { DEFAULT_EPSILONS.to_vec() } else { cli.eps };
        let epsilons = eps.into_iter().map(ContractionParameter::new).collect::<Result<_>>()?;
        let squeeze = SqueezeParameters::new(cli.r, cli.eta)?;
        let format = cli.format.unwrap_or(match cli.command {
            Command::Verify | Command::Squeeze => Format::Json,
            Command::Contract | Command::Ellipse => Format::Csv,
        });
        Ok(RunConfig {
            command: cli.command,
            space,
            margin: cli.margin,
            epsilons,
            squeeze,
            out: cli.out,
            format,
        })
    }
}
