//! Command-line front end for c-biharmonic classification, stability and
//! conformal verification.

mod classify;
mod energy;
mod output;
mod residual;
mod stability;
mod verify;

use std::fmt;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use output::Format;

/// Exit code for malformed or out-of-domain input.
const EXIT_USAGE: u8 = 2;
/// Exit code for numeric failures and failed verifications.
const EXIT_NUMERIC: u8 = 3;

/// Invalid arguments detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(name = "cbiharmonic", version, about = "Conformal biharmonic hypersurfaces: classification, stability, verification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Zero-test tolerance for floating-point residuals.
    #[arg(long, env = "CBIHARMONIC_TOL", default_value_t = 1e-12, global = true)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate c-biharmonic members of a family.
    Classify {
        #[command(subcommand)]
        target: classify::ClassifyTarget,
    },
    /// Index and nullity of c-biharmonic hyperspheres.
    Stability {
        #[command(subcommand)]
        target: stability::StabilityTarget,
    },
    /// Bienergy and conformal bienergy of the hyperspheres through the equator, as CSV.
    EnergyCurve {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Tension, bitension and conformal bitension of one family member.
    Residual {
        #[command(subcommand)]
        family: residual::ResidualFamily,
    },
    /// Numerical verification suites.
    Verify {
        #[command(subcommand)]
        suite: verify::Suite,
    },
}

/// Rendered output and whether the command's checks passed.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let doc = match &cli.command {
        Command::Classify { target } => classify::run(target)?,
        Command::Stability { target } => stability::run(target)?,
        Command::EnergyCurve { m, samples } => {
            let rows = energy::samples(*m, *samples)?;
            return match cli.format {
                Format::Text => Ok((energy::csv(&rows)?, true)),
                Format::Json => Ok((energy::document(*m, &rows).render(Format::Json), true)),
            };
        }
        Command::Residual { family } => {
            if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
                return Err(UsageError("tolerance must be a nonnegative number".into()).into());
            }
            residual::run(family, cli.tolerance)?
        }
        Command::Verify { suite } => verify::run(suite)?,
    };
    Ok((doc.render(cli.format), doc.passed))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<cbiharmonic::Error>() {
        Some(
            cbiharmonic::Error::Domain(_)
            | cbiharmonic::Error::Parse(_)
            | cbiharmonic::Error::InvalidInterval { .. }
            | cbiharmonic::Error::ZeroPolynomial,
        ) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((text, passed)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(EXIT_NUMERIC)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
