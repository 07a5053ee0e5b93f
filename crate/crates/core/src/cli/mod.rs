//! Command-line surface of the `cumulant` binary.
//!
//! Exit codes: 0 success, 2 principled negative (violation, rejection,
//! residual above tolerance), 1 operational error, including usage errors.
//! The document of each command goes to `--output` when given and to
//! standard output otherwise; the one-line summary goes to standard output
//! (standard error when the document already occupies standard output).

mod commands;
mod formats;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{
    cmd_characterize, cmd_convert, cmd_reduce, cmd_simulate, Mode, Outcome, SequenceKind, SimulateOptions, Status,
    ERROR_CODE, MAX_SEQUENCE_ORDER, REDUCTION_TOLERANCE,
};
pub use formats::{
    format_sequence, input_digest, parse_sequence, Dependence, JointAtom, Marginal, ReductionReport, ReportBody,
    ReportFile, ScenarioFile, SideFile,
};

#[derive(Debug, Parser)]
#[command(name = "cumulant", version, about = "Moment/cumulant algebra and normal-characterization checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum From {
    Moments,
    Cumulants,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a moment sequence to cumulants or back.
    Convert {
        #[arg(long, value_enum)]
        from: From,
        #[arg(long)]
        order: Option<usize>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the invariance condition on an exact scenario.
    Characterize {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, conflicts_with = "vector")]
        prop2: bool,
        /// Number of variables before the offset on the left side.
        #[arg(long, value_name = "M")]
        vector: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo invariance test of the statistic's law on a circle.
    Simulate {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Grid angles in degrees.
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 22.5, 45.0, 67.5, 90.0])]
        angles: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the quadratic completion identity on CSV rows.
    Reduce {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<f64>,
        #[arg(long)]
        samples: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn execute(command: Command) -> crate::Result<(Outcome, Option<PathBuf>)> {
    Ok(match command {
        Command::Convert { from, order, input, output } => {
            let kind = match from {
                From::Moments => SequenceKind::Moments,
                From::Cumulants => SequenceKind::Cumulants,
            };
            (cmd_convert(kind, order, &input)?, output)
        }
        Command::Characterize { scenario, order, prop2, vector, output } => {
            let mode = match (prop2, vector) {
                (true, _) => Mode::Prop2,
                (false, Some(m)) => Mode::Vector(m),
                (false, None) => Mode::Pair,
            };
            (cmd_characterize(&scenario, order, mode)?, output)
        }
        Command::Simulate { left, right, radius, angles, n, seed, alpha, output } => {
            let opts = SimulateOptions { radius, angles, n, seed, alpha };
            (cmd_simulate(&left, &right, &opts)?, output)
        }
        Command::Reduce { coeffs, samples, output } => (cmd_reduce(&coeffs, &samples)?, output),
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ERROR_CODE } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok((outcome, output)) => {
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &outcome.document) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ERROR_CODE;
                    }
                    println!("{}", outcome.summary);
                }
                None => {
                    print!("{}", outcome.document);
                    eprintln!("{}", outcome.summary);
                }
            }
            outcome.status.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ERROR_CODE
        }
    }
}
