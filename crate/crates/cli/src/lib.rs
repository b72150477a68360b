//! Library side of the `djc` binary: argument parsing plus the commands.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{parse_partitions, parse_range, Format, RunSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<driven_jc::Error> for CliError {
    fn from(e: driven_jc::Error) -> Self {
        match e {
            driven_jc::Error::NumericalFailure(m) => CliError::Numerical(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "djc", version, about = "Entanglement dynamics of driven atom-cavity pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence time series.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sudden-death and sudden-birth times plus peak concurrences.
    Events {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Event reports over a grid of drive strengths and frequencies.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// start:stop:step
        #[arg(long = "lambda-range", default_value = "0:1:0.25")]
        lambda_range: String,
        /// start:stop:step
        #[arg(long = "omega-c-range", default_value = "0:1:0.25")]
        omega_c_range: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks every closed form against the numerical oracles.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, hide = true, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Writes the data behind the published figures.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// key=value file; flags given here take precedence
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega0: Option<f64>,
    #[arg(long = "omega-c")]
    pub omega_c: Option<f64>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// |α|²; β follows from normalization
    #[arg(long = "alpha-sq")]
    pub alpha_sq: Option<f64>,
    /// phase of β (does not affect any concurrence)
    #[arg(long = "beta-phase", allow_negative_numbers = true)]
    pub beta_phase: Option<f64>,
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// comma-separated subset of a1a2,c1c2,a1c2,c1a2
    #[arg(long)]
    pub partitions: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl ParamArgs {
    pub fn settings(&self) -> Result<RunSettings, CliError> {
        let mut s = RunSettings::default();
        if let Some(path) = &self.params {
            s.apply_file(path)?;
        }
        let flags = [
            (self.omega, &mut s.omega),
            (self.omega0, &mut s.omega0),
            (self.omega_c, &mut s.omega_c),
            (self.g, &mut s.g),
            (self.lambda, &mut s.lambda),
            (self.alpha_sq, &mut s.alpha_sq),
            (self.beta_phase, &mut s.beta_phase),
            (self.t_max, &mut s.t_max),
        ];
        for (flag, slot) in flags {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        if let Some(n) = self.steps {
            s.steps = n;
        }
        if let Some(list) = &self.partitions {
            s.partitions = parse_partitions(list)?;
        }
        Ok(s)
    }
}

pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Simulate { params, output } => {
            let cfg = params.settings()?.run_config(output.out, output.format.unwrap_or(Format::Csv))?;
            commands::cmd_simulate(&cfg, stdout)
        }
        Command::Events { params, output } => {
            let p = params.settings()?.system_params()?;
            commands::cmd_events(&p, output.out.as_deref(), output.format.unwrap_or(Format::Json), stdout)
        }
        Command::Sweep { params, lambda_range, omega_c_range, output } => {
            let p = params.settings()?.system_params()?;
            let (lambdas, omegas) = (parse_range(&lambda_range)?, parse_range(&omega_c_range)?);
            commands::cmd_sweep(
                &p,
                &lambdas,
                &omegas,
                output.out.as_deref(),
                output.format.unwrap_or(Format::Csv),
                stdout,
            )
        }
        Command::Verify { params, tolerance_scale } => {
            let s = params.settings()?;
            if !(s.t_max.is_finite() && s.t_max > 0.0) {
                return Err(CliError::Invalid("t_max must be positive".into()));
            }
            commands::cmd_verify(&s.system_params()?, s.t_max, tolerance_scale, stdout)
        }
        Command::Figures { which, out_dir } => {
            for path in commands::cmd_figures(which, &out_dir)? {
                writeln!(stdout, "{}", path.display()).map_err(|e| CliError::Invalid(format!("stdout: {e}")))?;
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "djc: {e}");
            e.exit_code()
        }
    }
}
