//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 runtime failure, 3 a violated
//! inequality in an exact audit.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hullprobe", version, about = "Random polytopes in centered convex bodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample size t for (d, theta, delta) and the constant condition on C.
    Bound(BoundArgs),
    /// Smallest admissible constant C.
    #[command(name = "min-c")]
    MinC(MinCArgs),
    /// One seeded containment trial with its certificate.
    Trial(TrialArgs),
    /// Success-probability grid over d, theta and t.
    Sweep(SweepArgs),
    /// Relative volume of caps cut off beyond theta*K.
    Grunbaum(GrunbaumArgs),
    /// VC-dimension of halfspaces on a point list.
    Vcdim(VcdimArgs),
    /// Summary table of a JSON-lines record file.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(short = 'd')]
    pub d: usize,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(short = 'C')]
    pub c: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct MinCArgs {
    #[arg(short = 'd')]
    pub d: usize,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args, Clone)]
pub struct BodyArgs {
    /// cube, simplex, triangle, cross, ball, or a JSON body file.
    #[arg(long, default_value = "cube")]
    pub body: String,
    #[arg(short = 'd')]
    pub d: Option<usize>,
    /// Side (cube), radius (ball, cross-polytope) or vertex scale (simplex).
    #[arg(long)]
    pub scale: Option<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct SeedArgs {
    #[arg(long, env = "HULLPROBE_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[arg(long)]
    pub theta: f64,
    #[arg(short = 't')]
    pub t: Option<u64>,
    #[arg(long)]
    pub auto_t: bool,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(short = 'C')]
    pub c: Option<f64>,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Trial index within the seed's stream family.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
    /// JSON-lines record file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "cube")]
    pub body: String,
    #[arg(short = 'd', value_delimiter = ',')]
    pub d: Vec<usize>,
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<f64>,
    #[arg(short = 't', value_delimiter = ',')]
    pub t: Vec<u64>,
    #[arg(long)]
    pub auto_t: bool,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(short = 'C')]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Table output (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// JSON-lines record file.
    #[arg(long)]
    pub records: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GrunbaumArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    /// theta = 0 audits halfspaces through the centroid.
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.3,0.5,0.9")]
    pub theta: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub directions: usize,
    /// Samples per cap in Monte Carlo mode.
    #[arg(long, default_value_t = 100_000)]
    pub mc: u64,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub records: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VcdimArgs {
    /// JSON array of points, or {"points": [...]}.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Outcome of a command that did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

/// Parses `args` and runs the command, writing to `out`/`err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(&cli.command, out) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Violation) => {
            let _ = writeln!(err, "error: exact audit found a violated inequality");
            EXIT_VIOLATION
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}
