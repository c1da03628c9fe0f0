use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pivotlab::region::SIGN_TOL;

/// Pivot points of least-squares regression lines under datum repetition.
#[derive(Debug, Parser)]
#[command(name = "pivotlab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the pivot of one label (or of every label) as `label,x,y`
    Pivot(PivotArgs),
    /// Enumerate every repetition combination up to --kmax and classify each pivot
    Sweep(SweepArgs),
    /// Iterate the pseudopivot map on a triple of values
    Pseudopivot(PseudopivotArgs),
    /// Run verification suites and report pass/fail
    Verify(VerifyArgs),
    /// Track one pivot while another point is repeated 0..=kmax extra times
    Trajectory(TrajectoryArgs),
}

#[derive(Debug, Args)]
pub struct PivotArgs {
    /// CSV (`x,y` rows) or JSON (`{"points": ..., "delta": ...}`) point file
    pub file: PathBuf,
    /// 1-based label; every label when omitted
    #[arg(long)]
    pub label: Option<usize>,
    /// Multiplicity of each point (overrides the file's `delta`)
    #[arg(long, value_delimiter = ',')]
    pub delta: Option<Vec<u64>>,
    /// Compute in exact rational arithmetic
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub file: PathBuf,
    /// Largest number of extra repetitions per point
    #[arg(long, default_value_t = 12)]
    pub kmax: u64,
    /// Check extreme-x pivots against the convex hull of the other points
    /// instead of the three/four-point region rules
    #[arg(long)]
    pub hull: bool,
    /// Write the sweep CSV here instead of stdout
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
    /// Relative tolerance for sign and boundary tests
    #[arg(long, default_value_t = SIGN_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct PseudopivotArgs {
    /// The starting values a b c
    #[arg(num_args = 3, required = true, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
    pub values: Vec<String>,
    /// Number of iterations
    #[arg(short = 'n', long = "steps", default_value_t = 6)]
    pub steps: usize,
    /// Iterate in exact rational arithmetic
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Invariance,
    Convergence,
    Regions,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::Convergence => "convergence",
            Suite::Regions => "regions",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Suites to run; all of them when omitted
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Largest repetition count (default 50 for invariance, 4 for regions)
    #[arg(long)]
    pub kmax: Option<u64>,
    /// Relative tolerance for the invariance suite
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Print a JSON summary instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    pub file: PathBuf,
    /// Label whose pivot is tracked
    #[arg(long)]
    pub label: usize,
    /// Label of the repeated point
    #[arg(long)]
    pub repeat: usize,
    #[arg(long, default_value_t = 100)]
    pub kmax: u64,
}
