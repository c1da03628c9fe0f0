//! Command-line front end: loads point files, dispatches analyses and writes
//! CSV/SVG output.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod input;
pub mod svg;
pub mod sweep_csv;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, Result};
pub use format::format_num;
pub use input::{load_points, FileFormat, Loaded, PointFile};
pub use sweep_csv::{SweepResult, SweepRow};
