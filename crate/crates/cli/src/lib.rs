//! Command-line front end: file format, job configuration and dispatch.

pub mod config;
pub mod input;
pub mod run;

pub use config::{FastModeArg, JobConfig, Mode, OutputFormat};
pub use input::{parse_system, render_system, InputError};
pub use run::{run, CliError, Output};
