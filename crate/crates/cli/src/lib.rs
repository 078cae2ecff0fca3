//! Job-file driven front end for `gauge-curves`.
//!
//! A job is a TOML document naming one command, a gauge, a curve and the
//! parameters the command needs; [`run::run_job`] executes it and writes CSV and
//! SVG artifacts. See `specs/` for worked examples and the README for the schema.

pub mod csv_out;
pub mod fuzzing;
pub mod job;
pub mod run;
pub mod svg;

pub use job::{apply_overrides, parse_job, parse_override, Command, JobSpec};
pub use run::{run_job, ExitCode, Outcome, RunError};

/// Version of the job-file schema.
pub const JOB_FORMAT_VERSION: u32 = 1;
/// Version of the CSV layouts.
pub const CSV_FORMAT_VERSION: u32 = 1;
