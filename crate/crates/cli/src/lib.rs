//! Batch front-end for `skew-app`: job files in, JSON reports out.

pub mod job;
pub mod replay;
pub mod runner;

pub use job::{Job, Mode, Overrides, SpecError};
pub use runner::{run_job, Report, RunOptions, Status};
