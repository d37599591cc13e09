//! Command-line front end: expression parsing, job execution and reports.

pub mod app;
pub mod parse;
pub mod report;

pub use app::{main_with, run, CliError, FieldSpec, Format, JobConfig, Mode};
