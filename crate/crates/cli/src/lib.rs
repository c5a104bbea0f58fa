//! Command-line front end: algebra specs, command dispatch and reports.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, selftest, Command, CliError, ModuleChoice, Options};
pub use report::{emit, Cell, Format, Outcome, Report, Table};
pub use spec::{parse_spec, AlgebraSpec, Preset, SpecError};

/// Process exit code for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    match report.outcome {
        Outcome::Computed => 0,
        Outcome::Failed => 1,
    }
}
