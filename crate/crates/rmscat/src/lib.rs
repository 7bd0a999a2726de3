//! Command-line front end for `rmscat-core`: configuration, table output in
//! CSV or JSON, the computing subcommands and the acceptance suite.

// negated comparisons reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod validate;

pub use config::{Cli, Command, Format, Overrides, Preset, RunConfig, TransformMode};
pub use error::{CliError, CliResult};
pub use output::{Column, Table};

use std::io::Write;

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    ChecksFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::ChecksFailed => 1,
        }
    }
}

/// Resolves the configuration of `cli` and runs it. Results go to the
/// configured output; the validation summary lines go to `log`.
pub fn execute(cli: Cli, log: &mut dyn Write) -> CliResult<Status> {
    let file = match &cli.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let cfg = RunConfig::resolve(cli.command, cli.overrides.over(file))?;
    if cli.show_config {
        let io = |source| CliError::Io { path: "<stdout>".into(), source };
        let stdout = std::io::stdout();
        stdout.lock().write_all(cfg.to_toml().as_bytes()).map_err(io)?;
        return Ok(Status::Success);
    }
    if cfg.command == Command::Validate {
        let outcomes = validate::run_suite(cfg.preset);
        for o in &outcomes {
            let _ = writeln!(log, "{}", o.line());
        }
        validate::report(cfg.preset, &outcomes).emit(cfg.format, cfg.out.as_deref())?;
        return Ok(if outcomes.iter().all(validate::Outcome::passed) { Status::Success } else { Status::ChecksFailed });
    }
    commands::run(&cfg)?.emit(cfg.format, cfg.out.as_deref())?;
    Ok(Status::Success)
}
