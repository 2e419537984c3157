//! Experiment runner for the `ialab` command.
//!
//! An experiment is named on the command line and configured by a flat
//! `key = value` file with one `[experiment]` section. Output is a typed
//! table rendered as CSV or JSON; for a fixed config and seed the bytes are
//! reproducible, so wall time is reported on stderr only.

pub mod config;
pub mod experiments;
pub mod harness;
pub mod registry;
pub mod table;

pub use config::{validate_config, validate_config_str, ConfigError, ExperimentConfig, Format, Value};
pub use harness::{emit, run_experiment, RunError};
pub use registry::{describe, lookup, EXPERIMENTS};
pub use table::{Cell, ColumnType, ResultTable};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
mod experiments_chapter {}
