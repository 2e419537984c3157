//! Dispatch, metadata and output.

use std::path::Path;

use crate::config::{ExperimentConfig, Format, Value};
use crate::table::{ResultTable, SchemaError};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// A parameter value the schema accepts but the experiment cannot use.
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Core(#[from] ialab_core::Error),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// 1 for configuration problems, 2 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Param(_) => 1,
            _ => 2,
        }
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Run the configured experiment and attach the config echo.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable, RunError> {
    let spec = cfg.spec();
    if spec.stochastic && cfg.seed.is_none() {
        return Err(RunError::Param("missing field `seed` (required for stochastic experiments)".into()));
    }
    let mut table = (spec.run)(cfg)?;
    table.meta("experiment", &cfg.experiment);
    table.meta("version", VERSION);
    if let Some(seed) = cfg.seed {
        table.meta("seed", seed);
    }
    if let Some(trials) = cfg.trials {
        table.meta("trials", trials);
    }
    for (k, v) in &cfg.params {
        table.meta(&format!("param.{k}"), v);
    }
    Ok(table)
}

/// Render and write to `path`, or return the text when no path is given.
pub fn emit(table: &ResultTable, format: Format, path: Option<&Path>) -> Result<Option<String>, RunError> {
    let text = table.render(format);
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

pub(crate) fn value<'a>(cfg: &'a ExperimentConfig, key: &str) -> Result<&'a Value, RunError> {
    cfg.params.get(key).ok_or_else(|| RunError::Param(format!("{key} is not set")))
}

pub(crate) fn int(cfg: &ExperimentConfig, key: &str) -> Result<i64, RunError> {
    match value(cfg, key)? {
        Value::Int(v) => Ok(*v),
        other => Err(RunError::Param(format!("{key} = {other} is not an integer"))),
    }
}

pub(crate) fn count(cfg: &ExperimentConfig, key: &str) -> Result<usize, RunError> {
    usize::try_from(int(cfg, key)?).map_err(|_| RunError::Param(format!("{key} must be non-negative")))
}

pub(crate) fn real(cfg: &ExperimentConfig, key: &str) -> Result<f64, RunError> {
    match value(cfg, key)? {
        Value::Real(v) => Ok(*v),
        other => Err(RunError::Param(format!("{key} = {other} is not a real"))),
    }
}

pub(crate) fn opt_real(cfg: &ExperimentConfig, key: &str) -> Result<Option<f64>, RunError> {
    if cfg.params.contains_key(key) { real(cfg, key).map(Some) } else { Ok(None) }
}

pub(crate) fn counts(cfg: &ExperimentConfig, key: &str) -> Result<Vec<usize>, RunError> {
    match value(cfg, key)? {
        Value::IntList(v) => v
            .iter()
            .map(|x| usize::try_from(*x).map_err(|_| RunError::Param(format!("{key} entries must be non-negative"))))
            .collect(),
        other => Err(RunError::Param(format!("{key} = {other} is not an integer list"))),
    }
}

pub(crate) fn reals(cfg: &ExperimentConfig, key: &str) -> Result<Vec<f64>, RunError> {
    match value(cfg, key)? {
        Value::RealList(v) => Ok(v.clone()),
        other => Err(RunError::Param(format!("{key} = {other} is not a real list"))),
    }
}

pub(crate) fn flag(cfg: &ExperimentConfig, key: &str) -> Result<bool, RunError> {
    match value(cfg, key)? {
        Value::Bool(v) => Ok(*v),
        other => Err(RunError::Param(format!("{key} = {other} is not a boolean"))),
    }
}

pub(crate) fn text<'a>(cfg: &'a ExperimentConfig, key: &str) -> Result<&'a str, RunError> {
    match value(cfg, key)? {
        Value::Text(v) => Ok(v),
        other => Err(RunError::Param(format!("{key} = {other} is not text"))),
    }
}

pub(crate) fn seed(cfg: &ExperimentConfig) -> u64 {
    cfg.seed.unwrap_or(0)
}

pub(crate) fn trials(cfg: &ExperimentConfig) -> usize {
    cfg.trials.unwrap_or(1) as usize
}
