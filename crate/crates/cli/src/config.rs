//! Flat `key = value` experiment configs with a single `[experiment]`
//! section header.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::registry::{lookup, ExperimentSpec, ParamKind};
use crate::table::fmt_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    IntList(Vec<i64>),
    RealList(Vec<f64>),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: Vec<String>| format!("[{}]", items.join(", "));
        match self {
            Self::Int(v) => write!(f, "{v}"),
            Self::Real(v) => f.write_str(&fmt_real(*v)),
            Self::IntList(v) => f.write_str(&join(v.iter().map(i64::to_string).collect())),
            Self::RealList(v) => f.write_str(&join(v.iter().map(|x| fmt_real(*x)).collect())),
            Self::Bool(v) => write!(f, "{v}"),
            Self::Text(v) => f.write_str(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Io(String),
    Syntax { line: usize, text: String },
    MissingSection,
    ExtraSection(String),
    UnknownExperiment(String),
    SectionMismatch { section: String, requested: String },
    UnknownKey(String),
    DuplicateKey(String),
    TypeMismatch { key: String, expected: String, got: String },
    MissingSeed,
    Exclusive(String, String),
    NeedsOneOf(String, String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "cannot read config: {e}"),
            Self::Syntax { line, text } => write!(f, "line {line}: expected `key = value`, got {text:?}"),
            Self::MissingSection => f.write_str("no [experiment] section"),
            Self::ExtraSection(s) => write!(f, "second section [{s}]; one experiment per file"),
            Self::UnknownExperiment(s) => write!(f, "unknown experiment {s:?}"),
            Self::SectionMismatch { section, requested } => {
                write!(f, "config is for [{section}] but {requested} was requested")
            }
            Self::UnknownKey(k) => write!(f, "unknown key {k:?}"),
            Self::DuplicateKey(k) => write!(f, "key {k:?} given twice"),
            Self::TypeMismatch { key, expected, got } => write!(f, "key {key:?}: expected {expected}, got {got:?}"),
            Self::MissingSeed => f.write_str("missing field `seed` (required for stochastic experiments)"),
            Self::Exclusive(a, b) => write!(f, "fields {a:?} and {b:?} are mutually exclusive"),
            Self::NeedsOneOf(a, b) => write!(f, "one of {a:?} or {b:?} is required"),
        }
    }
}

/// A validated experiment configuration with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Every declared parameter that has a value, sorted by name.
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn parse_list<T: std::str::FromStr>(raw: &str) -> Option<Vec<T>> {
    let inner = raw.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

fn parse_real(raw: &str) -> Option<f64> {
    match raw {
        "inf" | "+inf" => Some(f64::INFINITY),
        _ => raw.parse().ok().filter(|v: &f64| v.is_finite()),
    }
}

fn parse_value(kind: ParamKind, raw: &str) -> Option<Value> {
    match kind {
        ParamKind::Int => raw.parse().ok().map(Value::Int),
        ParamKind::Real => parse_real(raw).map(Value::Real),
        ParamKind::IntList => parse_list(raw).map(Value::IntList),
        ParamKind::RealList => {
            let items: Option<Vec<String>> = parse_list(raw);
            items.and_then(|v| v.iter().map(|s| parse_real(s)).collect::<Option<Vec<f64>>>()).map(Value::RealList)
        }
        ParamKind::Bool => raw.parse().ok().map(Value::Bool),
        ParamKind::Choice(options) => options.contains(&raw).then(|| Value::Text(raw.to_string())),
    }
}

pub(crate) fn kind_name(kind: ParamKind) -> String {
    match kind {
        ParamKind::Int => "integer".into(),
        ParamKind::Real => "real".into(),
        ParamKind::IntList => "integer list".into(),
        ParamKind::RealList => "real list".into(),
        ParamKind::Bool => "true or false".into(),
        ParamKind::Choice(o) => format!("one of {}", o.join("|")),
    }
}

impl ExperimentConfig {
    /// The experiment's defaults with no file.
    pub fn defaults(experiment: &str) -> Result<Self, Vec<ConfigError>> {
        validate_config_str(&format!("[{experiment}]\n"), None, true)
    }

    pub fn spec(&self) -> &'static ExperimentSpec {
        lookup(&self.experiment).expect("validated experiment name")
    }
}

/// Parse and check a config file, reporting every problem found.
pub fn validate_config(path: &Path) -> Result<ExperimentConfig, Vec<ConfigError>> {
    let text = std::fs::read_to_string(path).map_err(|e| vec![ConfigError::Io(e.to_string())])?;
    validate_config_str(&text, None, false)
}

/// As [`validate_config`] on text. `requested` is the experiment named on
/// the command line; `seed_later` skips the seed check when the seed will be
/// supplied separately.
pub fn validate_config_str(
    text: &str,
    requested: Option<&str>,
    seed_later: bool,
) -> Result<ExperimentConfig, Vec<ConfigError>> {
    let mut errors = Vec::new();
    let mut section: Option<String> = None;
    let mut raw: Vec<(String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            match section {
                None => section = Some(name.trim().to_string()),
                Some(_) => errors.push(ConfigError::ExtraSection(name.trim().to_string())),
            }
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) if section.is_some() && !k.trim().is_empty() => raw.push((k.trim().into(), v.trim().into())),
            Some(_) if section.is_none() => errors.push(ConfigError::MissingSection),
            _ => errors.push(ConfigError::Syntax { line: idx + 1, text: line.to_string() }),
        }
    }
    let Some(name) = section else {
        errors.push(ConfigError::MissingSection);
        errors.dedup();
        return Err(errors);
    };
    if let Some(req) = requested {
        if req != name {
            errors.push(ConfigError::SectionMismatch { section: name.clone(), requested: req.to_string() });
        }
    }
    let Some(spec) = lookup(&name) else {
        errors.push(ConfigError::UnknownExperiment(name));
        return Err(errors);
    };
    let mut cfg = ExperimentConfig {
        experiment: name,
        params: BTreeMap::new(),
        seed: None,
        trials: None,
        output: None,
        format: Format::Csv,
    };
    let mut seen = std::collections::BTreeSet::new();
    for (key, value) in raw {
        if !seen.insert(key.clone()) {
            errors.push(ConfigError::DuplicateKey(key));
            continue;
        }
        let mismatch = |expected: &str| ConfigError::TypeMismatch { key: key.clone(), expected: expected.into(), got: value.clone() };
        match key.as_str() {
            "seed" => match value.parse() {
                Ok(s) => cfg.seed = Some(s),
                Err(_) => errors.push(mismatch("non-negative integer")),
            },
            "trials" if spec.uses_trials() => match value.parse() {
                Ok(t) if t > 0 => cfg.trials = Some(t),
                _ => errors.push(mismatch("positive integer")),
            },
            "output" => cfg.output = Some(PathBuf::from(&value)),
            "format" => match value.parse() {
                Ok(f) => cfg.format = f,
                Err(_) => errors.push(mismatch("csv or json")),
            },
            _ => match spec.params.iter().find(|p| p.name == key) {
                None => errors.push(ConfigError::UnknownKey(key)),
                Some(p) => match parse_value(p.kind, &value) {
                    Some(v) => {
                        cfg.params.insert(key, v);
                    }
                    None => errors.push(mismatch(&kind_name(p.kind))),
                },
            },
        }
    }
    for &(a, b) in spec.exclusive {
        match (cfg.params.contains_key(a), cfg.params.contains_key(b)) {
            (true, true) => errors.push(ConfigError::Exclusive(a.into(), b.into())),
            (false, false) => errors.push(ConfigError::NeedsOneOf(a.into(), b.into())),
            _ => {}
        }
    }
    for p in spec.params {
        if let (false, Some(default)) = (cfg.params.contains_key(p.name), p.default) {
            let v = parse_value(p.kind, default).expect("registry defaults parse");
            cfg.params.insert(p.name.to_string(), v);
        }
    }
    if spec.uses_trials() && cfg.trials.is_none() {
        cfg.trials = spec.default_trials;
    }
    if spec.stochastic && cfg.seed.is_none() && !seed_later {
        errors.push(ConfigError::MissingSeed);
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(errors)
    }
}
