use std::fmt::Write as _;

use crate::error::{invalid, Result};

use super::channel::{make_channel, ChannelKind, GtChannel};
use super::design::TestDesign;

/// One row per test: `test,outcome,x0,…,x{N-1}`. The outcome column is
/// empty when no outcomes are given.
pub fn design_to_csv(design: &TestDesign, outcomes: Option<&[usize]>) -> String {
    let mut out = String::from("test,outcome");
    for i in 0..design.items() {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for t in 0..design.tests() {
        let y = outcomes.map(|o| o[t].to_string()).unwrap_or_default();
        let _ = write!(out, "{t},{y}");
        for &b in design.pool(t) {
            out.push_str(if b { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

pub fn design_from_csv(text: &str) -> Result<(TestDesign, Option<Vec<usize>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| invalid("empty design file"))?;
    let items = header.split(',').count().checked_sub(2).ok_or_else(|| invalid("design header too short"))?;
    let mut pools = Vec::new();
    let mut outcomes = Vec::new();
    for (row, line) in lines.filter(|l| !l.is_empty()).enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != items + 2 {
            return Err(invalid(format!("design row {row} has {} fields", fields.len())));
        }
        if !fields[1].is_empty() {
            outcomes.push(fields[1].parse::<usize>().map_err(|e| invalid(format!("row {row}: {e}")))?);
        }
        let pool = fields[2..]
            .iter()
            .map(|f| match *f {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(invalid(format!("row {row}: entry {other:?} is not a bit"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        pools.push(pool);
    }
    let outcomes = match outcomes.len() {
        0 => None,
        n if n == pools.len() => Some(outcomes),
        _ => return Err(invalid("outcome column is only partly filled")),
    };
    Ok((TestDesign::from_pools(items, pools)?, outcomes))
}

/// `kind = …` followed by one `name = value` line per parameter.
pub fn channel_to_spec(channel: &GtChannel) -> String {
    let params = match channel.kind() {
        ChannelKind::Deterministic | ChannelKind::Symmetric => String::new(),
        ChannelKind::Addition { q } => format!("q = {q}\n"),
        ChannelKind::Dilution { u } => format!("u = {u}\n"),
        ChannelKind::AdditionDilution { q, u } => format!("q = {q}\nu = {u}\n"),
        ChannelKind::Erasure { eps } => format!("eps = {eps}\n"),
        ChannelKind::DilutionThreshold { theta } => format!("theta = {theta}\n"),
        ChannelKind::Counting { max_count } => format!("max_count = {max_count}\n"),
        ChannelKind::Overflow { limit } => format!("limit = {limit}\n"),
        ChannelKind::FieldCancellation { q } => format!("q = {q}\n"),
    };
    format!("kind = {}\n{params}", channel.name())
}

pub fn channel_from_spec(text: &str) -> Result<GtChannel> {
    let mut kind = None;
    let mut params = std::collections::BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (k, v) = line.split_once('=').ok_or_else(|| invalid(format!("expected key = value, got {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "kind" {
            kind = Some(v.to_string());
        } else if params.insert(k.to_string(), v.to_string()).is_some() {
            return Err(invalid(format!("duplicate key {k}")));
        }
    }
    let kind = kind.ok_or_else(|| invalid("channel spec needs a kind"))?;
    let mut take = |name: &str| params.remove(name).ok_or_else(|| invalid(format!("{kind} needs {name}")));
    let real = |s: String| s.parse::<f64>().map_err(|e| invalid(format!("{s:?}: {e}")));
    let int = |s: String| s.parse::<usize>().map_err(|e| invalid(format!("{s:?}: {e}")));
    let parsed = match kind.as_str() {
        "deterministic" => ChannelKind::Deterministic,
        "symmetric" => ChannelKind::Symmetric,
        "addition" => ChannelKind::Addition { q: real(take("q")?)? },
        "dilution" => ChannelKind::Dilution { u: real(take("u")?)? },
        "addition-dilution" => ChannelKind::AdditionDilution { q: real(take("q")?)?, u: real(take("u")?)? },
        "erasure" => ChannelKind::Erasure { eps: real(take("eps")?)? },
        "dilution-threshold" => ChannelKind::DilutionThreshold { theta: real(take("theta")?)? },
        "counting" => ChannelKind::Counting { max_count: int(take("max_count")?)? },
        "overflow" => ChannelKind::Overflow { limit: int(take("limit")?)? },
        "field-cancellation" => ChannelKind::FieldCancellation { q: int(take("q")?)? as u32 },
        other => return Err(invalid(format!("unknown channel kind {other:?}"))),
    };
    if let Some(extra) = params.keys().next() {
        return Err(invalid(format!("unknown key {extra} for {kind}")));
    }
    make_channel(parsed)
}
