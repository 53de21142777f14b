//! Graph arguments, configuration words and budget settings.

use std::path::Path;

use fsgraph::graph::{make_named, GraphJson};
use fsgraph::markov::RngAlgorithm;
use fsgraph::{Configuration, Family, Limits, SimpleGraph};

use crate::CliError;

/// Reads a graph argument.
///
/// An existing file wins: JSON when its first non-blank byte is `{`, the `n` / `u v` text form
/// otherwise. Anything else must be `family` or `family:p1,p2,...`.
pub fn graph(arg: &str) -> Result<SimpleGraph, CliError> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return graph_text(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")));
    }
    let (name, params) = arg.split_once(':').unwrap_or((arg, ""));
    let family = Family::parse(name)
        .ok_or_else(|| CliError::Input(format!("`{arg}` is neither a file nor a graph family")))?;
    let params = params
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input(format!("bad parameters in `{arg}`")))?;
    Ok(make_named(family, &params)?)
}

pub fn graph_text(text: &str) -> Result<SimpleGraph, String> {
    if text.trim_start().starts_with('{') {
        let j: GraphJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        SimpleGraph::from_json(&j).map_err(|e| e.to_string())
    } else {
        SimpleGraph::from_text(text).map_err(|e| e.to_string())
    }
}

pub fn configuration(word: &str, n: usize) -> Result<Configuration, CliError> {
    let c = Configuration::parse_word(word)?;
    if c.len() != n {
        return Err(CliError::Input(format!("configuration `{word}` has length {} but n = {n}", c.len())));
    }
    Ok(c)
}

/// Applies `key=value` lines; blank lines and `#` comments are skipped.
pub fn apply_config(limits: &mut Limits, text: &str, origin: &str) -> Result<(), CliError> {
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("{origin}:{}: expected key=value", i + 1)))?;
        set(limits, k.trim(), v.trim().trim_matches('"'))
            .map_err(|e| CliError::Input(format!("{origin}:{}: {e}", i + 1)))?;
    }
    Ok(())
}

pub fn set(limits: &mut Limits, key: &str, value: &str) -> Result<(), CliError> {
    if key == "rng" {
        RngAlgorithm::parse(value)?;
        return Ok(());
    }
    Ok(limits.set(key, value)?)
}

/// `FSGRAPH_BUDGET`: a bare number caps `max_states`, otherwise comma-separated `key=value`.
pub fn apply_env_budget(limits: &mut Limits, value: &str) -> Result<(), CliError> {
    let value = value.trim();
    if !value.contains('=') {
        return set(limits, "max_states", value).map_err(|e| CliError::Input(format!("FSGRAPH_BUDGET: {e}")));
    }
    apply_config(limits, &value.replace(',', "\n"), "FSGRAPH_BUDGET")
}
