//! Named experiment presets, shipped as embedded TOML data files.

use crate::config::{ExperimentConfig, SrMode};
use crate::CliError;

macro_rules! preset_table {
    ($($name:literal),+ $(,)?) => {
        &[$(($name, include_str!(concat!("../presets/", $name, ".toml")))),+]
    };
}

/// `(canonical name, embedded TOML)` pairs.
pub const PRESETS: &[(&str, &str)] = preset_table![
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
    "fig11",
    "fig12",
    "table1-2s2r-nc1",
    "table1-2s2r-nc2",
    "table1-2s2r-nc3",
    "table1-2s2r-nc4",
    "table1-3s3r-nc1",
    "table1-3s3r-nc2",
    "table1-3s3r-nc3",
    "table1-2s5r-nc1",
    "table1-2s5r-nc2",
    "table1-2s5r-nc3",
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

/// Resolves a preset by name. Names are case-insensitive and may use spaces,
/// hyphens or underscores; a trailing `realistic` or `ideal` token overrides
/// the source-to-relay mode (e.g. `table1 2s2r nc3 ideal`).
pub fn resolve(name: &str) -> Result<ExperimentConfig, CliError> {
    let mut tokens: Vec<String> = name
        .to_ascii_lowercase()
        .split(|c: char| c == ' ' || c == '-' || c == '_')
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect();
    let sr_override = match tokens.last().map(String::as_str) {
        Some("realistic") => {
            tokens.pop();
            Some(SrMode::Realistic)
        }
        Some("ideal") => {
            tokens.pop();
            Some(SrMode::Ideal)
        }
        _ => None,
    };
    let key = tokens.join("-");
    let text = PRESETS
        .iter()
        .find(|(n, _)| **n == key)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            CliError::Config(format!(
                "unknown preset '{name}'; available: {}",
                preset_names().join(", ")
            ))
        })?;
    let mut cfg = ExperimentConfig::from_toml(text)?;
    if let Some(sr) = sr_override {
        cfg.topology.sr_mode = sr;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses() {
        for (name, _) in PRESETS {
            let cfg = resolve(name).unwrap();
            assert!(cfg.network.encoding.is_some(), "{name}");
            cfg.build_code().unwrap();
            cfg.build_topology().unwrap();
        }
    }

    #[test]
    fn flexible_names_resolve() {
        assert_eq!(resolve("FIG1").unwrap(), resolve("fig1").unwrap());
        let spaced = resolve("table1 2s2r nc3").unwrap();
        assert_eq!(spaced, resolve("table1-2s2r-nc3").unwrap());
        let ideal = resolve("table1 2s2r nc3 ideal").unwrap();
        assert_eq!(ideal.topology.sr_mode, SrMode::Ideal);
        assert!(resolve("fig99").is_err());
    }
}
