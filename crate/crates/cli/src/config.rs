//! Experiment configuration: a TOML (or JSON) document describing the
//! network, the topology, the Monte Carlo run and the outputs.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use ncsim::analysis::Dh2Prefactor;
use ncsim::channel::Topology;
use ncsim::demod::DemodKind;
use ncsim::gf2code::NetworkCode;
use ncsim::montecarlo::{McConfig, TrialMode};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub network: NetworkBlock,
    pub topology: TopologyBlock,
    #[serde(default)]
    pub mc: McBlock,
    #[serde(default)]
    pub analysis: AnalysisBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkBlock {
    pub n_sources: usize,
    pub n_relays: usize,
    /// Relay encoding vectors as 0/1 rows, one row per relay. Optional only
    /// for the `design` command, which searches over all of them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<Vec<Vec<u8>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iid_sigma_sq: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_sq_sd: Option<Vec<f64>>,
    /// Indexed `[source][relay]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_sq_sr: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_sq_rd: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<PositionsBlock>,
    #[serde(default)]
    pub sr_mode: SrMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionsBlock {
    pub sources: Vec<[f64; 2]>,
    pub relays: Vec<[f64; 2]>,
    pub destination: [f64; 2],
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SrMode {
    #[default]
    Realistic,
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum McMode {
    #[default]
    Bsc,
    Waveform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DemodOpt {
    #[default]
    Ml,
    Mdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FormatOpt {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dh2Opt {
    #[default]
    ThreeEighths,
    Half,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct McBlock {
    pub seed: u64,
    pub max_trials: u64,
    pub target_errors: u64,
    pub mode: McMode,
    pub demod: DemodOpt,
    pub snr_grid_db: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl Default for McBlock {
    fn default() -> Self {
        Self {
            seed: 1,
            max_trials: 100_000_000,
            target_errors: 400,
            mode: McMode::Bsc,
            demod: DemodOpt::Ml,
            snr_grid_db: Vec::new(),
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisBlock {
    pub dh2_prefactor: Dh2Opt,
    /// Fading samples behind the semi-analytic union bound.
    pub semi_analytic_samples: u64,
}

impl Default for AnalysisBlock {
    fn default() -> Self {
        Self { dh2_prefactor: Dh2Opt::ThreeEighths, semi_analytic_samples: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<FormatOpt>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        match path.extension().and_then(|s| s.to_str()) {
            Some("json") => Self::from_json(&text),
            _ => Self::from_toml(&text),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.network.n_sources == 0 {
            return Err(CliError::Config("network needs at least one source".into()));
        }
        if let Some(rows) = &self.network.encoding {
            if rows.len() != self.network.n_relays {
                return Err(CliError::Config(format!(
                    "encoding has {} rows, network declares {} relays",
                    rows.len(),
                    self.network.n_relays
                )));
            }
            if rows.iter().any(|r| r.len() != self.network.n_sources) {
                return Err(CliError::Config(format!(
                    "every encoding row must have {} entries",
                    self.network.n_sources
                )));
            }
        }
        let t = &self.topology;
        let tables = t.sigma_sq_sd.is_some() || t.sigma_sq_sr.is_some() || t.sigma_sq_rd.is_some();
        let modes =
            [t.iid_sigma_sq.is_some(), tables, t.positions.is_some()].iter().filter(|x| **x).count();
        if modes != 1 {
            return Err(CliError::Config(
                "topology must specify exactly one of iid_sigma_sq, per-link variance tables, or positions".into(),
            ));
        }
        if tables && (t.sigma_sq_sd.is_none() || t.sigma_sq_sr.is_none() || t.sigma_sq_rd.is_none())
        {
            return Err(CliError::Config(
                "per-link topology needs sigma_sq_sd, sigma_sq_sr and sigma_sq_rd together".into(),
            ));
        }
        Ok(())
    }

    /// The network code; requires an encoding matrix.
    pub fn build_code(&self) -> Result<NetworkCode, CliError> {
        let rows = self
            .network
            .encoding
            .as_ref()
            .ok_or_else(|| CliError::Config("this command needs network.encoding".into()))?;
        Ok(NetworkCode::from_rows(self.network.n_sources, rows)?)
    }

    pub fn build_topology(&self) -> Result<Topology, CliError> {
        let t = &self.topology;
        let top = if let Some(sigma) = t.iid_sigma_sq {
            Topology::iid(self.network.n_sources, self.network.n_relays, sigma)?
        } else if let Some(p) = &t.positions {
            if p.sources.len() != self.network.n_sources || p.relays.len() != self.network.n_relays {
                return Err(CliError::Config(
                    "positions must list every source and relay exactly once".into(),
                ));
            }
            Topology::from_positions(&p.sources, &p.relays, p.destination, p.alpha)?
        } else {
            Topology::from_links(
                t.sigma_sq_sd.clone().unwrap(),
                t.sigma_sq_sr.clone().unwrap(),
                t.sigma_sq_rd.clone().unwrap(),
            )?
        };
        if top.n_sources() != self.network.n_sources || top.n_relays() != self.network.n_relays {
            return Err(CliError::Config("topology dimensions do not match the network".into()));
        }
        Ok(top.with_ideal_sr(t.sr_mode == SrMode::Ideal))
    }

    pub fn mc_config(&self) -> McConfig {
        McConfig {
            seed: self.mc.seed,
            max_trials: self.mc.max_trials,
            target_errors: self.mc.target_errors,
            mode: match self.mc.mode {
                McMode::Bsc => TrialMode::Bsc,
                McMode::Waveform => TrialMode::Waveform,
            },
            demod: self.demod_kind(),
            snr_grid_db: self.mc.snr_grid_db.clone(),
            workers: self.mc.workers,
        }
    }

    pub fn demod_kind(&self) -> DemodKind {
        match self.mc.demod {
            DemodOpt::Ml => DemodKind::Ml,
            DemodOpt::Mdd => DemodKind::Mdd,
        }
    }

    pub fn dh2_prefactor(&self) -> Dh2Prefactor {
        match self.analysis.dh2_prefactor {
            Dh2Opt::ThreeEighths => Dh2Prefactor::ThreeEighths,
            Dh2Opt::Half => Dh2Prefactor::Half,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[network]
n_sources = 2
n_relays = 2
encoding = [[1, 1], [1, 1]]

[topology]
iid_sigma_sq = 1.0

[mc]
snr_grid_db = [0.0, 5.0]
"#;

    #[test]
    fn round_trip_is_identity() {
        let cfg = ExperimentConfig::from_toml(MINIMAL).unwrap();
        let again = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn defaults_apply() {
        let cfg = ExperimentConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(cfg.mc.target_errors, 400);
        assert_eq!(cfg.topology.sr_mode, SrMode::Realistic);
        assert_eq!(cfg.analysis.dh2_prefactor, Dh2Opt::ThreeEighths);
    }

    #[test]
    fn encoding_dimensions_are_checked() {
        let bad = MINIMAL.replace("[[1, 1], [1, 1]]", "[[1, 1]]");
        assert!(matches!(ExperimentConfig::from_toml(&bad), Err(CliError::Config(_))));
        let bad = MINIMAL.replace("[[1, 1], [1, 1]]", "[[1, 1, 0], [1, 1, 0]]");
        assert!(matches!(ExperimentConfig::from_toml(&bad), Err(CliError::Config(_))));
    }

    #[test]
    fn topology_must_be_unambiguous() {
        let doubled = MINIMAL.replace(
            "iid_sigma_sq = 1.0",
            "iid_sigma_sq = 1.0\nsigma_sq_sd = [1.0, 1.0]\nsigma_sq_sr = [[1.0, 1.0], [1.0, 1.0]]\nsigma_sq_rd = [1.0, 1.0]",
        );
        assert!(ExperimentConfig::from_toml(&doubled).is_err());
    }

    #[test]
    fn json_alternative_parses() {
        let cfg = ExperimentConfig::from_toml(MINIMAL).unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&json).unwrap(), cfg);
    }
}
