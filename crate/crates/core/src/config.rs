//! JSON run configuration.
//!
//! ```json
//! {
//!   "population": { "n_agents": 10000, "seed": 42 },
//!   "policy": { "preset": "s4_hybrid" },
//!   "simulation": { "horizon_months": 96, "shock_std_dev": 0.01, "shock_seed": 7 },
//!   "output": { "directory": "out", "formats": ["csv", "json", "svg"] }
//! }
//! ```
//!
//! Every section and field is optional. `policy` takes either a `preset`
//! or explicit `inflation` / `dissolve_curve` / `age_curve` /
//! `initial_supply` fields, never both.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::PopulationConfig;
use crate::scenarios::{
    preset, PolicyConfig, Scenario, Seeds, SharedSettings, DEFAULT_HORIZON_MONTHS,
    DEFAULT_SHOCK_STD_DEV,
};
use crate::tokenomics::{AgeCurve, DissolveCurve, InflationPolicy, GENESIS_SUPPLY};

pub const DEFAULT_PRESET: &str = "benchmark";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub population: PopulationConfig,
    pub policy: PolicySection,
    pub simulation: SimulationSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolicySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inflation: Option<InflationPolicy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dissolve_curve: Option<DissolveCurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub age_curve: Option<AgeCurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_supply: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSection {
    pub horizon_months: u32,
    pub shock_std_dev: f64,
    pub shock_seed: u64,
}

impl Default for SimulationSection {
    fn default() -> Self {
        Self {
            horizon_months: DEFAULT_HORIZON_MONTHS,
            shock_std_dev: DEFAULT_SHOCK_STD_DEV,
            shock_seed: Seeds::default().shocks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(Error::config(
                "output.formats",
                format!("unknown format `{other}` (expected csv, json, or svg)"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub directory: PathBuf,
    pub formats: BTreeSet<OutputFormat>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("output"),
            formats: [OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg].into(),
        }
    }
}

impl PolicySection {
    pub fn has_explicit_fields(&self) -> bool {
        self.inflation.is_some()
            || self.dissolve_curve.is_some()
            || self.age_curve.is_some()
            || self.initial_supply.is_some()
    }

    /// The scenario this section describes. Explicit fields fall back to
    /// the benchmark values when omitted.
    pub fn scenario(&self) -> Result<Scenario> {
        match &self.preset {
            Some(_) if self.has_explicit_fields() => Err(Error::config(
                "policy.preset",
                "a preset cannot be combined with explicit policy fields",
            )),
            Some(name) => Scenario::preset(name).map_err(|e| Error::config("policy.preset", e.to_string())),
            None if !self.has_explicit_fields() => Scenario::preset(DEFAULT_PRESET),
            None => {
                let base = preset(DEFAULT_PRESET)?;
                let policy = PolicyConfig::new(
                    self.inflation.unwrap_or(base.inflation),
                    self.dissolve_curve.unwrap_or(base.multipliers.dissolve_curve),
                    self.age_curve.unwrap_or(base.multipliers.age_curve),
                );
                let policy = PolicyConfig {
                    initial_supply: self.initial_supply.unwrap_or(GENESIS_SUPPLY),
                    ..policy
                };
                Ok(Scenario {
                    name: "custom".into(),
                    policy,
                })
            }
        }
    }
}

impl RunConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(if path == "." { "<root>".into() } else { path }, e.inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::config("<config>", format!("cannot read {}: {e}", path.display()))
        })?;
        let cfg = Self::from_json(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.population.validate()?;
        let scenario = self.policy.scenario()?;
        if let Some(s) = self.policy.initial_supply {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::config("policy.initial_supply", format!("must be positive, got {s}")));
            }
        }
        self.shared().apply(&scenario.policy).validate()
    }

    pub fn seeds(&self) -> Seeds {
        Seeds {
            population: self.population.seed,
            shocks: self.simulation.shock_seed,
        }
    }

    pub fn shared(&self) -> SharedSettings {
        SharedSettings {
            population: self.population.clone(),
            seeds: self.seeds(),
            horizon: self.simulation.horizon_months,
            shock_std_dev: self.simulation.shock_std_dev,
        }
    }
}
