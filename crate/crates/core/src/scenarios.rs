//! Policy presets and the paired-seed comparative runner.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{run_simulation, ShockSeries};
use crate::error::{Error, Result};
use crate::metrics_io::MetricsFrame;
use crate::population::{sample_population, AgentProfile, PopulationConfig};
use crate::tokenomics::{
    AgeCurve, DissolveCurve, InflationPolicy, MultiplierPolicy, GENESIS_SUPPLY,
};

pub const PRESET_NAMES: [&str; 5] = ["benchmark", "s1_inflation", "s2_dissolve", "s3_age", "s4_hybrid"];

pub const DEFAULT_HORIZON_MONTHS: u32 = 96;
pub const DEFAULT_SHOCK_STD_DEV: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub population: u64,
    pub shocks: u64,
}

impl Default for Seeds {
    fn default() -> Self {
        Self {
            population: 42,
            shocks: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyConfig {
    pub inflation: InflationPolicy,
    pub multipliers: MultiplierPolicy,
    pub initial_supply: f64,
    pub horizon: u32,
    pub shock_std_dev: f64,
    pub seeds: Seeds,
}

impl PolicyConfig {
    pub fn new(inflation: InflationPolicy, dissolve_curve: DissolveCurve, age_curve: AgeCurve) -> Self {
        Self {
            inflation,
            multipliers: MultiplierPolicy {
                dissolve_curve,
                age_curve,
            },
            initial_supply: GENESIS_SUPPLY,
            horizon: DEFAULT_HORIZON_MONTHS,
            shock_std_dev: DEFAULT_SHOCK_STD_DEV,
            seeds: Seeds::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_supply > 0.0) || !self.initial_supply.is_finite() {
            return Err(Error::config(
                "policy.initial_supply",
                format!("must be positive, got {}", self.initial_supply),
            ));
        }
        if self.horizon == 0 {
            return Err(Error::config("simulation.horizon_months", "must be at least 1"));
        }
        if !(self.shock_std_dev >= 0.0) || !self.shock_std_dev.is_finite() {
            return Err(Error::config(
                "simulation.shock_std_dev",
                format!("must be non-negative, got {}", self.shock_std_dev),
            ));
        }
        Ok(())
    }
}

/// The benchmark and the four comparative policy mixes.
pub fn preset(name: &str) -> Result<PolicyConfig> {
    use AgeCurve as A;
    use DissolveCurve as D;
    use InflationPolicy as I;
    let (inflation, dissolve, age) = match name {
        "benchmark" => (I::ConstantFivePercent, D::FixedAtSixMonthValue, A::Disabled),
        "s1_inflation" => (I::DynamicQuadratic, D::FixedAtSixMonthValue, A::Disabled),
        "s2_dissolve" => (I::ConstantFivePercent, D::FullLinearCurve, A::Disabled),
        "s3_age" => (I::ConstantFivePercent, D::FixedAtSixMonthValue, A::FullLinearCurve),
        "s4_hybrid" => (I::DynamicQuadratic, D::FullLinearCurve, A::FullLinearCurve),
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
                valid: PRESET_NAMES.join(", "),
            })
        }
    };
    Ok(PolicyConfig::new(inflation, dissolve, age))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub policy: PolicyConfig,
}

impl Scenario {
    pub fn preset(name: &str) -> Result<Self> {
        Ok(Self {
            name: name.to_string(),
            policy: preset(name)?,
        })
    }
}

/// Settings every scenario of a comparative run shares.
#[derive(Debug, Clone, PartialEq)]
pub struct SharedSettings {
    pub population: PopulationConfig,
    pub seeds: Seeds,
    pub horizon: u32,
    pub shock_std_dev: f64,
}

impl Default for SharedSettings {
    fn default() -> Self {
        Self {
            population: PopulationConfig::default(),
            seeds: Seeds::default(),
            horizon: DEFAULT_HORIZON_MONTHS,
            shock_std_dev: DEFAULT_SHOCK_STD_DEV,
        }
    }
}

impl SharedSettings {
    pub fn population(&self) -> Result<Vec<AgentProfile>> {
        sample_population(&PopulationConfig {
            seed: self.seeds.population,
            ..self.population.clone()
        })
    }

    pub fn shocks(&self) -> Result<ShockSeries> {
        ShockSeries::generate(self.horizon, self.shock_std_dev, self.seeds.shocks)
    }

    /// `policy` with the shared horizon, shock scale, and seeds imposed.
    pub fn apply(&self, policy: &PolicyConfig) -> PolicyConfig {
        PolicyConfig {
            horizon: self.horizon,
            shock_std_dev: self.shock_std_dev,
            seeds: self.seeds,
            ..policy.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub mean_staking_ratio: f64,
    /// Standard deviation of month-over-month staking-ratio changes.
    pub staking_ratio_volatility: f64,
    pub final_governor_count: u32,
    pub final_supply: f64,
}

impl ScenarioSummary {
    pub fn from_frames(frames: &[MetricsFrame]) -> Self {
        let ratios: Vec<f64> = frames.iter().map(MetricsFrame::staking_ratio).collect();
        let changes: Vec<f64> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
        let last = frames.last();
        Self {
            mean_staking_ratio: mean(&ratios),
            staking_ratio_volatility: std_dev(&changes),
            final_governor_count: last.map_or(0, |f| f.governor_count),
            final_supply: last.map_or(0.0, |f| f.total_supply),
        }
    }
}

/// Arithmetic mean; 0 for an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Population standard deviation; 0 for fewer than two values.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub name: String,
    pub policy: PolicyConfig,
    pub frames: Vec<MetricsFrame>,
    pub summary: ScenarioSummary,
}

/// Runs each scenario against one shared population and one shared shock
/// series. Results come back in input order.
pub fn run_comparative(scenarios: &[Scenario], shared: &SharedSettings) -> Result<Vec<ScenarioResult>> {
    if scenarios.is_empty() {
        return Err(Error::config("presets", "at least one scenario is required"));
    }
    let profiles = shared.population()?;
    let shocks = shared.shocks()?;
    run_with(scenarios, shared, &profiles, &shocks)
}

/// Like [`run_comparative`], with the population and shocks supplied.
pub fn run_with(
    scenarios: &[Scenario],
    shared: &SharedSettings,
    profiles: &[AgentProfile],
    shocks: &ShockSeries,
) -> Result<Vec<ScenarioResult>> {
    scenarios
        .par_iter()
        .map(|s| {
            let policy = shared.apply(&s.policy);
            let frames = run_simulation(profiles, &policy, shocks).map_err(|e| Error::Scenario {
                scenario: s.name.clone(),
                source: Box::new(e),
            })?;
            Ok(ScenarioResult {
                name: s.name.clone(),
                summary: ScenarioSummary::from_frames(&frames),
                policy,
                frames,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokenomics::{dissolve_delay_multiplier, yearly_inflation_rate};

    fn small() -> SharedSettings {
        SharedSettings {
            population: PopulationConfig {
                n_agents: 300,
                ..Default::default()
            },
            horizon: 36,
            ..Default::default()
        }
    }

    #[test]
    fn preset_flags() {
        let b = preset("benchmark").unwrap();
        assert_eq!(yearly_inflation_rate(3, b.inflation), 0.05);
        let s1 = preset("s1_inflation").unwrap();
        assert_eq!(yearly_inflation_rate(0, s1.inflation), 0.10);
        let s2 = preset("s2_dissolve").unwrap();
        assert_eq!(dissolve_delay_multiplier(96.0, s2.multipliers).unwrap(), 2.0);
        let s3 = preset("s3_age").unwrap();
        assert_eq!(s3.multipliers.age_curve, AgeCurve::FullLinearCurve);
        assert_eq!(s3.multipliers.dissolve_curve, DissolveCurve::FixedAtSixMonthValue);
        let s4 = preset("s4_hybrid").unwrap();
        assert_eq!(s4.inflation, InflationPolicy::DynamicQuadratic);
        assert_eq!(s4.multipliers, MultiplierPolicy::FULL);
        assert_eq!(b.initial_supply, 469e6);
        assert_eq!(b.horizon, 96);
    }

    #[test]
    fn unknown_preset_lists_valid_names() {
        match preset("s9") {
            Err(e @ Error::UnknownPreset { .. }) => {
                let msg = e.to_string();
                for name in PRESET_NAMES {
                    assert!(msg.contains(name));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_scenario_matches_direct_run() {
        let shared = small();
        let results = run_comparative(&[Scenario::preset("benchmark").unwrap()], &shared).unwrap();
        assert_eq!(results.len(), 1);
        let direct = run_simulation(
            &shared.population().unwrap(),
            &shared.apply(&preset("benchmark").unwrap()),
            &shared.shocks().unwrap(),
        )
        .unwrap();
        assert_eq!(results[0].frames, direct);
    }

    #[test]
    fn paired_runs_share_genesis() {
        let scenarios: Vec<_> = PRESET_NAMES.iter().map(|n| Scenario::preset(n).unwrap()).collect();
        let results = run_comparative(&scenarios, &small()).unwrap();
        let names: Vec<_> = results.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, PRESET_NAMES);
        for r in &results[1..] {
            assert_eq!(r.frames[0].total_tokens(), results[0].frames[0].total_tokens());
            assert_eq!(r.frames[0].governor_count, results[0].frames[0].governor_count);
        }
    }

    #[test]
    fn empty_scenario_list_rejected() {
        assert!(run_comparative(&[], &small()).is_err());
    }

    #[test]
    fn failing_scenario_is_tagged() {
        let mut bad = Scenario::preset("benchmark").unwrap();
        bad.name = "broken".into();
        bad.policy.initial_supply = -1.0;
        match run_comparative(&[bad], &small()) {
            Err(Error::Scenario { scenario, .. }) => assert_eq!(scenario, "broken"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn summary_recomputes_from_frames() {
        let results = run_comparative(&[Scenario::preset("s2_dissolve").unwrap()], &small()).unwrap();
        let r = &results[0];
        assert_eq!(r.summary, ScenarioSummary::from_frames(&r.frames));
        let last = r.frames.last().unwrap();
        assert_eq!(r.summary.final_supply, last.total_supply);
        assert_eq!(r.summary.final_governor_count, last.governor_count);
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(mean(&[]), 0.0);
        assert_eq!(std_dev(&[1.0]), 0.0);
        assert_eq!(std_dev(&[1.0, 3.0]), 1.0);
    }
}
