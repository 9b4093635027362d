//! Seeded sampling of agent traits and summary statistics over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewards::AgentId;
use crate::rng::SimRng;
use crate::tokenomics::{MAX_DISSOLVE_DELAY_MONTHS, MIN_DISSOLVE_DELAY_MONTHS};

pub const HISTOGRAM_BINS: usize = 50;

/// Distribution parameters for the agent population.
///
/// Defaults reproduce the reference calibration: 10,000 agents holding
/// about 469M tokens, with a mean staking threshold near 10%.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PopulationConfig {
    pub n_agents: u32,
    pub endowment_mean_log: f64,
    pub endowment_sigma_log: f64,
    pub threshold_k: f64,
    pub threshold_theta: f64,
    pub liq_mean1: f64,
    pub liq_mean2: f64,
    pub liq_std_dev: f64,
    /// Probability of drawing from the short-horizon component.
    pub mixture_weight: f64,
    pub seed: u64,
}

impl Default for PopulationConfig {
    fn default() -> Self {
        Self {
            n_agents: 10_000,
            endowment_mean_log: 10.57,
            endowment_sigma_log: 0.6,
            threshold_k: 1.8,
            threshold_theta: 0.055,
            liq_mean1: 18.0,
            liq_mean2: 96.0,
            liq_std_dev: 5.0,
            mixture_weight: 0.5,
            seed: 42,
        }
    }
}

impl PopulationConfig {
    pub fn validate(&self) -> Result<()> {
        fn positive(field: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive and finite, got {v}")))
            }
        }
        fn finite(field: &str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be finite, got {v}")))
            }
        }
        if self.n_agents == 0 {
            return Err(Error::config("population.n_agents", "must be at least 1"));
        }
        finite("population.endowment_mean_log", self.endowment_mean_log)?;
        positive("population.endowment_sigma_log", self.endowment_sigma_log)?;
        positive("population.threshold_k", self.threshold_k)?;
        positive("population.threshold_theta", self.threshold_theta)?;
        finite("population.liq_mean1", self.liq_mean1)?;
        finite("population.liq_mean2", self.liq_mean2)?;
        positive("population.liq_std_dev", self.liq_std_dev)?;
        if !(0.0..=1.0).contains(&self.mixture_weight) {
            return Err(Error::config(
                "population.mixture_weight",
                format!("must lie in [0, 1], got {}", self.mixture_weight),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentProfile {
    pub agent_id: AgentId,
    pub endowment: f64,
    /// Minimum annualized reward ratio the agent requires to stake.
    pub staking_threshold: f64,
    /// Dissolve delay, in whole months, the agent picks when it stakes.
    pub liquidity_preference: u32,
}

/// Draws `n_agents` profiles. For each agent, in order: endowment,
/// threshold, mixture component, then the preference normal.
pub fn sample_population(config: &PopulationConfig) -> Result<Vec<AgentProfile>> {
    config.validate()?;
    let mut rng = SimRng::new(config.seed);
    let (lo, hi) = (MIN_DISSOLVE_DELAY_MONTHS as f64, MAX_DISSOLVE_DELAY_MONTHS as f64);
    let profiles = (0..config.n_agents)
        .map(|i| {
            let endowment = rng.log_normal(config.endowment_mean_log, config.endowment_sigma_log);
            let staking_threshold = rng.gamma(config.threshold_k, config.threshold_theta);
            let mean = if rng.uniform() < config.mixture_weight {
                config.liq_mean1
            } else {
                config.liq_mean2
            };
            let preference = rng.normal(mean, config.liq_std_dev).clamp(lo, hi).round();
            AgentProfile {
                agent_id: AgentId(i),
                endowment,
                staking_threshold,
                liquidity_preference: preference as u32,
            }
        })
        .collect();
    Ok(profiles)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// Equal-width bins over `[lo, hi]`; the last bin is closed on the right.
    pub fn build(values: impl Iterator<Item = f64>, lo: f64, hi: f64, bins: usize) -> Self {
        let hi = if hi > lo { hi } else { lo + 1.0 };
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        for v in values {
            let idx = (((v - lo) / width).floor().max(0.0) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Self { lo, hi, counts }
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        let w = self.bin_width();
        (self.lo + w * i as f64, self.lo + w * (i + 1) as f64)
    }

    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| {
            let (a, b) = self.bin_edges(i);
            (a, b, c)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSummary {
    pub feature: String,
    pub total: f64,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub histogram: Histogram,
}

impl FeatureSummary {
    fn from_values(feature: &str, values: &[f64], range: Option<(f64, f64)>) -> Self {
        let n = values.len() as f64;
        let total: f64 = values.iter().sum();
        let mean = total / n;
        let std_dev = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = range.unwrap_or((min, max));
        Self {
            feature: feature.to_string(),
            total,
            mean,
            std_dev,
            min,
            max,
            histogram: Histogram::build(values.iter().copied(), lo, hi, HISTOGRAM_BINS),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationSummary {
    pub n_agents: usize,
    pub endowment: FeatureSummary,
    pub staking_threshold: FeatureSummary,
    pub liquidity_preference: FeatureSummary,
}

impl PopulationSummary {
    pub fn features(&self) -> [&FeatureSummary; 3] {
        [&self.endowment, &self.staking_threshold, &self.liquidity_preference]
    }
}

/// Totals, moments, and 50-bin histograms of the three traits. Standard
/// deviations use the population (divide-by-n) form.
pub fn population_summary(profiles: &[AgentProfile]) -> Result<PopulationSummary> {
    if profiles.is_empty() {
        return Err(Error::domain("population size", 0.0, "population is empty"));
    }
    let endowments: Vec<f64> = profiles.iter().map(|p| p.endowment).collect();
    let thresholds: Vec<f64> = profiles.iter().map(|p| p.staking_threshold).collect();
    let prefs: Vec<f64> = profiles.iter().map(|p| p.liquidity_preference as f64).collect();
    let pref_range = (MIN_DISSOLVE_DELAY_MONTHS as f64, MAX_DISSOLVE_DELAY_MONTHS as f64);
    Ok(PopulationSummary {
        n_agents: profiles.len(),
        endowment: FeatureSummary::from_values("endowment", &endowments, None),
        staking_threshold: FeatureSummary::from_values("staking_threshold", &thresholds, None),
        liquidity_preference: FeatureSummary::from_values(
            "liquidity_preference",
            &prefs,
            Some(pref_range),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(id: u32, endowment: f64, threshold: f64, pref: u32) -> AgentProfile {
        AgentProfile {
            agent_id: AgentId(id),
            endowment,
            staking_threshold: threshold,
            liquidity_preference: pref,
        }
    }

    #[test]
    fn reference_calibration() {
        let pop = sample_population(&PopulationConfig::default()).unwrap();
        assert_eq!(pop.len(), 10_000);
        let total: f64 = pop.iter().map(|p| p.endowment).sum();
        assert!((total - 469e6).abs() <= 0.05 * 469e6, "total {total}");
        let mean_t = pop.iter().map(|p| p.staking_threshold).sum::<f64>() / 1e4;
        assert!((mean_t - 0.099).abs() <= 0.0099, "mean threshold {mean_t}");
        assert!(pop.iter().all(|p| (6..=96).contains(&p.liquidity_preference)));
        assert!(pop.iter().all(|p| p.endowment > 0.0 && p.staking_threshold > 0.0));
    }

    #[test]
    fn degenerate_lognormal() {
        let cfg = PopulationConfig {
            n_agents: 1,
            endowment_sigma_log: 1e-9,
            ..Default::default()
        };
        let pop = sample_population(&cfg).unwrap();
        let expected = 10.57f64.exp();
        assert!((pop[0].endowment - expected).abs() / expected < 1e-6);
        assert!((pop[0].endowment - 38_900.0).abs() < 50.0);
    }

    #[test]
    fn seeded_determinism() {
        let cfg = PopulationConfig {
            n_agents: 500,
            ..Default::default()
        };
        assert_eq!(sample_population(&cfg).unwrap(), sample_population(&cfg).unwrap());
        let other = PopulationConfig { seed: 43, ..cfg.clone() };
        assert_ne!(sample_population(&cfg).unwrap(), sample_population(&other).unwrap());
    }

    #[test]
    fn mixture_trough_is_nearly_empty() {
        let pop = sample_population(&PopulationConfig::default()).unwrap();
        let trough = pop
            .iter()
            .filter(|p| (48..=60).contains(&p.liquidity_preference))
            .count();
        assert!((trough as f64) < 0.001 * pop.len() as f64);
    }

    #[test]
    fn mixture_weight_extremes() {
        let short = PopulationConfig { n_agents: 2000, mixture_weight: 1.0, ..Default::default() };
        assert!(sample_population(&short).unwrap().iter().all(|p| p.liquidity_preference < 48));
        let long = PopulationConfig { mixture_weight: 0.0, ..short };
        assert!(sample_population(&long).unwrap().iter().all(|p| p.liquidity_preference > 60));
    }

    #[test]
    fn invalid_config_names_field() {
        let cases: Vec<(PopulationConfig, &str)> = vec![
            (PopulationConfig { n_agents: 0, ..Default::default() }, "population.n_agents"),
            (PopulationConfig { endowment_sigma_log: 0.0, ..Default::default() }, "population.endowment_sigma_log"),
            (PopulationConfig { threshold_k: -1.0, ..Default::default() }, "population.threshold_k"),
            (PopulationConfig { threshold_theta: 0.0, ..Default::default() }, "population.threshold_theta"),
            (PopulationConfig { liq_std_dev: f64::NAN, ..Default::default() }, "population.liq_std_dev"),
            (PopulationConfig { mixture_weight: 1.5, ..Default::default() }, "population.mixture_weight"),
        ];
        for (cfg, field) in cases {
            match sample_population(&cfg) {
                Err(Error::Config { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected config error for {field}, got {other:?}"),
            }
        }
    }

    #[test]
    fn summary_single_agent() {
        let s = population_summary(&[profile(0, 100.0, 0.1, 12)]).unwrap();
        assert_eq!(s.endowment.total, 100.0);
        assert_eq!(s.staking_threshold.total, 0.1);
        assert_eq!(s.liquidity_preference.total, 12.0);
        for f in s.features() {
            assert_eq!(f.std_dev, 0.0);
            assert_eq!(f.histogram.counts.len(), HISTOGRAM_BINS);
            assert_eq!(f.histogram.counts.iter().sum::<u64>(), 1);
        }
    }

    #[test]
    fn summary_mean() {
        let s = population_summary(&[profile(0, 100.0, 0.1, 12), profile(1, 300.0, 0.2, 90)]).unwrap();
        assert_eq!(s.endowment.mean, 200.0);
        assert_eq!(s.endowment.std_dev, 100.0);
    }

    #[test]
    fn summary_empty_is_error() {
        assert!(matches!(population_summary(&[]), Err(Error::Domain { .. })));
    }

    #[test]
    fn preference_histogram_is_bimodal() {
        let pop = sample_population(&PopulationConfig::default()).unwrap();
        let hist = &population_summary(&pop).unwrap().liquidity_preference.histogram;
        let peak_near = |target: f64| {
            hist.bins()
                .filter(|(lo, hi, _)| (lo - target).abs() <= 9.0 || (hi - target).abs() <= 9.0)
                .map(|(_, _, c)| c)
                .max()
                .unwrap()
        };
        let trough = hist
            .bins()
            .filter(|(lo, hi, _)| *lo >= 45.0 && *hi <= 65.0)
            .map(|(_, _, c)| c)
            .max()
            .unwrap();
        assert!(peak_near(18.0) > 100 * (trough + 1));
        assert!(peak_near(96.0) > 100 * (trough + 1));
    }
}
