//! Multiplier curves, the yearly inflation schedule, and supply compounding.
//!
//! Time is measured in whole months from genesis, 0-indexed. Month `t`
//! belongs to year `t / 12`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest dissolve delay that carries voting power.
pub const MIN_DISSOLVE_DELAY_MONTHS: u32 = 6;
/// Dissolve delay at which the multiplier saturates (eight years).
pub const MAX_DISSOLVE_DELAY_MONTHS: u32 = 96;
/// Age at which the age bonus saturates (four years).
pub const MAX_AGE_MONTHS: u32 = 48;

pub const MAX_DISSOLVE_BONUS: f64 = 1.0;
pub const MAX_AGE_BONUS: f64 = 0.25;

pub const FLOOR_INFLATION_RATE: f64 = 0.05;
/// Years over which the dynamic rate decays to the floor.
pub const INFLATION_DECAY_YEARS: u32 = 8;

pub const MONTHS_PER_YEAR: u32 = 12;

/// Default genesis supply, in tokens.
pub const GENESIS_SUPPLY: f64 = 469e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InflationPolicy {
    ConstantFivePercent,
    DynamicQuadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DissolveCurve {
    /// Every eligible neuron gets the six-month value regardless of its delay.
    FixedAtSixMonthValue,
    FullLinearCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgeCurve {
    Disabled,
    FullLinearCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplierPolicy {
    pub dissolve_curve: DissolveCurve,
    pub age_curve: AgeCurve,
}

impl MultiplierPolicy {
    pub const FULL: MultiplierPolicy = MultiplierPolicy {
        dissolve_curve: DissolveCurve::FullLinearCurve,
        age_curve: AgeCurve::FullLinearCurve,
    };
}

fn check_months(name: &'static str, months: f64) -> Result<()> {
    if months.is_nan() {
        return Err(Error::domain(name, months, "not a number"));
    }
    if months < 0.0 {
        return Err(Error::domain(name, months, "must be non-negative"));
    }
    Ok(())
}

fn linear_dissolve(delay: f64) -> f64 {
    1.0 + MAX_DISSOLVE_BONUS * delay.min(MAX_DISSOLVE_DELAY_MONTHS as f64)
        / MAX_DISSOLVE_DELAY_MONTHS as f64
}

/// Multiplier for a neuron with `delay` months of dissolve delay remaining.
///
/// Zero below six months. Above it, the full curve rises linearly from
/// 1.0625 at six months to 2.0 at eight years and stays flat after that.
pub fn dissolve_delay_multiplier(delay: f64, policy: MultiplierPolicy) -> Result<f64> {
    check_months("dissolve delay", delay)?;
    if delay < MIN_DISSOLVE_DELAY_MONTHS as f64 {
        return Ok(0.0);
    }
    Ok(match policy.dissolve_curve {
        DissolveCurve::FullLinearCurve => linear_dissolve(delay),
        DissolveCurve::FixedAtSixMonthValue => linear_dissolve(MIN_DISSOLVE_DELAY_MONTHS as f64),
    })
}

/// Multiplier for a neuron that has spent `age` months in the staking state.
pub fn age_multiplier(age: f64, policy: MultiplierPolicy) -> Result<f64> {
    check_months("age", age)?;
    Ok(match policy.age_curve {
        AgeCurve::Disabled => 1.0,
        AgeCurve::FullLinearCurve => {
            1.0 + MAX_AGE_BONUS * age.min(MAX_AGE_MONTHS as f64) / MAX_AGE_MONTHS as f64
        }
    })
}

pub fn voting_power(stake: f64, delay: f64, age: f64, policy: MultiplierPolicy) -> Result<f64> {
    if stake.is_nan() || stake < 0.0 {
        return Err(Error::domain("stake", stake, "must be non-negative"));
    }
    let d = dissolve_delay_multiplier(delay, policy)?;
    let a = age_multiplier(age, policy)?;
    Ok(stake * d * a)
}

pub fn yearly_inflation_rate(year: u32, policy: InflationPolicy) -> f64 {
    match policy {
        InflationPolicy::ConstantFivePercent => FLOOR_INFLATION_RATE,
        InflationPolicy::DynamicQuadratic => {
            if year > INFLATION_DECAY_YEARS {
                FLOOR_INFLATION_RATE
            } else {
                let remaining = (INFLATION_DECAY_YEARS - year) as f64 / INFLATION_DECAY_YEARS as f64;
                FLOOR_INFLATION_RATE + FLOOR_INFLATION_RATE * remaining * remaining
            }
        }
    }
}

pub fn year_of_month(month: u32) -> u32 {
    month / MONTHS_PER_YEAR
}

/// Yearly rates, supplies, and rewards, plus the flat monthly reward series.
///
/// `yearly_supplies` has one more entry than the other yearly vectors: it
/// holds the supply at the start of every covered year and the supply after
/// the last one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupplySchedule {
    pub initial_supply: f64,
    pub yearly_rates: Vec<f64>,
    pub yearly_supplies: Vec<f64>,
    pub yearly_rewards: Vec<f64>,
    pub monthly_rewards: Vec<f64>,
}

impl SupplySchedule {
    pub fn years(&self) -> usize {
        self.yearly_rates.len()
    }

    pub fn horizon_months(&self) -> u32 {
        self.monthly_rewards.len() as u32
    }

    /// Reward pool for month `t`, if the schedule covers it.
    pub fn monthly_reward(&self, month: u32) -> Option<f64> {
        self.monthly_rewards.get(month as usize).copied()
    }

    pub fn supply_at_year(&self, year: u32) -> Option<f64> {
        self.yearly_supplies.get(year as usize).copied()
    }
}

/// Compounds the supply once per year and spreads each year's reward evenly
/// over its twelve months.
///
/// The minted reward is stored as the realized supply increment, so
/// `I[y+1] - I[y] == R[y]` holds bit-for-bit; it agrees with `i[y] * I[y]`
/// to within one rounding of the addition.
pub fn build_supply_schedule(
    initial_supply: f64,
    horizon: u32,
    policy: InflationPolicy,
) -> Result<SupplySchedule> {
    if !(initial_supply > 0.0) || !initial_supply.is_finite() {
        return Err(Error::domain("initial supply", initial_supply, "must be positive"));
    }
    if horizon == 0 {
        return Err(Error::domain("horizon", 0.0, "must be at least one month"));
    }
    let years = horizon.div_ceil(MONTHS_PER_YEAR);
    let mut yearly_rates = Vec::with_capacity(years as usize);
    let mut yearly_supplies = Vec::with_capacity(years as usize + 1);
    let mut yearly_rewards = Vec::with_capacity(years as usize);
    let mut supply = initial_supply;
    yearly_supplies.push(supply);
    for year in 0..years {
        let rate = yearly_inflation_rate(year, policy);
        let next = supply + rate * supply;
        yearly_rates.push(rate);
        yearly_rewards.push(next - supply);
        yearly_supplies.push(next);
        supply = next;
    }
    let monthly_rewards = (0..horizon)
        .map(|t| yearly_rewards[year_of_month(t) as usize] / MONTHS_PER_YEAR as f64)
        .collect();
    Ok(SupplySchedule {
        initial_supply,
        yearly_rates,
        yearly_supplies,
        yearly_rewards,
        monthly_rewards,
    })
}
