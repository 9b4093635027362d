//! Governor selection and the monthly split of the reward pool.

use serde::{Deserialize, Serialize};

use crate::dynamics::{NeuronState, NeuronStatus};
use crate::error::{Error, Result};
use crate::tokenomics::{age_multiplier, dissolve_delay_multiplier, MultiplierPolicy, MONTHS_PER_YEAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub u32);

impl std::fmt::Display for AgentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A neuron that qualifies for rewards, with its multipliers resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GovernorView {
    pub agent_id: AgentId,
    pub stake: f64,
    pub age_mult: f64,
    pub delay_mult: f64,
}

impl GovernorView {
    pub fn weight(&self) -> f64 {
        self.stake * self.age_mult * self.delay_mult
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardOutcome {
    pub agent_id: AgentId,
    pub proportion: f64,
    pub reward: f64,
    pub monthly_ratio: f64,
    pub annualized_ratio: f64,
}

pub fn is_governor(neuron: &NeuronState) -> bool {
    match neuron.status {
        NeuronStatus::Liquid => false,
        NeuronStatus::Staking | NeuronStatus::Dissolving => {
            neuron.stake > 0.0
                && neuron.dissolve_delay >= crate::tokenomics::MIN_DISSOLVE_DELAY_MONTHS
        }
    }
}

/// Staking neurons, and dissolving neurons with at least six months of delay
/// left, in input order.
pub fn select_governors(neurons: &[NeuronState], policy: MultiplierPolicy) -> Vec<GovernorView> {
    neurons
        .iter()
        .filter(|n| is_governor(n))
        .map(|n| GovernorView {
            agent_id: n.agent_id,
            stake: n.stake,
            // delay and age are whole non-negative months, always in domain
            age_mult: age_multiplier(n.age as f64, policy).expect("age in domain"),
            delay_mult: dissolve_delay_multiplier(n.dissolve_delay as f64, policy)
                .expect("delay in domain"),
        })
        .collect()
}

/// Sum of stake x age multiplier x delay multiplier over the governors.
pub fn weighted_stake_total(governors: &[GovernorView]) -> f64 {
    governors.iter().map(GovernorView::weight).sum()
}

pub fn reward_proportions(governors: &[GovernorView]) -> Result<Vec<f64>> {
    let total = weighted_stake_total(governors);
    if governors.is_empty() || !(total > 0.0) {
        return Err(Error::NoGovernors);
    }
    Ok(governors.iter().map(|g| g.weight() / total).collect())
}

pub fn distribute_rewards(governors: &[GovernorView], pool: f64) -> Result<Vec<RewardOutcome>> {
    if pool.is_nan() || pool < 0.0 {
        return Err(Error::domain("reward pool", pool, "must be non-negative"));
    }
    let proportions = reward_proportions(governors)?;
    Ok(governors
        .iter()
        .zip(proportions)
        .map(|(g, proportion)| {
            let reward = pool * proportion;
            let monthly_ratio = reward / g.stake;
            RewardOutcome {
                agent_id: g.agent_id,
                proportion,
                reward,
                monthly_ratio,
                annualized_ratio: MONTHS_PER_YEAR as f64 * monthly_ratio,
            }
        })
        .collect())
}

/// Prospective annualized yield of a fresh (age zero) neuron with
/// `candidate_delay`, measured against an existing weighted-stake total.
///
/// Returns 0 below the six-month floor and `f64::INFINITY` when nobody is
/// staked yet, since the first staker would take the whole pool.
pub fn estimated_ratio_against_total(
    candidate_delay: f64,
    weighted_total: f64,
    pool: f64,
    policy: MultiplierPolicy,
) -> Result<f64> {
    let d = dissolve_delay_multiplier(candidate_delay, policy)?;
    if d == 0.0 {
        return Ok(0.0);
    }
    if !(weighted_total > 0.0) {
        return Ok(f64::INFINITY);
    }
    Ok(MONTHS_PER_YEAR as f64 * pool * d / weighted_total)
}

pub fn estimated_annualized_ratio(
    candidate_delay: f64,
    governors: &[GovernorView],
    pool: f64,
    policy: MultiplierPolicy,
) -> Result<f64> {
    estimated_ratio_against_total(candidate_delay, weighted_stake_total(governors), pool, policy)
}
