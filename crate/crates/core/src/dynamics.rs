//! The monthly simulation engine.
//!
//! Each month runs against a snapshot of the incoming state:
//!
//! 1. the governor set and its weighted-stake total are fixed,
//! 2. the month's pool is split over those governors and credited to their
//!    liquid balances,
//! 3. every agent decides simultaneously against the snapshot,
//! 4. decisions are applied in agent-id order,
//! 5. staking neurons age and dissolving neurons count down,
//! 6. the minted pool is added to the supply and the clock advances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics_io::{aggregate, MetricsFrame, SupplyContext};
use crate::population::AgentProfile;
use crate::rewards::{
    distribute_rewards, estimated_ratio_against_total, select_governors, weighted_stake_total,
    AgentId,
};
use crate::rng::SimRng;
use crate::scenarios::PolicyConfig;
use crate::tokenomics::{build_supply_schedule, year_of_month, SupplySchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeuronStatus {
    Liquid,
    Staking,
    Dissolving,
}

impl NeuronStatus {
    pub const ALL: [NeuronStatus; 3] = [Self::Liquid, Self::Staking, Self::Dissolving];

    fn index(self) -> usize {
        match self {
            Self::Liquid => 0,
            Self::Staking => 1,
            Self::Dissolving => 2,
        }
    }

    /// Whether a neuron may go from `self` to `to` within one month.
    pub fn can_become(self, to: NeuronStatus) -> bool {
        use NeuronStatus::*;
        matches!(
            (self, to),
            (Liquid, Liquid)
                | (Liquid, Staking)
                | (Staking, Staking)
                | (Staking, Dissolving)
                | (Dissolving, Dissolving)
                | (Dissolving, Liquid)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeuronState {
    pub agent_id: AgentId,
    pub status: NeuronStatus,
    pub stake: f64,
    pub liquid_balance: f64,
    /// Months of dissolve delay. Frozen while staking, counts down while
    /// dissolving.
    pub dissolve_delay: u32,
    /// Consecutive months spent staking.
    pub age: u32,
}

impl NeuronState {
    pub fn liquid(agent_id: AgentId, balance: f64) -> Self {
        Self {
            agent_id,
            status: NeuronStatus::Liquid,
            stake: 0.0,
            liquid_balance: balance,
            dissolve_delay: 0,
            age: 0,
        }
    }

    pub fn holdings(&self) -> f64 {
        self.stake + self.liquid_balance
    }

    /// Checks the per-status invariants, returning a description of the
    /// first violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        let ok = self.stake >= 0.0
            && self.liquid_balance >= 0.0
            && match self.status {
                NeuronStatus::Liquid => self.stake == 0.0 && self.dissolve_delay == 0 && self.age == 0,
                NeuronStatus::Staking => {
                    self.stake > 0.0
                        && self.dissolve_delay >= crate::tokenomics::MIN_DISSOLVE_DELAY_MONTHS
                }
                NeuronStatus::Dissolving => self.stake > 0.0 && self.age == 0,
            };
        if ok {
            Ok(())
        } else {
            Err(format!("neuron {} violates its state invariants: {self:?}", self.agent_id))
        }
    }
}

/// Per-month macro sentiment shocks shared by every agent.
///
/// An empty series means no shocks at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockSeries {
    pub std_dev: f64,
    pub seed: u64,
    pub sentiment: Vec<f64>,
}

impl ShockSeries {
    pub fn none() -> Self {
        Self {
            std_dev: 0.0,
            seed: 0,
            sentiment: Vec::new(),
        }
    }

    /// I.i.d. `Normal(0, std_dev)` sentiment shocks, one per month.
    pub fn generate(horizon: u32, std_dev: f64, seed: u64) -> Result<Self> {
        if !(std_dev >= 0.0) || !std_dev.is_finite() {
            return Err(Error::config(
                "simulation.shock_std_dev",
                format!("must be non-negative and finite, got {std_dev}"),
            ));
        }
        let mut rng = SimRng::new(seed);
        let sentiment = (0..horizon).map(|_| rng.normal(0.0, std_dev)).collect();
        Ok(Self {
            std_dev,
            seed,
            sentiment,
        })
    }

    pub fn sentiment_shock(&self, month: u32) -> f64 {
        self.sentiment.get(month as usize).copied().unwrap_or(0.0)
    }

    pub fn threshold_shock(&self, month: u32) -> f64 {
        -self.sentiment_shock(month)
    }

    fn covers(&self, horizon: u32) -> bool {
        self.sentiment.is_empty() || self.sentiment.len() >= horizon as usize
    }
}

/// The staking hurdle after this month's macro shock. Can be negative.
pub fn adjusted_threshold(profile: &AgentProfile, month: u32, shocks: &ShockSeries) -> f64 {
    profile.staking_threshold + shocks.threshold_shock(month)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldState {
    pub month: u32,
    pub current_supply: f64,
    pub neurons: Vec<NeuronState>,
    pub schedule: SupplySchedule,
    pub policy: PolicyConfig,
}

impl WorldState {
    /// Every agent liquid, holding its endowment.
    pub fn genesis(profiles: &[AgentProfile], policy: &PolicyConfig) -> Result<Self> {
        if profiles.is_empty() {
            return Err(Error::config("population.n_agents", "population is empty"));
        }
        check_profile_ids(profiles)?;
        let schedule = build_supply_schedule(policy.initial_supply, policy.horizon, policy.inflation)
            .map_err(|e| Error::config("policy", e.to_string()))?;
        Ok(Self {
            month: 0,
            current_supply: policy.initial_supply,
            neurons: profiles
                .iter()
                .map(|p| NeuronState::liquid(p.agent_id, p.endowment))
                .collect(),
            schedule,
            policy: policy.clone(),
        })
    }

    pub fn year(&self) -> u32 {
        year_of_month(self.month)
    }

    pub fn total_holdings(&self) -> f64 {
        self.neurons.iter().map(NeuronState::holdings).sum()
    }
}

fn check_profile_ids(profiles: &[AgentProfile]) -> Result<()> {
    match profiles
        .iter()
        .enumerate()
        .find(|(i, p)| p.agent_id != AgentId(*i as u32))
    {
        Some((i, p)) => Err(Error::config(
            "population",
            format!("agent ids must be 0..n in order; position {i} holds {}", p.agent_id),
        )),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Hold,
    Stake,
    TopUp,
    Unstake,
}

/// Status transitions observed in one month, `[from][to]`, indexed
/// liquid, staking, dissolving.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCounts(pub [[u32; 3]; 3]);

impl TransitionCounts {
    fn record(&mut self, from: NeuronStatus, to: NeuronStatus) {
        self.0[from.index()][to.index()] += 1;
    }

    pub fn count(&self, from: NeuronStatus, to: NeuronStatus) -> u32 {
        self.0[from.index()][to.index()]
    }

    /// Transitions that the state machine does not allow, with their counts.
    pub fn illegal(&self) -> Vec<(NeuronStatus, NeuronStatus, u32)> {
        let mut out = Vec::new();
        for from in NeuronStatus::ALL {
            for to in NeuronStatus::ALL {
                let n = self.count(from, to);
                if n > 0 && !from.can_become(to) {
                    out.push((from, to, n));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub frame: MetricsFrame,
    /// Governors in the start-of-month snapshot.
    pub entry_governor_count: u32,
    pub decisions: Vec<Decision>,
    pub transitions: TransitionCounts,
    /// Realized annualized ratio per agent, `None` for non-governors.
    pub realized_ratios: Vec<Option<f64>>,
}

/// Advances `world` by one month.
pub fn step_month(
    world: &WorldState,
    profiles: &[AgentProfile],
    shocks: &ShockSeries,
) -> Result<(WorldState, StepOutcome)> {
    let horizon = world.schedule.horizon_months();
    let month = world.month;
    let pool = world
        .schedule
        .monthly_reward(month)
        .ok_or(Error::HorizonExceeded { month, horizon })?;
    if profiles.len() != world.neurons.len() {
        return Err(Error::config(
            "population",
            format!("{} profiles for {} neurons", profiles.len(), world.neurons.len()),
        ));
    }
    let multipliers = world.policy.multipliers;
    let mut neurons = world.neurons.clone();

    // snapshot
    let governors = select_governors(&neurons, multipliers);
    let weighted_total = weighted_stake_total(&governors);

    // rewards
    let mut realized_ratios = vec![None; neurons.len()];
    let (minted, mean_realized) = if governors.is_empty() {
        (0.0, 0.0)
    } else {
        let outcomes = distribute_rewards(&governors, pool)?;
        let mut ratio_sum = 0.0;
        for o in &outcomes {
            let idx = o.agent_id.0 as usize;
            neurons[idx].liquid_balance += o.reward;
            realized_ratios[idx] = Some(o.annualized_ratio);
            ratio_sum += o.annualized_ratio;
        }
        (pool, ratio_sum / outcomes.len() as f64)
    };

    // decisions, all against the snapshot
    let estimate = |delay: u32| {
        estimated_ratio_against_total(delay as f64, weighted_total, pool, multipliers)
            .expect("whole-month delays are in domain")
    };
    let decisions: Vec<Decision> = neurons
        .iter()
        .zip(profiles)
        .map(|(n, p)| {
            let hurdle = adjusted_threshold(p, month, shocks);
            match n.status {
                NeuronStatus::Liquid => {
                    if n.liquid_balance > 0.0 && estimate(p.liquidity_preference) > hurdle {
                        Decision::Stake
                    } else {
                        Decision::Hold
                    }
                }
                NeuronStatus::Staking => {
                    let realized = realized_ratios[n.agent_id.0 as usize]
                        .expect("staking neurons are always governors");
                    if realized < hurdle {
                        Decision::Unstake
                    } else if n.liquid_balance > 0.0 && estimate(n.dissolve_delay) > hurdle {
                        Decision::TopUp
                    } else {
                        Decision::Hold
                    }
                }
                NeuronStatus::Dissolving => Decision::Hold,
            }
        })
        .collect();

    // apply
    for ((n, p), d) in neurons.iter_mut().zip(profiles).zip(&decisions) {
        match d {
            Decision::Hold => {}
            Decision::Stake => {
                n.status = NeuronStatus::Staking;
                n.stake += n.liquid_balance;
                n.liquid_balance = 0.0;
                n.dissolve_delay = p.liquidity_preference;
                n.age = 0;
            }
            Decision::TopUp => {
                n.stake += n.liquid_balance;
                n.liquid_balance = 0.0;
            }
            Decision::Unstake => {
                n.status = NeuronStatus::Dissolving;
                n.age = 0;
            }
        }
    }

    // clock
    for n in neurons.iter_mut() {
        match n.status {
            NeuronStatus::Liquid => {}
            NeuronStatus::Staking => n.age += 1,
            NeuronStatus::Dissolving => {
                n.dissolve_delay = n.dissolve_delay.saturating_sub(1);
                if n.dissolve_delay == 0 {
                    n.status = NeuronStatus::Liquid;
                    n.liquid_balance += n.stake;
                    n.stake = 0.0;
                }
            }
        }
    }

    let mut transitions = TransitionCounts::default();
    for (before, after) in world.neurons.iter().zip(&neurons) {
        transitions.record(before.status, after.status);
    }

    let current_supply = world.current_supply + minted;
    let frame = aggregate(
        &neurons,
        SupplyContext {
            month,
            total_supply: current_supply,
            minted_this_month: minted,
            mean_realized_annualized_ratio: mean_realized,
        },
    );
    let next = WorldState {
        month: month + 1,
        current_supply,
        neurons,
        schedule: world.schedule.clone(),
        policy: world.policy.clone(),
    };
    Ok((
        next,
        StepOutcome {
            frame,
            entry_governor_count: governors.len() as u32,
            decisions,
            transitions,
            realized_ratios,
        },
    ))
}

/// A run in progress, stepped one month at a time.
#[derive(Debug, Clone)]
pub struct Simulation<'a> {
    world: WorldState,
    profiles: &'a [AgentProfile],
    shocks: &'a ShockSeries,
}

impl<'a> Simulation<'a> {
    pub fn new(
        profiles: &'a [AgentProfile],
        policy: &PolicyConfig,
        shocks: &'a ShockSeries,
    ) -> Result<Self> {
        policy.validate()?;
        if !shocks.covers(policy.horizon) {
            return Err(Error::config(
                "simulation.shocks",
                format!(
                    "shock series has {} months, horizon needs {}",
                    shocks.sentiment.len(),
                    policy.horizon
                ),
            ));
        }
        Ok(Self {
            world: WorldState::genesis(profiles, policy)?,
            profiles,
            shocks,
        })
    }

    pub fn world(&self) -> &WorldState {
        &self.world
    }

    pub fn is_finished(&self) -> bool {
        self.world.month >= self.world.schedule.horizon_months()
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        let (next, outcome) = step_month(&self.world, self.profiles, self.shocks)?;
        self.world = next;
        Ok(outcome)
    }
}

/// Runs `config.horizon` months from the all-liquid genesis state.
pub fn run_simulation(
    profiles: &[AgentProfile],
    config: &PolicyConfig,
    shocks: &ShockSeries,
) -> Result<Vec<MetricsFrame>> {
    let mut sim = Simulation::new(profiles, config, shocks)?;
    let mut frames = Vec::with_capacity(config.horizon as usize);
    while !sim.is_finished() {
        frames.push(sim.step()?.frame);
    }
    Ok(frames)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::{sample_population, PopulationConfig};
    use crate::scenarios::preset;
    use crate::tokenomics::{AgeCurve, DissolveCurve, InflationPolicy, MultiplierPolicy};

    fn profile(id: u32, endowment: f64, threshold: f64, pref: u32) -> AgentProfile {
        AgentProfile {
            agent_id: AgentId(id),
            endowment,
            staking_threshold: threshold,
            liquidity_preference: pref,
        }
    }

    fn full_policy(horizon: u32) -> PolicyConfig {
        PolicyConfig {
            inflation: InflationPolicy::ConstantFivePercent,
            multipliers: MultiplierPolicy::FULL,
            horizon,
            ..preset("benchmark").unwrap()
        }
    }

    fn world_with(neurons: Vec<NeuronState>, pool: f64, policy: PolicyConfig) -> WorldState {
        let horizon = policy.horizon;
        WorldState {
            month: 0,
            current_supply: 1e6,
            neurons,
            schedule: SupplySchedule {
                initial_supply: 1e6,
                yearly_rates: vec![0.0],
                yearly_supplies: vec![1e6, 1e6],
                yearly_rewards: vec![pool * 12.0],
                monthly_rewards: vec![pool; horizon as usize],
            },
            policy,
        }
    }

    #[test]
    fn adjusted_threshold_examples() {
        let p = profile(0, 1.0, 0.08, 12);
        let shocks = ShockSeries { std_dev: 0.0, seed: 0, sentiment: vec![0.01, 0.0] };
        assert!((adjusted_threshold(&p, 0, &shocks) - 0.07).abs() < 1e-15);
        assert_eq!(adjusted_threshold(&p, 1, &shocks), 0.08);
        let p = profile(0, 1.0, 0.005, 12);
        let shocks = ShockSeries { std_dev: 0.0, seed: 0, sentiment: vec![0.02] };
        assert!((adjusted_threshold(&p, 0, &shocks) + 0.015).abs() < 1e-15);
    }

    #[test]
    fn shock_series_is_seeded_and_mirrored() {
        let a = ShockSeries::generate(96, 0.01, 5).unwrap();
        assert_eq!(a, ShockSeries::generate(96, 0.01, 5).unwrap());
        assert_eq!(a.sentiment.len(), 96);
        for t in 0..96 {
            assert_eq!(a.threshold_shock(t), -a.sentiment_shock(t));
        }
        assert!(ShockSeries::generate(12, -1.0, 5).is_err());
    }

    #[test]
    fn genesis_month_everyone_stakes() {
        let profiles: Vec<_> = (0..4).map(|i| profile(i, 100.0, 0.5 + i as f64, 12)).collect();
        let policy = full_policy(1);
        let world = WorldState::genesis(&profiles, &policy).unwrap();
        let (next, out) = step_month(&world, &profiles, &ShockSeries::none()).unwrap();
        assert_eq!(out.entry_governor_count, 0);
        assert_eq!(out.frame.minted_this_month, 0.0);
        assert!(out.decisions.iter().all(|&d| d == Decision::Stake));
        assert_eq!(out.frame.governor_count, 4);
        assert!(next.neurons.iter().all(|n| n.status == NeuronStatus::Staking && n.age == 1));
        assert_eq!(next.current_supply, policy.initial_supply);
        assert_eq!(next.month, 1);
    }

    #[test]
    fn single_staker_realized_ratio() {
        let profiles = [profile(0, 1200.0, 0.10, 96)];
        let neuron = NeuronState {
            agent_id: AgentId(0),
            status: NeuronStatus::Staking,
            stake: 1200.0,
            liquid_balance: 0.0,
            dissolve_delay: 96,
            age: 0,
        };
        let world = world_with(vec![neuron], 120.0, full_policy(12));
        let (next, out) = step_month(&world, &profiles, &ShockSeries::none()).unwrap();
        assert!((out.realized_ratios[0].unwrap() - 1.2).abs() < 1e-15);
        assert_eq!(out.decisions[0], Decision::TopUp);
        assert_eq!(next.neurons[0].status, NeuronStatus::Staking);
        assert_eq!(next.neurons[0].stake, 1320.0);
        assert_eq!(next.neurons[0].dissolve_delay, 96);
        assert_eq!(next.neurons[0].age, 1);
    }

    #[test]
    fn dissolving_at_floor_gets_one_last_reward() {
        let profiles = [profile(0, 100.0, 0.1, 12), profile(1, 100.0, 0.0001, 12)];
        let neurons = vec![
            NeuronState {
                agent_id: AgentId(0),
                status: NeuronStatus::Dissolving,
                stake: 100.0,
                liquid_balance: 0.0,
                dissolve_delay: 6,
                age: 0,
            },
            NeuronState {
                agent_id: AgentId(1),
                status: NeuronStatus::Staking,
                stake: 100.0,
                liquid_balance: 0.0,
                dissolve_delay: 12,
                age: 0,
            },
        ];
        let world = world_with(neurons, 10.0, full_policy(12));
        let (w1, out1) = step_month(&world, &profiles, &ShockSeries::none()).unwrap();
        assert!(out1.realized_ratios[0].is_some());
        assert!(w1.neurons[0].liquid_balance > 0.0);
        assert_eq!(w1.neurons[0].dissolve_delay, 5);
        let before = w1.neurons[0].liquid_balance;
        let (w2, out2) = step_month(&w1, &profiles, &ShockSeries::none()).unwrap();
        assert!(out2.realized_ratios[0].is_none());
        assert_eq!(w2.neurons[0].liquid_balance, before);
        assert_eq!(w2.neurons[0].dissolve_delay, 4);
    }

    #[test]
    fn dissolve_completes_to_liquid() {
        let profiles = [profile(0, 100.0, 0.1, 12)];
        let neurons = vec![NeuronState {
            agent_id: AgentId(0),
            status: NeuronStatus::Dissolving,
            stake: 100.0,
            liquid_balance: 3.0,
            dissolve_delay: 1,
            age: 0,
        }];
        let world = world_with(neurons, 10.0, full_policy(12));
        let (next, out) = step_month(&world, &profiles, &ShockSeries::none()).unwrap();
        let n = next.neurons[0];
        assert_eq!(n.status, NeuronStatus::Liquid);
        assert_eq!((n.stake, n.liquid_balance, n.dissolve_delay), (0.0, 103.0, 0));
        assert_eq!(out.transitions.count(NeuronStatus::Dissolving, NeuronStatus::Liquid), 1);
        // nobody governed, nothing minted
        assert_eq!(next.current_supply, world.current_supply);
    }

    #[test]
    fn unstake_below_hurdle_and_equality_holds() {
        // realized ratio is 12 * 10 / 1200 = 0.1 exactly
        let neuron = NeuronState {
            agent_id: AgentId(0),
            status: NeuronStatus::Staking,
            stake: 1200.0,
            liquid_balance: 0.0,
            dissolve_delay: 20,
            age: 7,
        };
        let policy = PolicyConfig {
            multipliers: MultiplierPolicy {
                dissolve_curve: DissolveCurve::FixedAtSixMonthValue,
                age_curve: AgeCurve::Disabled,
            },
            ..full_policy(12)
        };
        let world = world_with(vec![neuron], 10.0, policy);
        let (_, out) = step_month(&world, &[profile(0, 1.0, 0.1, 20)], &ShockSeries::none()).unwrap();
        assert_eq!(out.realized_ratios[0], Some(0.1));
        assert_ne!(out.decisions[0], Decision::Unstake);

        let (next, out) = step_month(&world, &[profile(0, 1.0, 0.1000001, 20)], &ShockSeries::none()).unwrap();
        assert_eq!(out.decisions[0], Decision::Unstake);
        let n = next.neurons[0];
        assert_eq!((n.status, n.age, n.dissolve_delay), (NeuronStatus::Dissolving, 0, 19));
        assert_eq!(n.liquid_balance, 10.0);
    }

    #[test]
    fn horizon_is_enforced() {
        let profiles = [profile(0, 100.0, 0.1, 12)];
        let mut sim_world = WorldState::genesis(&profiles, &full_policy(2)).unwrap();
        for _ in 0..2 {
            sim_world = step_month(&sim_world, &profiles, &ShockSeries::none()).unwrap().0;
        }
        assert!(matches!(
            step_month(&sim_world, &profiles, &ShockSeries::none()),
            Err(Error::HorizonExceeded { month: 2, horizon: 2 })
        ));
    }

    #[test]
    fn short_shock_series_rejected() {
        let profiles = [profile(0, 100.0, 0.1, 12)];
        let shocks = ShockSeries::generate(5, 0.01, 1).unwrap();
        assert!(matches!(
            run_simulation(&profiles, &full_policy(12), &shocks),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn misnumbered_profiles_rejected() {
        let profiles = [profile(3, 100.0, 0.1, 12)];
        assert!(WorldState::genesis(&profiles, &full_policy(12)).is_err());
    }

    #[test]
    fn invariants_hold_throughout_a_run() {
        let pop = sample_population(&PopulationConfig { n_agents: 400, ..Default::default() }).unwrap();
        for name in crate::scenarios::PRESET_NAMES {
            let policy = PolicyConfig { horizon: 60, ..preset(name).unwrap() };
            let shocks = ShockSeries::generate(60, 0.01, 3).unwrap();
            let mut sim = Simulation::new(&pop, &policy, &shocks).unwrap();
            let mut delays: Vec<Option<u32>> = vec![None; pop.len()];
            while !sim.is_finished() {
                let prior = sim.world().neurons.clone();
                let before = sim.world().total_holdings();
                let out = sim.step().unwrap();
                let w = sim.world();
                let after = w.total_holdings();
                let expected = before + out.frame.minted_this_month;
                assert!((after - expected).abs() <= 1e-9 * expected);
                assert!(out.transitions.illegal().is_empty());
                for (i, n) in w.neurons.iter().enumerate() {
                    n.check().unwrap();
                    if out.realized_ratios[i].is_some() {
                        assert!(prior[i].dissolve_delay >= 6);
                    }
                    match (n.status, delays[i]) {
                        (NeuronStatus::Staking, Some(d)) if out.decisions[i] != Decision::Stake => {
                            assert_eq!(n.dissolve_delay, d)
                        }
                        _ => {}
                    }
                    delays[i] = (n.status == NeuronStatus::Staking).then_some(n.dissolve_delay);
                }
            }
        }
    }

    #[test]
    fn lone_agent_never_unstakes_above_threshold() {
        let profiles = [profile(0, 1000.0, 0.01, 30)];
        let policy = full_policy(48);
        let frames = run_simulation(&profiles, &policy, &ShockSeries::none()).unwrap();
        let no_shocks = ShockSeries::none();
        let mut sim = Simulation::new(&profiles, &policy, &no_shocks).unwrap();
        sim.step().unwrap();
        while !sim.is_finished() {
            let stake = sim.world().neurons[0].stake;
            let pool = sim.world().schedule.monthly_reward(sim.world().month).unwrap();
            let out = sim.step().unwrap();
            assert_eq!(out.realized_ratios[0], Some(12.0 * (pool / stake)));
            assert_ne!(out.decisions[0], Decision::Unstake);
        }
        assert!(frames.iter().skip(1).all(|f| f.governor_count == 1));
    }
}
