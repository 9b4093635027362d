//! Per-month aggregates and their CSV, JSON, and SVG renderings.

mod csv;
mod svg;

pub use self::csv::{
    export_csv, export_histogram_csv, export_json, export_population_csv, export_summary_csv,
    format_float, import_csv, FRAME_COLUMNS,
};
pub use self::svg::{emit_chart, render_chart, ChartData, ChartKind};

use serde::{Deserialize, Serialize};

use crate::dynamics::{NeuronState, NeuronStatus};
use crate::rewards::is_governor;

/// End-of-month aggregates. Percentages are shares of all agent holdings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsFrame {
    pub month: u32,
    pub governor_count: u32,
    pub tokens_liquid: f64,
    pub tokens_staking: f64,
    pub tokens_dissolving: f64,
    pub pct_liquid: f64,
    pub pct_staking: f64,
    pub pct_dissolving: f64,
    pub total_supply: f64,
    pub minted_this_month: f64,
    pub mean_realized_annualized_ratio: f64,
}

impl MetricsFrame {
    pub fn total_tokens(&self) -> f64 {
        self.tokens_liquid + self.tokens_staking + self.tokens_dissolving
    }

    /// Staked tokens as a fraction of total supply.
    pub fn staking_ratio(&self) -> f64 {
        if self.total_supply > 0.0 {
            self.tokens_staking / self.total_supply
        } else {
            0.0
        }
    }

    /// 1 whenever any tokens exist.
    pub fn pct_sum(&self) -> f64 {
        self.pct_liquid + self.pct_staking + self.pct_dissolving
    }
}

/// Supply-side values that the neuron set alone does not determine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupplyContext {
    pub month: u32,
    pub total_supply: f64,
    pub minted_this_month: f64,
    pub mean_realized_annualized_ratio: f64,
}

pub fn aggregate(neurons: &[NeuronState], context: SupplyContext) -> MetricsFrame {
    let mut tokens = [0.0f64; 3];
    let mut governor_count = 0u32;
    for n in neurons {
        // a dissolving neuron's accrued rewards sit in its liquid balance
        tokens[0] += n.liquid_balance;
        match n.status {
            NeuronStatus::Liquid => tokens[0] += n.stake,
            NeuronStatus::Staking => tokens[1] += n.stake,
            NeuronStatus::Dissolving => tokens[2] += n.stake,
        }
        if is_governor(n) {
            governor_count += 1;
        }
    }
    let total: f64 = tokens.iter().sum();
    let pct = |x: f64| if total > 0.0 { x / total } else { 0.0 };
    MetricsFrame {
        month: context.month,
        governor_count,
        tokens_liquid: tokens[0],
        tokens_staking: tokens[1],
        tokens_dissolving: tokens[2],
        pct_liquid: pct(tokens[0]),
        pct_staking: pct(tokens[1]),
        pct_dissolving: pct(tokens[2]),
        total_supply: context.total_supply,
        minted_this_month: context.minted_this_month,
        mean_realized_annualized_ratio: context.mean_realized_annualized_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewards::AgentId;

    fn ctx() -> SupplyContext {
        SupplyContext {
            month: 0,
            total_supply: 469e6,
            minted_this_month: 0.0,
            mean_realized_annualized_ratio: 0.0,
        }
    }

    fn neuron(id: u32, status: NeuronStatus, stake: f64, liquid: f64, delay: u32) -> NeuronState {
        NeuronState {
            agent_id: AgentId(id),
            status,
            stake,
            liquid_balance: liquid,
            dissolve_delay: delay,
            age: 0,
        }
    }

    #[test]
    fn all_liquid() {
        let ns = vec![NeuronState::liquid(AgentId(0), 469e6)];
        let f = aggregate(&ns, ctx());
        assert_eq!(f.pct_liquid, 1.0);
        assert_eq!(f.governor_count, 0);
    }

    #[test]
    fn staking_share() {
        let ns = vec![
            neuron(0, NeuronStatus::Staking, 100.0, 0.0, 12),
            NeuronState::liquid(AgentId(1), 300.0),
        ];
        let f = aggregate(&ns, ctx());
        assert_eq!(f.pct_staking, 0.25);
        assert_eq!(f.pct_sum(), 1.0);
        assert_eq!(f.governor_count, 1);
    }

    #[test]
    fn dissolving_below_floor_not_governor() {
        let ns = vec![neuron(0, NeuronStatus::Dissolving, 50.0, 0.0, 5)];
        let f = aggregate(&ns, ctx());
        assert_eq!(f.tokens_dissolving, 50.0);
        assert_eq!(f.governor_count, 0);
    }

    #[test]
    fn unclaimed_rewards_count_as_liquid() {
        let ns = vec![neuron(0, NeuronStatus::Staking, 100.0, 5.0, 12)];
        let f = aggregate(&ns, ctx());
        assert_eq!((f.tokens_liquid, f.tokens_staking), (5.0, 100.0));
        assert_eq!(f.total_tokens(), 105.0);
    }

    #[test]
    fn empty_world_has_zero_shares() {
        let f = aggregate(&[], ctx());
        assert_eq!(f.pct_sum(), 0.0);
    }
}
