//! Agent-based simulation of a liquid-democracy staking economy.
//!
//! Token holders stake into neurons whose voting power, and share of a
//! freshly minted monthly reward pool, scale with stake, dissolve delay, and
//! age. A population of agents with heterogeneous wealth, yield hurdles,
//! and lock-up preferences stakes and unstakes month by month; scenarios
//! compare inflation and multiplier policies on paired random draws.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod metrics_io;
pub mod population;
pub mod rewards;
pub mod rng;
pub mod scenarios;
pub mod tokenomics;

pub use error::{Error, Result};
