//! Command-line front end. Exit codes: 0 success, 1 runtime or I/O
//! failure, 2 usage or configuration error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{OutputFormat, RunConfigFile};
use crate::error::{Error, Result};
use crate::metrics_io::{
    emit_chart, export_csv, export_histogram_csv, export_json, export_population_csv,
    export_summary_csv, format_float, ChartData, ChartKind,
};
use crate::population::{population_summary, sample_population};
use crate::rewards::estimated_ratio_against_total;
use crate::scenarios::{preset, run_comparative, Scenario, ScenarioResult};
use crate::tokenomics::{
    age_multiplier, build_supply_schedule, dissolve_delay_multiplier, voting_power,
    InflationPolicy, MultiplierPolicy, MONTHS_PER_YEAR,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nns-sim", version, about = "Staking economy simulator: calculators, schedules, and policy scenarios")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct GlobalArgs {
    /// Overrides the output directory from the config
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,

    /// Overrides the population sampling seed
    #[arg(long, global = true)]
    pub seed_population: Option<u64>,

    /// Overrides the macro shock seed
    #[arg(long, global = true)]
    pub seed_shocks: Option<u64>,

    /// Comma-separated output formats (csv, json, svg)
    #[arg(long, global = true, value_delimiter = ',')]
    pub format: Option<Vec<OutputFormat>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate multipliers, voting power, or a prospective reward ratio
    Calc {
        #[command(subcommand)]
        kind: CalcKind,
    },
    /// Print the yearly inflation and supply schedule
    Schedule(ScheduleArgs),
    /// Sample an agent population and write its distributions
    Sample { config: PathBuf },
    /// Run one scenario
    Run { config: PathBuf },
    /// Run several presets on paired seeds
    Compare {
        config: PathBuf,
        /// Comma-separated preset names (at least two)
        #[arg(long, value_delimiter = ',', required = true)]
        presets: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum CurveChoice {
    /// Linear dissolve and age curves
    #[default]
    Full,
    /// Six-month dissolve value for all eligible neurons, no age bonus
    Fixed,
}

impl CurveChoice {
    fn policy(self) -> MultiplierPolicy {
        match self {
            Self::Full => MultiplierPolicy::FULL,
            Self::Fixed => preset("benchmark").expect("benchmark exists").multipliers,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CalcKind {
    /// Dissolve delay multiplier
    #[command(allow_negative_numbers = true)]
    Dissolve {
        #[arg(long)]
        delay: f64,
        #[arg(long, value_enum, default_value_t)]
        curves: CurveChoice,
    },
    /// Age multiplier
    #[command(allow_negative_numbers = true)]
    Age {
        #[arg(long)]
        age: f64,
        #[arg(long, value_enum, default_value_t)]
        curves: CurveChoice,
    },
    /// Stake x dissolve multiplier x age multiplier
    #[command(allow_negative_numbers = true)]
    VotingPower {
        #[arg(long)]
        stake: f64,
        #[arg(long)]
        delay: f64,
        #[arg(long)]
        age: f64,
        #[arg(long, value_enum, default_value_t)]
        curves: CurveChoice,
    },
    /// Annualized yield of a fresh neuron against an existing weighted stake
    #[command(allow_negative_numbers = true)]
    EstimatedRatio {
        #[arg(long)]
        delay: f64,
        /// Monthly reward pool
        #[arg(long)]
        pool: f64,
        /// Sum of stake x age x dissolve multipliers over current governors
        #[arg(long)]
        aggregate: f64,
        #[arg(long, value_enum, default_value_t)]
        curves: CurveChoice,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchedulePolicy {
    Dynamic,
    Constant,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(long, default_value_t = crate::tokenomics::GENESIS_SUPPLY)]
    pub initial_supply: f64,
    #[arg(long, default_value_t = 9)]
    pub years: u32,
    #[arg(long, value_enum, default_value = "dynamic")]
    pub policy: SchedulePolicy,
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_RUNTIME
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Calc { kind } => cmd_calc(kind, out),
        Command::Schedule(args) => cmd_schedule(&args, &cli.global, out),
        Command::Sample { config } => cmd_sample(&config, &cli.global, out),
        Command::Run { config } => cmd_run(&config, &cli.global, out),
        Command::Compare { config, presets } => cmd_compare(&config, &presets, &cli.global, out),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

pub fn cmd_calc(kind: CalcKind, out: &mut dyn Write) -> Result<()> {
    let line = match kind {
        CalcKind::Dissolve { delay, curves } => {
            let v = dissolve_delay_multiplier(delay, curves.policy())?;
            format!("dissolve_delay_multiplier(delay={delay:?} months) = {v:?}")
        }
        CalcKind::Age { age, curves } => {
            let v = age_multiplier(age, curves.policy())?;
            format!("age_multiplier(age={age:?} months) = {v:?}")
        }
        CalcKind::VotingPower {
            stake,
            delay,
            age,
            curves,
        } => {
            let v = voting_power(stake, delay, age, curves.policy())?;
            format!("voting_power(stake={stake:?}, delay={delay:?} months, age={age:?} months) = {v:?}")
        }
        CalcKind::EstimatedRatio {
            delay,
            pool,
            aggregate,
            curves,
        } => {
            if pool.is_nan() || pool < 0.0 {
                return Err(Error::domain("pool", pool, "must be non-negative"));
            }
            if aggregate.is_nan() || aggregate < 0.0 {
                return Err(Error::domain("aggregate", aggregate, "must be non-negative"));
            }
            let v = estimated_ratio_against_total(delay, aggregate, pool, curves.policy())?;
            format!(
                "estimated_annualized_ratio(delay={delay:?} months, pool={pool:?}, aggregate={aggregate:?}) = {v:?}"
            )
        }
    };
    writeln!(out, "{line}").map_err(stdout_err)
}

pub fn cmd_schedule(args: &ScheduleArgs, global: &GlobalArgs, out: &mut dyn Write) -> Result<()> {
    if args.years == 0 {
        return Err(Error::domain("years", 0.0, "must be at least 1"));
    }
    let policy = match args.policy {
        SchedulePolicy::Dynamic => InflationPolicy::DynamicQuadratic,
        SchedulePolicy::Constant => InflationPolicy::ConstantFivePercent,
    };
    let schedule = build_supply_schedule(args.initial_supply, args.years * MONTHS_PER_YEAR, policy)?;
    let mut table = String::from("year,inflation_rate,supply,yearly_reward,monthly_reward\n");
    for y in 0..schedule.years() {
        table.push_str(&format!(
            "{y},{},{},{},{}\n",
            format_float(schedule.yearly_rates[y]),
            format_float(schedule.yearly_supplies[y]),
            format_float(schedule.yearly_rewards[y]),
            format_float(schedule.yearly_rewards[y] / MONTHS_PER_YEAR as f64),
        ));
    }
    out.write_all(table.as_bytes()).map_err(stdout_err)?;
    if let Some(dir) = &global.output_dir {
        ensure_dir(dir)?;
        let path = dir.join("schedule.csv");
        fs::write(&path, &table).map_err(|e| Error::io(&path, e))?;
        if wants(global, None, OutputFormat::Svg) {
            emit_chart(ChartKind::InflationSupply, ChartData::Schedule(&schedule), &dir.join("inflation_supply.svg"))?;
            emit_chart(ChartKind::RewardSchedule, ChartData::Schedule(&schedule), &dir.join("reward_schedule.svg"))?;
        }
    }
    Ok(())
}

fn load_config(path: &Path, global: &GlobalArgs) -> Result<RunConfigFile> {
    let mut cfg = RunConfigFile::load(path)?;
    if let Some(seed) = global.seed_population {
        cfg.population.seed = seed;
    }
    if let Some(seed) = global.seed_shocks {
        cfg.simulation.shock_seed = seed;
    }
    if let Some(dir) = &global.output_dir {
        cfg.output.directory = dir.clone();
    }
    if let Some(formats) = &global.format {
        cfg.output.formats = formats.iter().copied().collect();
    }
    Ok(cfg)
}

fn wants(global: &GlobalArgs, cfg: Option<&RunConfigFile>, format: OutputFormat) -> bool {
    match (cfg, &global.format) {
        (Some(cfg), _) => cfg.output.formats.contains(&format),
        (None, Some(formats)) => formats.contains(&format),
        (None, None) => true,
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn cmd_sample(config: &Path, global: &GlobalArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(config, global)?;
    let profiles = sample_population(&cfg.population)?;
    let summary = population_summary(&profiles)?;
    let dir = &cfg.output.directory;
    ensure_dir(dir)?;
    export_population_csv(&profiles, &dir.join("population.csv"))?;
    export_histogram_csv(&summary, &dir.join("population_histograms.csv"))?;
    emit_chart(
        ChartKind::PopulationHistograms,
        ChartData::Population(&summary),
        &dir.join("population_histograms.svg"),
    )?;
    for f in summary.features() {
        writeln!(
            out,
            "{:<22} total {:>16.2}  mean {:>12.4}  std {:>12.4}",
            f.feature, f.total, f.mean, f.std_dev
        )
        .map_err(stdout_err)?;
    }
    Ok(())
}

fn write_scenario(result: &ScenarioResult, cfg: &RunConfigFile, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    let formats = &cfg.output.formats;
    if formats.contains(&OutputFormat::Csv) {
        export_csv(&result.frames, &dir.join("metrics.csv"))?;
    }
    if formats.contains(&OutputFormat::Json) {
        export_json(&result.frames, &dir.join("metrics.json"))?;
    }
    if formats.contains(&OutputFormat::Svg) {
        let frames = ChartData::Frames(&result.frames);
        emit_chart(ChartKind::GovernorCounts, frames, &dir.join("governor_counts.svg"))?;
        emit_chart(ChartKind::TokenPercentages, frames, &dir.join("token_percentages.svg"))?;
        emit_chart(
            ChartKind::MultiplierCurve,
            ChartData::Multipliers(result.policy.multipliers),
            &dir.join("multiplier_curve.svg"),
        )?;
    }
    Ok(())
}

fn print_summary(out: &mut dyn Write, results: &[ScenarioResult]) -> Result<()> {
    writeln!(
        out,
        "{:<14} {:>12} {:>12} {:>16} {:>10}",
        "scenario", "mean_stake%", "volatility", "final_supply", "governors"
    )
    .map_err(stdout_err)?;
    for r in results {
        writeln!(
            out,
            "{:<14} {:>12.4} {:>12.6} {:>16.0} {:>10}",
            r.name,
            100.0 * r.summary.mean_staking_ratio,
            r.summary.staking_ratio_volatility,
            r.summary.final_supply,
            r.summary.final_governor_count
        )
        .map_err(stdout_err)?;
    }
    Ok(())
}

pub fn cmd_run(config: &Path, global: &GlobalArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(config, global)?;
    let scenario = cfg.policy.scenario()?;
    let results = run_comparative(std::slice::from_ref(&scenario), &cfg.shared())?;
    write_scenario(&results[0], &cfg, &cfg.output.directory)?;
    print_summary(out, &results)
}

pub fn cmd_compare(config: &Path, presets: &[String], global: &GlobalArgs, out: &mut dyn Write) -> Result<()> {
    if presets.len() < 2 {
        return Err(Error::config("--presets", "compare needs at least two presets"));
    }
    let cfg = load_config(config, global)?;
    let scenarios = presets
        .iter()
        .map(|p| Scenario::preset(p.trim()))
        .collect::<Result<Vec<_>>>()?;
    let results = run_comparative(&scenarios, &cfg.shared())?;
    let dir = &cfg.output.directory;
    for r in &results {
        write_scenario(r, &cfg, &dir.join(&r.name))?;
    }
    export_summary_csv(&results, &dir.join("comparison_summary.csv"))?;
    print_summary(out, &results)
}
