//! Dependency-free SVG charts. Output is a pure function of the input: no
//! timestamps, no generated ids, fixed number formatting.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::population::{Histogram, PopulationSummary};
use crate::tokenomics::{
    age_multiplier, dissolve_delay_multiplier, MultiplierPolicy, SupplySchedule,
    MAX_DISSOLVE_DELAY_MONTHS, MIN_DISSOLVE_DELAY_MONTHS,
};

use super::MetricsFrame;

const WIDTH: f64 = 820.0;
const PANEL_HEIGHT: f64 = 300.0;
const TITLE_HEIGHT: f64 = 40.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 50.0;
const TICKS: usize = 5;
const FONT: &str = "font-family=\"Helvetica, Arial, sans-serif\"";

const BLUE: &str = "#1f77b4";
const ORANGE: &str = "#ff7f0e";
const GREEN: &str = "#2ca02c";
const RED: &str = "#d62728";
const PURPLE: &str = "#9467bd";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    MultiplierCurve,
    InflationSupply,
    RewardSchedule,
    GovernorCounts,
    TokenPercentages,
    PopulationHistograms,
}

impl ChartKind {
    pub const ALL: [ChartKind; 6] = [
        Self::MultiplierCurve,
        Self::InflationSupply,
        Self::RewardSchedule,
        Self::GovernorCounts,
        Self::TokenPercentages,
        Self::PopulationHistograms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MultiplierCurve => "multiplier_curve",
            Self::InflationSupply => "inflation_supply",
            Self::RewardSchedule => "reward_schedule",
            Self::GovernorCounts => "governor_counts",
            Self::TokenPercentages => "token_percentages",
            Self::PopulationHistograms => "population_histograms",
        }
    }
}

impl FromStr for ChartKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownChart(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ChartData<'a> {
    Multipliers(MultiplierPolicy),
    Schedule(&'a SupplySchedule),
    Frames(&'a [MetricsFrame]),
    Population(&'a PopulationSummary),
}

impl ChartData<'_> {
    fn describe(&self) -> &'static str {
        match self {
            Self::Multipliers(_) => "a multiplier policy",
            Self::Schedule(_) => "a supply schedule",
            Self::Frames(_) => "metrics frames",
            Self::Population(_) => "a population summary",
        }
    }
}

struct Series {
    name: String,
    color: &'static str,
    /// Disjoint polylines; a jump in the data starts a new segment.
    segments: Vec<Vec<(f64, f64)>>,
}

impl Series {
    fn line(name: &str, color: &'static str, points: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.to_string(),
            color,
            segments: vec![points],
        }
    }

    fn points(&self) -> impl Iterator<Item = &(f64, f64)> {
        self.segments.iter().flatten()
    }
}

enum PanelBody {
    Lines(Vec<Series>),
    /// Series are stacked bottom to top in order.
    Stacked(Vec<Series>),
    Bars(Series, Histogram),
}

struct Panel {
    title: String,
    x_label: String,
    y_label: String,
    body: PanelBody,
}

pub fn render_chart(kind: ChartKind, data: ChartData<'_>) -> Result<String> {
    let (title, panels) = match (kind, data) {
        (ChartKind::MultiplierCurve, ChartData::Multipliers(policy)) => {
            ("Voting power multipliers", multiplier_panels(policy))
        }
        (ChartKind::InflationSupply, ChartData::Schedule(s)) => {
            ("Yearly inflation rate and total supply", inflation_panels(s))
        }
        (ChartKind::RewardSchedule, ChartData::Schedule(s)) => {
            ("Monthly and yearly reward distribution", reward_panels(s))
        }
        (ChartKind::GovernorCounts, ChartData::Frames(f)) => {
            ("Governor and governance token counts", governor_panels(f))
        }
        (ChartKind::TokenPercentages, ChartData::Frames(f)) => {
            ("Token distribution by state", vec![percentage_panel(f)])
        }
        (ChartKind::PopulationHistograms, ChartData::Population(p)) => {
            ("Agent feature distributions", histogram_panels(p))
        }
        (kind, data) => {
            return Err(Error::ChartInput {
                kind: kind.name(),
                given: data.describe(),
            })
        }
    };
    Ok(render(title, &panels))
}

pub fn emit_chart(kind: ChartKind, data: ChartData<'_>, path: &Path) -> Result<()> {
    let svg = render_chart(kind, data)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}

fn multiplier_panels(policy: MultiplierPolicy) -> Vec<Panel> {
    let floor = MIN_DISSOLVE_DELAY_MONTHS;
    let months = 0..=MAX_DISSOLVE_DELAY_MONTHS;
    let dissolve = |m: u32| dissolve_delay_multiplier(m as f64, policy).expect("in domain");
    let below: Vec<_> = (0..floor).map(|m| (m as f64, dissolve(m))).collect();
    let above: Vec<_> = (floor..=MAX_DISSOLVE_DELAY_MONTHS)
        .map(|m| (m as f64, dissolve(m)))
        .collect();
    let age = months
        .map(|m| (m as f64, age_multiplier(m as f64, policy).expect("in domain")))
        .collect();
    vec![
        Panel {
            title: "Dissolve delay multiplier".into(),
            x_label: "dissolve delay (months)".into(),
            y_label: "multiplier".into(),
            body: PanelBody::Lines(vec![Series {
                name: "dissolve delay".into(),
                color: BLUE,
                segments: vec![below, above],
            }]),
        },
        Panel {
            title: "Age multiplier".into(),
            x_label: "age (months)".into(),
            y_label: "multiplier".into(),
            body: PanelBody::Lines(vec![Series::line("age", ORANGE, age)]),
        },
    ]
}

fn inflation_panels(s: &SupplySchedule) -> Vec<Panel> {
    let rates = s
        .yearly_rates
        .iter()
        .enumerate()
        .map(|(y, r)| (y as f64, r * 100.0))
        .collect();
    let supplies = s
        .yearly_supplies
        .iter()
        .enumerate()
        .map(|(y, v)| (y as f64, *v))
        .collect();
    vec![
        Panel {
            title: "Inflation rate".into(),
            x_label: "year".into(),
            y_label: "rate (%)".into(),
            body: PanelBody::Lines(vec![Series::line("inflation rate", RED, rates)]),
        },
        Panel {
            title: "Total supply".into(),
            x_label: "year".into(),
            y_label: "tokens".into(),
            body: PanelBody::Lines(vec![Series::line("total supply", BLUE, supplies)]),
        },
    ]
}

fn reward_panels(s: &SupplySchedule) -> Vec<Panel> {
    let monthly = s
        .monthly_rewards
        .iter()
        .enumerate()
        .map(|(t, v)| (t as f64, *v))
        .collect();
    let yearly = s
        .yearly_rewards
        .iter()
        .enumerate()
        .map(|(y, v)| (y as f64, *v))
        .collect();
    vec![
        Panel {
            title: "Monthly reward".into(),
            x_label: "month".into(),
            y_label: "tokens".into(),
            body: PanelBody::Lines(vec![Series::line("monthly reward", GREEN, monthly)]),
        },
        Panel {
            title: "Yearly reward".into(),
            x_label: "year".into(),
            y_label: "tokens".into(),
            body: PanelBody::Lines(vec![Series::line("yearly reward", PURPLE, yearly)]),
        },
    ]
}

fn governor_panels(frames: &[MetricsFrame]) -> Vec<Panel> {
    let series = |name: &str, color, f: fn(&MetricsFrame) -> f64| {
        Series::line(name, color, frames.iter().map(|m| (m.month as f64, f(m))).collect())
    };
    vec![
        Panel {
            title: "Governors".into(),
            x_label: "month".into(),
            y_label: "count".into(),
            body: PanelBody::Lines(vec![series("governors", BLUE, |m| m.governor_count as f64)]),
        },
        Panel {
            title: "Tokens by state".into(),
            x_label: "month".into(),
            y_label: "tokens".into(),
            body: PanelBody::Lines(vec![
                series("staking", GREEN, |m| m.tokens_staking),
                series("dissolving", ORANGE, |m| m.tokens_dissolving),
                series("liquid", BLUE, |m| m.tokens_liquid),
            ]),
        },
    ]
}

fn percentage_panel(frames: &[MetricsFrame]) -> Panel {
    let series = |name: &str, color, f: fn(&MetricsFrame) -> f64| {
        Series::line(
            name,
            color,
            frames.iter().map(|m| (m.month as f64, 100.0 * f(m))).collect(),
        )
    };
    Panel {
        title: "Share of tokens".into(),
        x_label: "month".into(),
        y_label: "percent".into(),
        body: PanelBody::Stacked(vec![
            series("staking", GREEN, |m| m.pct_staking),
            series("dissolving", ORANGE, |m| m.pct_dissolving),
            series("liquid", BLUE, |m| m.pct_liquid),
        ]),
    }
}

fn histogram_panels(p: &PopulationSummary) -> Vec<Panel> {
    let labels = [
        ("Endowment", "tokens", BLUE),
        ("Staking threshold", "annualized ratio", ORANGE),
        ("Liquidity preference", "months", GREEN),
    ];
    p.features()
        .into_iter()
        .zip(labels)
        .map(|(f, (title, x_label, color))| Panel {
            title: title.into(),
            x_label: x_label.into(),
            y_label: "agents".into(),
            body: PanelBody::Bars(
                Series::line(&f.feature, color, Vec::new()),
                f.histogram.clone(),
            ),
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a >= 1e9 {
        format!("{:.2}B", v / 1e9)
    } else if a >= 1e6 {
        format!("{:.1}M", v / 1e6)
    } else if a >= 1e4 {
        format!("{:.1}k", v / 1e3)
    } else if a >= 10.0 || v == 0.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x.0) / (self.x.1 - self.x.0) * self.width
    }

    fn py(&self, y: f64) -> f64 {
        self.top + self.height - (y - self.y.0) / (self.y.1 - self.y.0) * self.height
    }
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo, lo + 1.0)
    } else {
        (lo, hi)
    }
}

fn render(title: &str, panels: &[Panel]) -> String {
    let height = TITLE_HEIGHT + PANEL_HEIGHT * panels.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(WIDTH),
        h = num(height)
    );
    let _ = writeln!(svg, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="26" text-anchor="middle" {FONT} font-size="18" font-weight="bold">{}</text>"#,
        num(WIDTH / 2.0),
        escape(title)
    );
    for (i, panel) in panels.iter().enumerate() {
        render_panel(&mut svg, panel, TITLE_HEIGHT + PANEL_HEIGHT * i as f64);
    }
    svg.push_str("</svg>\n");
    svg
}

fn render_panel(svg: &mut String, panel: &Panel, offset: f64) {
    let (x_range, y_range) = match &panel.body {
        PanelBody::Lines(series) => {
            let x = extent(series.iter().flat_map(|s| s.points().map(|p| p.0)));
            let (lo, hi) = extent(series.iter().flat_map(|s| s.points().map(|p| p.1)));
            (x, (lo.min(0.0), hi * 1.05))
        }
        PanelBody::Stacked(series) => {
            let x = extent(series.iter().flat_map(|s| s.points().map(|p| p.0)));
            (x, (0.0, 100.0))
        }
        PanelBody::Bars(_, h) => {
            let top = h.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
            ((h.lo, h.hi), (0.0, top * 1.05))
        }
    };
    let frame = Frame {
        left: MARGIN_LEFT,
        top: offset + MARGIN_TOP,
        width: WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        height: PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        x: x_range,
        y: y_range,
    };
    let bottom = frame.top + frame.height;
    let right = frame.left + frame.width;

    let _ = writeln!(svg, r#"<g class="panel">"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" {FONT} font-size="14">{}</text>"#,
        num(frame.left + frame.width / 2.0),
        num(offset + 22.0),
        escape(&panel.title)
    );
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let yv = frame.y.0 + frac * (frame.y.1 - frame.y.0);
        let py = frame.py(yv);
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#e5e5e5" stroke-width="1"/>"##,
            num(frame.left),
            num(py),
            num(right),
            num(py)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end" {FONT} font-size="11">{}</text>"#,
            num(frame.left - 6.0),
            num(py + 4.0),
            tick_label(yv)
        );
        let xv = frame.x.0 + frac * (frame.x.1 - frame.x.0);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle" {FONT} font-size="11">{}</text>"#,
            num(frame.px(xv)),
            num(bottom + 16.0),
            tick_label(xv)
        );
    }
    let _ = writeln!(
        svg,
        r##"<path d="M {l} {t} L {l} {b} L {r} {b}" fill="none" stroke="#333333" stroke-width="1.5"/>"##,
        l = num(frame.left),
        t = num(frame.top),
        b = num(bottom),
        r = num(right)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" {FONT} font-size="12">{}</text>"#,
        num(frame.left + frame.width / 2.0),
        num(bottom + 36.0),
        escape(&panel.x_label)
    );
    let ymid = frame.top + frame.height / 2.0;
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" text-anchor="middle" {FONT} font-size="12" transform="rotate(-90 {x} {y})">{}</text>"#,
        escape(&panel.y_label),
        x = num(22.0),
        y = num(ymid)
    );

    let legend: Vec<&Series> = match &panel.body {
        PanelBody::Lines(series) => {
            for s in series {
                let mut d = String::new();
                for seg in &s.segments {
                    for (i, &(x, y)) in seg.iter().enumerate() {
                        let cmd = if i == 0 { 'M' } else { 'L' };
                        let _ = write!(d, "{}{cmd} {} {}", if d.is_empty() { "" } else { " " }, num(frame.px(x)), num(frame.py(y)));
                    }
                }
                let _ = writeln!(
                    svg,
                    r#"<path class="series" data-series="{}" d="{d}" fill="none" stroke="{}" stroke-width="2"/>"#,
                    escape(&s.name),
                    s.color
                );
            }
            series.iter().collect()
        }
        PanelBody::Stacked(series) => {
            let n = series.first().map_or(0, |s| s.points().count());
            let mut base = vec![0.0; n];
            for s in series {
                let pts: Vec<(f64, f64)> = s.points().copied().collect();
                let upper: Vec<(f64, f64)> = pts
                    .iter()
                    .zip(&base)
                    .map(|(&(x, y), &b)| (x, b + y))
                    .collect();
                let mut d = String::new();
                for (i, &(x, y)) in upper.iter().enumerate() {
                    let cmd = if i == 0 { 'M' } else { 'L' };
                    let _ = write!(d, "{}{cmd} {} {}", if d.is_empty() { "" } else { " " }, num(frame.px(x)), num(frame.py(y)));
                }
                for (&(x, _), &b) in pts.iter().zip(&base).rev() {
                    let _ = write!(d, " L {} {}", num(frame.px(x)), num(frame.py(b)));
                }
                if !d.is_empty() {
                    d.push_str(" Z");
                }
                let _ = writeln!(
                    svg,
                    r#"<path class="series" data-series="{}" d="{d}" fill="{}" fill-opacity="0.75" stroke="{}" stroke-width="1"/>"#,
                    escape(&s.name),
                    s.color,
                    s.color
                );
                for (b, (_, top)) in base.iter_mut().zip(upper) {
                    *b = top;
                }
            }
            series.iter().collect()
        }
        PanelBody::Bars(s, h) => {
            let _ = writeln!(svg, r#"<g class="series" data-series="{}">"#, escape(&s.name));
            for (lo, hi, count) in h.bins() {
                let (x0, x1) = (frame.px(lo), frame.px(hi));
                let y = frame.py(count as f64);
                let _ = writeln!(
                    svg,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                    num(x0),
                    num(y),
                    num((x1 - x0).max(0.0)),
                    num(bottom - y),
                    s.color
                );
            }
            svg.push_str("</g>\n");
            vec![s]
        }
    };

    for (i, s) in legend.iter().enumerate() {
        let ly = frame.top + 10.0 + 20.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{}" width="14" height="10" fill="{}"/>"#,
            num(right + 16.0),
            num(ly - 9.0),
            s.color
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" {FONT} font-size="12">{}</text>"#,
            num(right + 36.0),
            num(ly),
            escape(&s.name)
        );
    }
    svg.push_str("</g>\n");
}
