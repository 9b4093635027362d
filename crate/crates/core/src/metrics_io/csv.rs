use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::population::{AgentProfile, PopulationSummary};
use crate::scenarios::ScenarioResult;

use super::MetricsFrame;

pub const FRAME_COLUMNS: [&str; 11] = [
    "month",
    "governor_count",
    "tokens_liquid",
    "tokens_staking",
    "tokens_dissolving",
    "pct_liquid",
    "pct_staking",
    "pct_dissolving",
    "total_supply",
    "minted_this_month",
    "mean_realized_annualized_ratio",
];

/// 17 significant digits; parses back to the identical `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer(path: &Path) -> Result<::csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_err(path: &Path, e: ::csv::Error) -> Error {
    match e.into_kind() {
        ::csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::Csv {
            path: path.to_path_buf(),
            reason: format!("{other:?}"),
        },
    }
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = writer(path)?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn frame_row(f: &MetricsFrame) -> Vec<String> {
    vec![
        f.month.to_string(),
        f.governor_count.to_string(),
        format_float(f.tokens_liquid),
        format_float(f.tokens_staking),
        format_float(f.tokens_dissolving),
        format_float(f.pct_liquid),
        format_float(f.pct_staking),
        format_float(f.pct_dissolving),
        format_float(f.total_supply),
        format_float(f.minted_this_month),
        format_float(f.mean_realized_annualized_ratio),
    ]
}

pub fn export_csv(frames: &[MetricsFrame], path: &Path) -> Result<()> {
    if frames.is_empty() {
        return Err(Error::EmptyFrames);
    }
    write_rows(path, &FRAME_COLUMNS, frames.iter().map(frame_row))
}

pub fn import_csv(path: &Path) -> Result<Vec<MetricsFrame>> {
    let mut reader = ::csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let bad = |reason: String| Error::Csv {
        path: path.to_path_buf(),
        reason,
    };
    let header = reader.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().ne(FRAME_COLUMNS.iter().copied()) {
        return Err(bad(format!("unexpected header {header:?}")));
    }
    let mut frames = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_err(path, e))?;
        let float = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| bad(format!("row {}: bad {} `{}`", line + 1, FRAME_COLUMNS[i], &record[i])))
        };
        let int = |i: usize| -> Result<u32> {
            record[i]
                .parse()
                .map_err(|_| bad(format!("row {}: bad {} `{}`", line + 1, FRAME_COLUMNS[i], &record[i])))
        };
        frames.push(MetricsFrame {
            month: int(0)?,
            governor_count: int(1)?,
            tokens_liquid: float(2)?,
            tokens_staking: float(3)?,
            tokens_dissolving: float(4)?,
            pct_liquid: float(5)?,
            pct_staking: float(6)?,
            pct_dissolving: float(7)?,
            total_supply: float(8)?,
            minted_this_month: float(9)?,
            mean_realized_annualized_ratio: float(10)?,
        });
    }
    Ok(frames)
}

/// Array of objects keyed by the CSV column names.
pub fn export_json(frames: &[MetricsFrame], path: &Path) -> Result<()> {
    if frames.is_empty() {
        return Err(Error::EmptyFrames);
    }
    let mut text = serde_json::to_string_pretty(frames).expect("frames serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn export_population_csv(profiles: &[AgentProfile], path: &Path) -> Result<()> {
    write_rows(
        path,
        &["agent_id", "endowment", "threshold", "liquidity_preference"],
        profiles.iter().map(|p| {
            vec![
                p.agent_id.to_string(),
                format_float(p.endowment),
                format_float(p.staking_threshold),
                p.liquidity_preference.to_string(),
            ]
        }),
    )
}

pub fn export_histogram_csv(summary: &PopulationSummary, path: &Path) -> Result<()> {
    let rows = summary.features().into_iter().flat_map(|f| {
        f.histogram.bins().map(move |(lo, hi, count)| {
            vec![
                f.feature.clone(),
                format_float(lo),
                format_float(hi),
                count.to_string(),
            ]
        })
    });
    write_rows(path, &["feature", "bin_lo", "bin_hi", "count"], rows)
}

pub fn export_summary_csv(results: &[ScenarioResult], path: &Path) -> Result<()> {
    write_rows(
        path,
        &[
            "scenario",
            "mean_staking_ratio",
            "staking_ratio_volatility",
            "final_supply",
            "final_governor_count",
        ],
        results.iter().map(|r| {
            vec![
                r.name.clone(),
                format_float(r.summary.mean_staking_ratio),
                format_float(r.summary.staking_ratio_volatility),
                format_float(r.summary.final_supply),
                r.summary.final_governor_count.to_string(),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frame(month: u32) -> MetricsFrame {
        MetricsFrame {
            month,
            governor_count: 3,
            tokens_liquid: 1.0 / 3.0,
            tokens_staking: 2e8,
            tokens_dissolving: 0.0,
            pct_liquid: 0.1,
            pct_staking: 0.7,
            pct_dissolving: 0.2,
            total_supply: 469e6,
            minted_this_month: 1954166.6666666667,
            mean_realized_annualized_ratio: 0.05,
        }
    }

    #[test]
    fn one_frame_two_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        export_csv(&[frame(0)], &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().next().unwrap(), FRAME_COLUMNS.join(","));
        assert!(text.contains("4.6900000000000000e8"));
    }

    #[test]
    fn empty_frames_write_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        assert!(matches!(export_csv(&[], &path), Err(Error::EmptyFrames)));
        assert!(!path.exists());
        assert!(matches!(export_json(&[], &path), Err(Error::EmptyFrames)));
        assert!(!path.exists());
    }

    #[test]
    fn unwritable_destination_names_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("m.csv");
        match export_csv(&[frame(0)], &path) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
            other => panic!("expected I/O error, got {other:?}"),
        }
    }

    #[test]
    fn import_rejects_wrong_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(import_csv(&path), Err(Error::Csv { .. })));
    }

    #[test]
    fn json_mirrors_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        export_json(&[frame(0), frame(1)], &path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        let keys: Vec<&str> = rows[0].as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = FRAME_COLUMNS.to_vec();
        let mut got = keys.clone();
        expected.sort_unstable();
        got.sort_unstable();
        assert_eq!(got, expected);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn csv_round_trip(values in prop::collection::vec((any::<u32>(), any::<u32>(), prop::array::uniform9(any::<f64>().prop_filter("finite", |x| x.is_finite()))), 1..20)) {
            let frames: Vec<MetricsFrame> = values.iter().map(|(m, g, x)| MetricsFrame {
                month: *m,
                governor_count: *g,
                tokens_liquid: x[0],
                tokens_staking: x[1],
                tokens_dissolving: x[2],
                pct_liquid: x[3],
                pct_staking: x[4],
                pct_dissolving: x[5],
                total_supply: x[6],
                minted_this_month: x[7],
                mean_realized_annualized_ratio: x[8],
            }).collect();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("m.csv");
            export_csv(&frames, &path).unwrap();
            prop_assert_eq!(import_csv(&path).unwrap(), frames);
        }
    }
}
