//! CSV and JSON export, column-oriented CSV reading, and the run manifest.
//!
//! Data files use UTF-8, LF line endings, and shortest round-trip decimal
//! formatting for reals, so identical configurations always serialize to
//! identical bytes.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::experiment::{
    run_ensemble, EnsembleSummary, ExperimentConfig, ExperimentError, ReproductionReport,
};
use crate::fit::PowerLawFit;
use crate::tally::Trajectory;

pub const SUMMARY_FILE: &str = "summary.csv";
pub const FIT_ALPHA_FILE: &str = "fit_alpha.json";
pub const FIT_BETA_FILE: &str = "fit_beta.json";
pub const MANIFEST_FILE: &str = "manifest.json";

pub fn trajectory_file(run_index: u32) -> String {
    format!("trajectory_run_{run_index}.csv")
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error("column '{column}' not found in {path}")]
    MissingColumn { column: String, path: PathBuf },
    #[error("row {row} of {path}: cannot parse '{value}' in column '{column}'")]
    BadField {
        row: usize,
        column: String,
        value: String,
        path: PathBuf,
    },
    #[error("trajectory has no checkpoints")]
    EmptyTrajectory,
    #[error("{path}: CSV file has no header row")]
    NoHeader { path: PathBuf },
}

/// Trajectory CSV: `n, count_0..count_{k-1}, f_0..f_{k-1}, range, rel_range`.
pub fn write_trajectory_csv<W: Write>(trajectory: &Trajectory, mut w: W) -> Result<(), IoError> {
    let k = trajectory.num_outcomes().ok_or(IoError::EmptyTrajectory)?;
    write!(w, "n")?;
    for i in 0..k {
        write!(w, ",count_{i}")?;
    }
    for i in 0..k {
        write!(w, ",f_{i}")?;
    }
    writeln!(w, ",range,rel_range")?;
    for c in &trajectory.checkpoints {
        write!(w, "{}", c.n)?;
        for count in &c.counts {
            write!(w, ",{count}")?;
        }
        for f in &c.rel_freqs {
            write!(w, ",{f}")?;
        }
        writeln!(w, ",{},{}", c.range, c.rel_range)?;
    }
    Ok(())
}

/// Summary CSV: `n, mean_range, se_range, mean_rel_range, se_rel_range`.
pub fn write_summary_csv<W: Write>(summary: &EnsembleSummary, mut w: W) -> Result<(), IoError> {
    writeln!(w, "n,mean_range,se_range,mean_rel_range,se_rel_range")?;
    for p in &summary.checkpoints {
        writeln!(
            w,
            "{},{},{},{},{}",
            p.n, p.mean_range, p.se_range, p.mean_rel_range, p.se_rel_range
        )?;
    }
    Ok(())
}

/// A power-law fit together with the window it was computed over; this is
/// the on-disk fit JSON schema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    #[serde(flatten)]
    pub fit: PowerLawFit,
    pub fit_window_min_n: u64,
}

pub fn write_fit_json<W: Write>(
    fit: &PowerLawFit,
    fit_window_min_n: u64,
    mut w: W,
) -> Result<(), IoError> {
    let record = FitRecord {
        fit: *fit,
        fit_window_min_n,
    };
    serde_json::to_writer_pretty(&mut w, &record)?;
    writeln!(w)?;
    Ok(())
}

/// What was run, with what configuration, and which files came out.
///
/// Re-running the embedded config reproduces the data files byte for byte;
/// only `timestamp` varies between reruns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub timestamp: String,
    pub output_paths: Vec<String>,
}

pub fn read_manifest(path: &Path) -> Result<RunManifest, IoError> {
    Ok(serde_json::from_reader(File::open(path)?)?)
}

/// Run the configured experiment and write every output file into `out_dir`:
/// one trajectory CSV per run, the ensemble summary CSV, both fit JSONs, and
/// the manifest.
pub fn execute_to_dir(
    config: &ExperimentConfig,
    out_dir: &Path,
) -> Result<(RunManifest, ReproductionReport), IoError> {
    let report = run_ensemble(config)?;
    fs::create_dir_all(out_dir)?;

    let mut output_paths = Vec::new();
    for trajectory in &report.trajectories {
        let name = trajectory_file(trajectory.run_id);
        let file = BufWriter::new(File::create(out_dir.join(&name))?);
        write_trajectory_csv(trajectory, file)?;
        output_paths.push(name);
    }

    let file = BufWriter::new(File::create(out_dir.join(SUMMARY_FILE))?);
    write_summary_csv(&report.summary, file)?;
    output_paths.push(SUMMARY_FILE.to_string());

    let file = BufWriter::new(File::create(out_dir.join(FIT_ALPHA_FILE))?);
    write_fit_json(&report.alpha_fit, report.fit_window_min_n, file)?;
    output_paths.push(FIT_ALPHA_FILE.to_string());

    let file = BufWriter::new(File::create(out_dir.join(FIT_BETA_FILE))?);
    write_fit_json(&report.beta_fit, report.fit_window_min_n, file)?;
    output_paths.push(FIT_BETA_FILE.to_string());

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        output_paths,
    };
    let mut file = BufWriter::new(File::create(out_dir.join(MANIFEST_FILE))?);
    serde_json::to_writer_pretty(&mut file, &manifest)?;
    writeln!(file)?;

    Ok((manifest, report))
}

/// Header row of a CSV file.
pub fn read_headers(path: &Path) -> Result<Vec<String>, IoError> {
    let mut reader = csv::Reader::from_path(path)?;
    if !reader.has_headers() {
        return Err(IoError::NoHeader {
            path: path.to_path_buf(),
        });
    }
    Ok(reader.headers()?.iter().map(str::to_string).collect())
}

/// Read `(x, y)` pairs from two named columns; `x` must hold non-negative
/// integers, `y` reals.
pub fn read_xy_columns(path: &Path, x_column: &str, y_column: &str) -> Result<Vec<(u64, f64)>, IoError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |column: &str| {
        headers
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| IoError::MissingColumn {
                column: column.to_string(),
                path: path.to_path_buf(),
            })
    };
    let xi = find(x_column)?;
    let yi = find(y_column)?;

    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let parse_field = |idx: usize, column: &str| -> Result<&str, IoError> {
            record.get(idx).ok_or_else(|| IoError::BadField {
                row: row + 2,
                column: column.to_string(),
                value: String::new(),
                path: path.to_path_buf(),
            })
        };
        let x_raw = parse_field(xi, x_column)?;
        let y_raw = parse_field(yi, y_column)?;
        let bad = |column: &str, value: &str| IoError::BadField {
            row: row + 2,
            column: column.to_string(),
            value: value.to_string(),
            path: path.to_path_buf(),
        };
        let x: u64 = x_raw.trim().parse().map_err(|_| bad(x_column, x_raw))?;
        let y: f64 = y_raw.trim().parse().map_err(|_| bad(y_column, y_raw))?;
        points.push((x, y));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::run_single;
    use tempfile::tempdir;

    fn sample_report() -> ReproductionReport {
        run_ensemble(&ExperimentConfig::coin(500, 2, 7)).unwrap()
    }

    #[test]
    fn trajectory_csv_round_trips_exactly() {
        let config = ExperimentConfig::coin(500, 1, 7);
        let trajectory = run_single(&config, 0).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&trajectory, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,count_0,count_1,f_0,f_1,range,rel_range\n"));
        assert!(!text.contains('\r'));

        let dir = tempdir().unwrap();
        let path = dir.path().join("t.csv");
        fs::write(&path, &text).unwrap();

        let ns = read_xy_columns(&path, "n", "rel_range").unwrap();
        assert_eq!(ns.len(), trajectory.checkpoints.len());
        for (point, checkpoint) in ns.iter().zip(&trajectory.checkpoints) {
            assert_eq!(point.0, checkpoint.n);
            // shortest round-trip decimals parse back bit-identically
            assert_eq!(point.1, checkpoint.rel_range);
        }
        let counts = read_xy_columns(&path, "n", "count_0").unwrap();
        for (point, checkpoint) in counts.iter().zip(&trajectory.checkpoints) {
            assert_eq!(point.1 as u64, checkpoint.counts[0]);
        }
    }

    #[test]
    fn summary_csv_round_trips_exactly() {
        let report = sample_report();
        let mut buf = Vec::new();
        write_summary_csv(&report.summary, &mut buf).unwrap();
        let dir = tempdir().unwrap();
        let path = dir.path().join("s.csv");
        fs::write(&path, &buf).unwrap();

        for column in ["mean_range", "se_range", "mean_rel_range", "se_rel_range"] {
            let got = read_xy_columns(&path, "n", column).unwrap();
            assert_eq!(got.len(), report.summary.checkpoints.len());
        }
        let rel = read_xy_columns(&path, "n", "mean_rel_range").unwrap();
        for (point, summary_point) in rel.iter().zip(&report.summary.checkpoints) {
            assert_eq!(point.1, summary_point.mean_rel_range);
        }
    }

    #[test]
    fn fit_json_has_exactly_the_documented_keys() {
        let report = sample_report();
        let mut buf = Vec::new();
        write_fit_json(&report.beta_fit, report.fit_window_min_n, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let object = value.as_object().unwrap();
        let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec![
                "dropped_points",
                "exponent",
                "exponent_se",
                "fit_window_min_n",
                "log_amplitude",
                "n_points",
                "r_squared",
            ]
        );
        assert_eq!(
            object["exponent"].as_f64().unwrap(),
            report.beta_fit.exponent
        );
    }

    #[test]
    fn missing_column_is_reported() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("x.csv");
        fs::write(&path, "a,b\n1,2\n").unwrap();
        match read_xy_columns(&path, "a", "nope") {
            Err(IoError::MissingColumn { column, .. }) => assert_eq!(column, "nope"),
            other => panic!("expected MissingColumn, got {other:?}"),
        }
    }

    #[test]
    fn unparsable_field_is_reported_with_location() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("x.csv");
        fs::write(&path, "n,y\n10,1.5\n11,oops\n").unwrap();
        match read_xy_columns(&path, "n", "y") {
            Err(IoError::BadField { row, value, .. }) => {
                assert_eq!(row, 3);
                assert_eq!(value, "oops");
            }
            other => panic!("expected BadField, got {other:?}"),
        }
    }

    #[test]
    fn execute_writes_all_files_and_manifest() {
        let dir = tempdir().unwrap();
        let config = ExperimentConfig::coin(300, 3, 5);
        let (manifest, report) = execute_to_dir(&config, dir.path()).unwrap();
        assert_eq!(report.trajectories.len(), 3);
        assert_eq!(
            manifest.output_paths,
            vec![
                "trajectory_run_0.csv",
                "trajectory_run_1.csv",
                "trajectory_run_2.csv",
                "summary.csv",
                "fit_alpha.json",
                "fit_beta.json",
            ]
        );
        for name in &manifest.output_paths {
            assert!(dir.path().join(name).is_file(), "missing {name}");
        }
        let loaded = read_manifest(&dir.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(loaded.config, config);
        assert_eq!(loaded.output_paths, manifest.output_paths);
    }

    #[test]
    fn manifest_replay_is_byte_identical() {
        let first = tempdir().unwrap();
        let config = ExperimentConfig::coin(400, 2, 99);
        execute_to_dir(&config, first.path()).unwrap();

        let manifest = read_manifest(&first.path().join(MANIFEST_FILE)).unwrap();
        let second = tempdir().unwrap();
        execute_to_dir(&manifest.config, second.path()).unwrap();

        for name in &manifest.output_paths {
            let a = fs::read(first.path().join(name)).unwrap();
            let b = fs::read(second.path().join(name)).unwrap();
            assert_eq!(a, b, "file {name} differs between replays");
        }
    }
}
