use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::plateau::PlateauReport;
use super::stage::{BenchReport, ScatterRow, StageOutcome};
use crate::error::{Error, Result};

/// Writes `report_<tag>.json` and `scatter_<tag>.csv`; returns both paths.
pub fn emit_stage(outcome: &StageOutcome, tag: &str, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let report_path = out_dir.join(format!("report_{tag}.json"));
    write_json(&report_path, &outcome.report)?;
    let scatter_path = out_dir.join(format!("scatter_{tag}.csv"));
    write_scatter(&scatter_path, &outcome.scatter)?;
    Ok((report_path, scatter_path))
}

/// Writes one report pair per outcome. Tags are the stage letter, with an
/// `_s<seed>` suffix when a stage appears more than once.
pub fn emit_reports(outcomes: &[StageOutcome], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for outcome in outcomes {
        let stage = outcome.report.stage;
        let repeated = outcomes.iter().filter(|o| o.report.stage == stage).count() > 1;
        let tag = if repeated { format!("{stage}_s{}", outcome.report.seeds.optimizer) } else { stage.to_string() };
        let (r, s) = emit_stage(outcome, &tag, out_dir)?;
        written.extend([r, s]);
    }
    Ok(written)
}

/// Writes `plateau.csv` (`n,variance`) and the full `plateau.json`.
pub fn emit_plateau(report: &PlateauReport, out_dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let csv_path = out_dir.join("plateau.csv");
    let csv_err = |source| Error::Csv { path: csv_path.clone(), source };
    let mut w = csv::Writer::from_path(&csv_path).map_err(csv_err)?;
    w.write_record(["n", "variance"]).map_err(csv_err)?;
    for e in &report.entries {
        w.write_record([e.n_qubits.to_string(), format!("{:e}", e.variance)]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(&csv_path, e))?;
    write_json(&out_dir.join("plateau.json"), report)?;
    Ok(csv_path)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value).map_err(|source| Error::Json { path: path.to_path_buf(), source })?;
    out.write_all(b"\n").and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|source| Error::Json { path: path.to_path_buf(), source })
}

pub fn read_report(path: &Path) -> Result<BenchReport> {
    read_json(path)
}

pub fn write_scatter(path: &Path, rows: &[ScatterRow]) -> Result<()> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    if rows.is_empty() {
        w.write_record(["pc1", "pc2", "true_label", "predicted_label"]).map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_scatter(path: &Path) -> Result<Vec<ScatterRow>> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

/// Reads `plateau.csv` back as `(n, variance)` pairs.
pub fn read_plateau_csv(path: &Path) -> Result<Vec<(usize, f64)>> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}
