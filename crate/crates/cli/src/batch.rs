use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};
use toricity_core::crn::{analyze_network, AcrStatus, NetworkOptions};
use toricity_core::toricity::{analyze, AnalyzeOptions, GroupMode, ToricityReport};

use crate::input::{load_model, Model};
use crate::render::{cosets_summary, injectivity_identifier, SCHEMA};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct BatchRow {
    pub model: String,
    pub kind: Option<&'static str>,
    pub seed: u64,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub s: Option<usize>,
    pub d: Option<usize>,
    /// Frozen verdict identifier, or `error` / `timeout`.
    pub verdict: String,
    pub nondegeneracy: Option<&'static str>,
    pub injectivity: Option<&'static str>,
    pub mixed_volume: Option<String>,
    pub cosets: Option<String>,
    pub acr: Vec<String>,
    pub multistationarity: Option<&'static str>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub models: usize,
    pub verdicts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub schema: u64,
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub jobs: usize,
    pub timeout: Duration,
    pub seed: u64,
    pub mode: GroupMode,
    /// Record wall time per model; this makes reports differ between runs.
    pub timings: bool,
}

/// Seed of one model: the base seed mixed with the hash of its file name.
pub fn model_seed(base: u64, name: &str) -> u64 {
    let digest = Sha256::digest(name.as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    base ^ u64::from_le_bytes(bytes)
}

/// Regular, non-hidden files of `dir`, sorted by file name.
pub fn model_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.')))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn empty_row(model: String, seed: u64) -> BatchRow {
    BatchRow {
        model,
        kind: None,
        seed,
        n: None,
        m: None,
        s: None,
        d: None,
        verdict: String::new(),
        nondegeneracy: None,
        injectivity: None,
        mixed_volume: None,
        cosets: None,
        acr: Vec::new(),
        multistationarity: None,
        error: None,
        wall_time_ms: None,
    }
}

fn fill(row: &mut BatchRow, report: &ToricityReport) {
    row.n = Some(report.n);
    row.m = Some(report.m);
    row.s = Some(report.s);
    row.d = report.d();
    row.verdict = report.verdict.identifier().to_string();
    row.nondegeneracy = Some(report.nondegeneracy_status().identifier());
    row.injectivity = Some(injectivity_identifier(report));
    row.mixed_volume = report.mixed_volume.as_ref().map(ToString::to_string);
    row.cosets = cosets_summary(report);
}

fn analyze_model(path: &Path, mode: GroupMode, seed: u64, mut row: BatchRow) -> BatchRow {
    let result = load_model(path).and_then(|model| {
        row.kind = Some(model.kind());
        match model {
            Model::Matrices { system, mode: file_mode } => {
                let report = analyze(&system, file_mode.unwrap_or(mode), seed, &AnalyzeOptions::default());
                fill(&mut row, &report);
            }
            Model::Network(net) => {
                let report = analyze_network(&net, mode, seed, &NetworkOptions::default())?;
                let shown = match &report.reduced {
                    Some(r) if report.verdict_from_reduction => &r.report,
                    _ => &report.direct,
                };
                fill(&mut row, shown);
                row.n = Some(report.direct.n);
                row.m = Some(report.direct.m);
                row.s = Some(report.direct.s);
                row.d = report.direct.d();
                row.verdict = report.verdict.identifier().to_string();
                row.acr = report
                    .acr
                    .iter()
                    .flatten()
                    .filter(|(_, s)| *s == AcrStatus::Acr)
                    .map(|(i, _)| net.species()[*i].clone())
                    .collect();
                row.multistationarity = report.multistationarity.as_ref().map(|m| m.identifier());
            }
        }
        Ok(())
    });
    if let Err(e) = result {
        row.verdict = "error".into();
        row.error = Some(e.to_string());
    }
    row
}

fn run_one(path: &Path, options: &BatchOptions) -> BatchRow {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
    let seed = model_seed(options.seed, &name);
    let row = empty_row(name, seed);
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    let (path_owned, mode, fallback) = (path.to_path_buf(), options.mode, row.clone());
    std::thread::spawn(move || {
        let _ = tx.send(analyze_model(&path_owned, mode, seed, row));
    });
    let mut row = match rx.recv_timeout(options.timeout) {
        Ok(row) => row,
        Err(mpsc::RecvTimeoutError::Timeout) => {
            let mut row = fallback;
            row.verdict = "timeout".into();
            row.error = Some(format!("exceeded {} s", options.timeout.as_secs_f64()));
            row
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => {
            let mut row = fallback;
            row.verdict = "error".into();
            row.error = Some("analysis panicked".into());
            row
        }
    };
    if options.timings {
        row.wall_time_ms = Some(start.elapsed().as_millis());
    }
    row
}

pub fn run_batch(dir: &Path, options: &BatchOptions) -> Result<BatchReport, CliError> {
    let files = model_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| CliError::Failed(format!("cannot start the work pool: {e}")))?;
    let rows: Vec<BatchRow> = pool.install(|| {
        use rayon::prelude::*;
        files.par_iter().map(|p| run_one(p, options)).collect()
    });
    let mut verdicts = BTreeMap::new();
    for row in &rows {
        *verdicts.entry(row.verdict.clone()).or_insert(0) += 1;
    }
    Ok(BatchReport {
        schema: SCHEMA,
        summary: BatchSummary {
            models: rows.len(),
            verdicts,
        },
        rows,
    })
}

pub fn batch_text(report: &BatchReport) -> String {
    let mut out = String::new();
    for row in &report.rows {
        out.push_str(&format!(
            "{:<32} {:<26} {}\n",
            row.model,
            row.verdict,
            row.error.as_deref().unwrap_or("")
        ));
    }
    out.push_str(&format!("{} models", report.summary.models));
    for (verdict, count) in &report.summary.verdicts {
        out.push_str(&format!(", {verdict}: {count}"));
    }
    out.push('\n');
    out
}
