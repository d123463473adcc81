// SPDX-License-Identifier: Apache-2.0

//! Sweep drivers that evaluate grid points in parallel and write results.
//!
//! Every grid point is an independent kernel evaluation. Points are computed
//! on the rayon pool and reassembled in `(curve, t)` order, so the output
//! bytes never depend on scheduling.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use jcq_core::scenario::{
    ConfigOverrides, Figure, Scenario, ScenarioConfig, SweepResult, SweepRow,
};

use crate::{csv, manifest, CliError};

/// Evaluates all curves of `scenario`.
pub fn run_parallel(scenario: &Scenario) -> Result<Vec<SweepResult>, jcq_core::Error> {
    let curves = scenario.curves();
    let ts = scenario.t_values();
    let jobs: Vec<(usize, f64)> = (0..curves.len())
        .flat_map(|c| ts.iter().map(move |&t| (c, t)))
        .collect();
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|&(c, t)| scenario.row(&curves[c], t))
        .collect::<Result<_, _>>()?;
    Ok(curves
        .iter()
        .zip(rows.chunks(ts.len()))
        .map(|(curve, chunk)| SweepResult {
            curve: *curve,
            rows: chunk.to_vec(),
        })
        .collect())
}

/// Files produced by one run.
#[derive(Debug, Clone)]
pub struct Written {
    pub manifest: PathBuf,
    pub csv_files: Vec<PathBuf>,
    pub results: Vec<SweepResult>,
}

pub fn curve_file_name(prefix: &str, index: usize) -> String {
    format!("{prefix}_{index:02}.csv")
}

pub fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("manifest serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Resolves `config`, runs it and writes `<prefix>_NN.csv` plus
/// `<prefix>_manifest.json` into `out_dir`.
pub fn sweep_to_dir(
    config: &ScenarioConfig,
    out_dir: &Path,
    prefix: &str,
    notes: &[&str],
) -> Result<Written, CliError> {
    let scenario = config.resolve()?;
    let results = run_parallel(&scenario)?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;

    let mut csv_files = Vec::with_capacity(results.len());
    let mut entries = Vec::with_capacity(results.len());
    for (i, r) in results.iter().enumerate() {
        let name = curve_file_name(prefix, i);
        let path = out_dir.join(&name);
        csv::emit_csv(r, &path)?;
        entries.push(manifest::curve(&name, r));
        csv_files.push(path);
    }

    let doc = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "run": prefix,
        "csv_header": csv::HEADER,
        "config": manifest::config(config),
        "resolved": manifest::resolved(&scenario),
        "constants": manifest::constants(),
        "curves": entries,
        "notes": notes,
    });
    let manifest_path = out_dir.join(format!("{prefix}_manifest.json"));
    write_json(&manifest_path, &doc)?;
    Ok(Written {
        manifest: manifest_path,
        csv_files,
        results,
    })
}

pub fn figure_to_dir(
    figure: Figure,
    overrides: &ConfigOverrides,
    out_dir: &Path,
) -> Result<Written, CliError> {
    let config = overrides.applied_to(figure.config());
    sweep_to_dir(&config, out_dir, figure.name(), figure.notes())
}
