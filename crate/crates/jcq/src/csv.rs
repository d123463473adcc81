// SPDX-License-Identifier: Apache-2.0

//! Sweep tables as CSV.
//!
//! One header line `t,tau_ps,b2_ohmic,b2_oneoverf,b2_total,D`, then one row
//! per time point. Numbers are written with 17 significant digits in
//! scientific notation, so a parse recovers every `f64` exactly. Lines end
//! in `\n`.

use std::fmt::Write as _;
use std::path::Path;

use jcq_core::scenario::{SweepResult, SweepRow};

use crate::CliError;

pub const HEADER: &str = "t,tau_ps,b2_ohmic,b2_oneoverf,b2_total,D";

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv_string(result: &SweepResult) -> String {
    let mut out = String::with_capacity(HEADER.len() + 1 + result.rows.len() * 140);
    out.push_str(HEADER);
    out.push('\n');
    for r in &result.rows {
        let fields = [r.t, r.tau_ps, r.b2_ohmic, r.b2_oneoverf, r.b2_total, r.d];
        for (i, v) in fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}", format_number(*v)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, to_csv_string(result)).map_err(|e| CliError::io(path, e))
}

/// Parses text produced by [`to_csv_string`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let v = line
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let [t, tau_ps, b2_ohmic, b2_oneoverf, b2_total, d] = v[..] else {
                return Err(format!("row {}: expected 6 fields, got {}", i + 1, v.len()));
            };
            Ok(SweepRow {
                t,
                tau_ps,
                b2_ohmic,
                b2_oneoverf,
                b2_total,
                d,
            })
        })
        .collect()
}
