// SPDX-License-Identifier: Apache-2.0

//! Flat `key = value` configuration files.
//!
//! ```text
//! # comments start with '#'
//! temp_k = 0.03, 0.15, 0.1875
//! alpha_f = 1e-7
//! ohmic_band_ghz = 1:50
//! t_grid = 0:0.02:201
//! ```
//!
//! Keys may use `-` or `_`. Every key maps onto one field of
//! [`ConfigOverrides`]; values given on the command line take precedence.

use std::path::Path;

use jcq_core::dynamics::QubitState;
use jcq_core::scenario::{ConfigOverrides, KappaSource, TimeGrid};
use jcq_core::spectra::CutoffSign;
use jcq_core::units::BandInterpretation;
use jcq_core::Complex64;

use crate::CliError;

fn err(key: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("`{key}`: {msg}"))
}

pub fn parse_f64(key: &str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| err(key, format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(err(key, format!("not finite: {s:?}")));
    }
    Ok(v)
}

pub fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, CliError> {
    let values = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_f64(key, p))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(err(key, "empty list"));
    }
    Ok(values)
}

/// `lo:hi`.
pub fn parse_pair(key: &str, s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi] => Ok((parse_f64(key, lo)?, parse_f64(key, hi)?)),
        _ => Err(err(key, format!("expected lo:hi, got {s:?}"))),
    }
}

/// `start:stop:points`.
pub fn parse_grid(key: &str, s: &str) -> Result<TimeGrid, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, points] => Ok(TimeGrid {
            start: parse_f64(key, start)?,
            stop: parse_f64(key, stop)?,
            points: points
                .trim()
                .parse()
                .map_err(|_| err(key, format!("point count not an integer: {points:?}")))?,
        }),
        _ => Err(err(key, format!("expected start:stop:points, got {s:?}"))),
    }
}

pub fn parse_cutoff_sign(key: &str, s: &str) -> Result<CutoffSign, CliError> {
    match s.trim() {
        "neg" | "negative" => Ok(CutoffSign::Negative),
        "pos" | "positive" => Ok(CutoffSign::Positive),
        other => Err(err(key, format!("expected neg or pos, got {other:?}"))),
    }
}

pub fn parse_band_interpretation(key: &str, s: &str) -> Result<BandInterpretation, CliError> {
    match s.trim() {
        "ordinary" | "nu" => Ok(BandInterpretation::Ordinary),
        "angular" | "omega" => Ok(BandInterpretation::Angular),
        other => Err(err(
            key,
            format!("expected ordinary or angular, got {other:?}"),
        )),
    }
}

/// `rho00:rho11:re(rho10):im(rho10)`.
pub fn parse_state(key: &str, s: &str) -> Result<QubitState, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, re, im] = parts.as_slice() else {
        return Err(err(key, format!("expected rho00:rho11:re:im, got {s:?}")));
    };
    QubitState::new(
        parse_f64(key, a)?,
        parse_f64(key, b)?,
        Complex64::new(parse_f64(key, re)?, parse_f64(key, im)?),
    )
    .map_err(|e| err(key, e))
}

fn parse_u32(key: &str, s: &str) -> Result<u32, CliError> {
    s.trim()
        .parse()
        .map_err(|_| err(key, format!("not an integer: {s:?}")))
}

/// Parses configuration text. `origin` labels error messages.
pub fn parse_config(text: &str, origin: &str) -> Result<ConfigOverrides, CliError> {
    let mut o = ConfigOverrides::default();
    let mut c_g: Option<f64> = None;
    let mut c_j: Option<f64> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{origin}:{}: expected `key = value`, got {line:?}",
                lineno + 1
            )));
        };
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        let k = key.as_str();
        match k {
            "ej_uev" | "e_j_uev" => o.e_j_uev = Some(parse_f64(k, value)?),
            "temp_k" | "temperatures_k" => o.temperatures_k = Some(parse_list(k, value)?),
            "eta" => o.eta = Some(parse_f64(k, value)?),
            "e_cut_ghz" => o.e_cut_ghz = Some(parse_f64(k, value)?),
            "cutoff_sign" => o.cutoff_sign = Some(parse_cutoff_sign(k, value)?),
            "alpha_f" | "alpha_f_values" => o.alpha_f_values = Some(parse_list(k, value)?),
            "kappa_uev2" => o.kappa_source = Some(KappaSource::Direct(parse_f64(k, value)?)),
            "c_g_f" => c_g = Some(parse_f64(k, value)?),
            "c_j_f" => c_j = Some(parse_f64(k, value)?),
            "ohmic_band_ghz" => o.ohmic_band_ghz = Some(parse_pair(k, value)?),
            "f_band_hz" | "oneoverf_band_hz" => o.oneoverf_band_hz = Some(parse_pair(k, value)?),
            "band" | "band_interpretation" => {
                o.band_interpretation = Some(parse_band_interpretation(k, value)?)
            }
            "t_grid" => o.t_grid = Some(parse_grid(k, value)?),
            "initial_state" => o.initial_state = Some(parse_state(k, value)?),
            "rel_tol" => o.rel_tol = Some(parse_f64(k, value)?),
            "max_refinements" => o.max_refinements = Some(parse_u32(k, value)?),
            "panels_per_decade" => o.panels_per_decade = Some(parse_u32(k, value)?),
            _ => {
                return Err(CliError::Config(format!(
                    "{origin}:{}: unknown key `{key}`",
                    lineno + 1
                )))
            }
        }
    }

    match (c_g, c_j) {
        (None, None) => {}
        (Some(c_g_f), Some(c_j_f)) => {
            if o.kappa_source.is_some() {
                return Err(err(
                    "kappa_uev2",
                    "give either kappa_uev2 or c_g_f/c_j_f, not both",
                ));
            }
            o.kappa_source = Some(KappaSource::Circuit { c_g_f, c_j_f });
        }
        _ => return Err(err("c_g_f", "c_g_f and c_j_f must be given together")),
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<ConfigOverrides, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}
