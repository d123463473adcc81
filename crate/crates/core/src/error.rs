// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Quadrature did not reach the requested tolerance.
    NonConvergence {
        best_estimate: f64,
        achieved_rel_error: f64,
        refinements: u32,
    },
    /// Non-convergence while evaluating one point of a sweep.
    SweepPoint {
        t: f64,
        source: &'static str,
        best_estimate: f64,
        achieved_rel_error: f64,
    },
    /// The threshold is not bracketed by the search interval.
    Bracket {
        lo: f64,
        hi: f64,
        d_lo: f64,
        d_hi: f64,
        threshold: f64,
    },
    /// Invalid scenario configuration.
    Config {
        field: &'static str,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::Config {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value:e}"),
            Error::NonConvergence {
                best_estimate,
                achieved_rel_error,
                refinements,
            } => write!(
                f,
                "integration did not converge after {refinements} refinements \
                 (best estimate {best_estimate:e}, relative error {achieved_rel_error:e})"
            ),
            Error::SweepPoint {
                t,
                source,
                best_estimate,
                achieved_rel_error,
            } => write!(
                f,
                "{source} kernel did not converge at t = {t:e} \
                 (best estimate {best_estimate:e}, relative error {achieved_rel_error:e})"
            ),
            Error::Bracket {
                lo,
                hi,
                d_lo,
                d_hi,
                threshold,
            } => write!(
                f,
                "threshold {threshold:e} not bracketed: D({lo:e}) = {d_lo:e}, D({hi:e}) = {d_hi:e}"
            ),
            Error::Config { field, message } => write!(f, "invalid `{field}`: {message}"),
        }
    }
}

impl core::error::Error for Error {}
