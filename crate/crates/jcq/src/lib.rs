// SPDX-License-Identifier: Apache-2.0

//! File formats, configuration ingestion and parallel sweep drivers for
//! [`jcq_core`].

pub mod config;
pub mod csv;
mod error;
pub mod manifest;
pub mod run;

pub use error::{CliError, ExitCode};
