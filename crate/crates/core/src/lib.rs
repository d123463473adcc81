// SPDX-License-Identifier: Apache-2.0

//! Short-time decoherence of a single Josephson charge qubit.
//!
//! The qubit sits at the charge degeneracy point and couples to a bosonic
//! bath through `sigma_z`. The bath enters only through its spectral weight
//! `W(E) = D(E) g(E)^2`, for which two families are provided: Ohmic and
//! `1/f`. From the weight the crate computes the dephasing kernel `B^2(t)`
//! by log-space Gauss-Legendre quadrature, the closed-form short-time
//! density-matrix evolution, and the worst-case decoherence measure
//! `D(t) = (1 - exp(-B^2)) / 2`.
//!
//! Unit conventions used throughout:
//!
//! - energies in micro-electronvolts (μeV), including bath-mode "frequencies",
//!   which are carried as `E = h ν`;
//! - time as the dimensionless `t` with phase `E t`, so physical time is
//!   `τ = t ħ` (see [`units::t_to_tau_ps`]);
//! - temperatures in kelvin.
//!
//! The crate is `no_std` and needs only `alloc`. IO, configuration files and
//! the command-line front end live in the `jcq` crate.

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dynamics;
mod error;
pub mod kernel;
pub mod quadrature;
pub mod scenario;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
