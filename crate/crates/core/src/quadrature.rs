// SPDX-License-Identifier: Apache-2.0

//! Composite Gauss-Legendre quadrature over `u = ln E`.
//!
//! The band is cut into panels of equal width in `u` (a fixed number per
//! decade), then any panel whose top edge would carry more than `π/4` of
//! oscillation phase is split further. The whole panel set is refined
//! dyadically until two successive levels agree to `rel_tol`.

use core::f64::consts::FRAC_PI_4;

use crate::spectra::Band;
use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
/// 10-point Gauss-Legendre nodes on `[-1, 1]` (positive half).
const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_21,
    0.433_395_394_129_247_19,
    0.679_409_568_299_024_41,
    0.865_063_366_688_984_51,
    0.973_906_528_517_171_72,
];
#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_87,
    0.269_266_719_309_996_36,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_59,
    0.066_671_344_308_688_14,
];

/// Deepest dyadic refinement allowed (2^16 sub-panels per base panel).
pub const MAX_REFINEMENTS: u32 = 16;

/// Tolerances below this sit at the f64 rounding floor and never converge.
pub const MIN_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_refinements: u32,
    pub panels_per_decade: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_refinements: MAX_REFINEMENTS,
            panels_per_decade: 8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= MIN_REL_TOL) {
            return Err(Error::domain("rel_tol", self.rel_tol));
        }
        if !(1..=MAX_REFINEMENTS).contains(&self.max_refinements) {
            return Err(Error::domain(
                "max_refinements",
                self.max_refinements as f64,
            ));
        }
        if self.panels_per_decade < 1 {
            return Err(Error::domain(
                "panels_per_decade",
                self.panels_per_decade as f64,
            ));
        }
        Ok(())
    }
}

/// Result of one converged integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Relative difference between the last two refinement levels.
    pub est_rel_error: f64,
    pub evaluations: u64,
}

impl Integral {
    pub const ZERO: Integral = Integral {
        value: 0.0,
        est_rel_error: 0.0,
        evaluations: 0,
    };
}

/// Base panel boundaries in `u`, already split for the oscillation guard.
fn base_panels(band: &Band, spec: &QuadratureSpec, phase_rate: f64) -> alloc::vec::Vec<(f64, f64)> {
    let u_lo = libm::log(band.lo());
    let u_hi = libm::log(band.hi());
    let decades = (u_hi - u_lo) / core::f64::consts::LN_10;
    let n = libm::ceil(decades * spec.panels_per_decade as f64).max(1.0) as usize;
    let h = (u_hi - u_lo) / n as f64;

    let mut panels = alloc::vec::Vec::with_capacity(n);
    for i in 0..n {
        let a = u_lo + h * i as f64;
        let b = if i + 1 == n {
            u_hi
        } else {
            u_lo + h * (i + 1) as f64
        };
        // The top sub-panel of a uniform u-split is the widest in E, so it
        // alone decides the split count: E_top (1 - e^{-w}) rate <= π/4.
        let e_top = libm::exp(b);
        let limit = FRAC_PI_4 / (phase_rate * e_top);
        let splits = if phase_rate <= 0.0 || limit >= 1.0 {
            1
        } else {
            let w_max = -libm::log1p(-limit);
            libm::ceil((b - a) / w_max).max(1.0) as usize
        };
        let w = (b - a) / splits as f64;
        for j in 0..splits {
            let lo = a + w * j as f64;
            let hi = if j + 1 == splits {
                b
            } else {
                a + w * (j + 1) as f64
            };
            panels.push((lo, hi));
        }
    }
    panels
}

fn gauss_legendre<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        acc += w * (g(c - h * x) + g(c + h * x));
    }
    acc * h
}

fn level_sum<F: Fn(f64) -> f64>(g: &F, panels: &[(f64, f64)], level: u32) -> f64 {
    let parts = 1u64 << level;
    let mut total = 0.0;
    for &(a, b) in panels {
        let w = (b - a) / parts as f64;
        for k in 0..parts {
            let lo = a + w * k as f64;
            let hi = if k + 1 == parts {
                b
            } else {
                a + w * (k + 1) as f64
            };
            total += gauss_legendre(g, lo, hi);
        }
    }
    total
}

/// `∫_{band} f(E) dE`, evaluated as `∫ f(e^u) e^u du`.
///
/// `phase_rate` is `dφ/dE` of the fastest oscillating factor in `f`
/// (e.g. `t/2` for `sin^2(E t / 2)`); zero disables the oscillation guard.
pub fn integrate_log_band<F>(
    f: F,
    band: &Band,
    phase_rate: f64,
    spec: &QuadratureSpec,
) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let g = |u: f64| {
        let e = libm::exp(u);
        f(e) * e
    };
    let panels = base_panels(band, spec, phase_rate);
    let nodes_per_panel = 2 * GL_NODES.len() as u64;

    let mut previous = level_sum(&g, &panels, 0);
    let mut evaluations = panels.len() as u64 * nodes_per_panel;
    let mut rel_change = f64::INFINITY;

    for level in 1..=spec.max_refinements {
        let current = level_sum(&g, &panels, level);
        evaluations += panels.len() as u64 * (1u64 << level) * nodes_per_panel;
        let delta = (current - previous).abs();
        rel_change = if current == 0.0 {
            if delta == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            delta / current.abs()
        };
        previous = current;
        if rel_change <= spec.rel_tol {
            return Ok(Integral {
                value: current,
                est_rel_error: rel_change,
                evaluations,
            });
        }
    }
    Err(Error::NonConvergence {
        best_estimate: previous,
        achieved_rel_error: rel_change,
        refinements: spec.max_refinements,
    })
}
