// SPDX-License-Identifier: Apache-2.0

//! Bath kernels of the pure-dephasing model.
//!
//! ```text
//! B^2(t) = 8 ∫ dE W(E) E^-2 sin^2(E t / 2) coth(E / 2k_BT)
//! C(t)   =   ∫ dE W(E) E^-2 (E t - sin E t)
//! ```
//!
//! Each noise source is integrated over its own band with
//! [`integrate_log_band`]. [`b_squared_discrete`] evaluates the same kernel
//! as a finite sum over bath modes and serves as an independent check on the
//! quadrature.

use crate::quadrature::{integrate_log_band, Integral, QuadratureSpec};
use crate::spectra::{NoiseModel, Source, Temperature};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelRequest {
    pub model: NoiseModel,
    pub temperature: Temperature,
    pub t: f64,
    pub quadrature: QuadratureSpec,
}

impl KernelRequest {
    pub fn new(model: NoiseModel, temperature: Temperature, t: f64) -> Self {
        Self {
            model,
            temperature,
            t,
            quadrature: QuadratureSpec::default(),
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::domain("t", self.t));
        }
        self.quadrature.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResult {
    pub b_squared: f64,
    pub c_phase: f64,
    /// Largest of the two kernels' relative error estimates.
    pub est_rel_error: f64,
    pub evaluations: u64,
}

fn sum_sources<F>(model: &NoiseModel, mut per_source: F) -> Result<Integral>
where
    F: FnMut(&Source<'_>) -> Result<Integral>,
{
    let mut value = 0.0;
    let mut abs_err = 0.0;
    let mut evaluations = 0;
    for source in model.sources() {
        if source.is_silent() {
            continue;
        }
        let part = per_source(&source)?;
        value += part.value;
        abs_err += part.est_rel_error * part.value.abs();
        evaluations += part.evaluations;
    }
    let est_rel_error = if value == 0.0 {
        0.0
    } else {
        abs_err / value.abs()
    };
    Ok(Integral {
        value,
        est_rel_error,
        evaluations,
    })
}

/// `B^2(t)` for a single source.
pub fn b_squared_source(
    source: &Source<'_>,
    temperature: &Temperature,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Integral> {
    if t == 0.0 || source.is_silent() {
        return Ok(Integral::ZERO);
    }
    let half_t = 0.5 * t;
    integrate_log_band(
        |e| {
            let s = libm::sin(e * half_t);
            8.0 * source.thermal_weight(e, temperature) * s * s / (e * e)
        },
        &source.band(),
        half_t,
        spec,
    )
}

/// Dephasing kernel `B^2(t)`, summed over all sources of the model.
pub fn b_squared(req: &KernelRequest) -> Result<Integral> {
    req.check()?;
    sum_sources(&req.model, |s| {
        b_squared_source(s, &req.temperature, req.t, &req.quadrature)
    })
}

/// `x - sin x` without cancellation for small `x`.
pub(crate) fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        x * x2 / 6.0
            * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
    } else {
        x - libm::sin(x)
    }
}

/// Phase kernel `C(t)`. Nonnegative since `x ≥ sin x` for `x ≥ 0`.
pub fn c_phase(req: &KernelRequest) -> Result<Integral> {
    req.check()?;
    if req.t == 0.0 {
        return Ok(Integral::ZERO);
    }
    let t = req.t;
    let temperature = req.temperature;
    sum_sources(&req.model, |s| {
        integrate_log_band(
            |e| s.weight(e, &temperature) * x_minus_sin(e * t) / (e * e),
            &s.band(),
            t,
            &req.quadrature,
        )
    })
}

/// Both kernels for one request.
pub fn evaluate(req: &KernelRequest) -> Result<KernelResult> {
    let b = b_squared(req)?;
    let c = c_phase(req)?;
    Ok(KernelResult {
        b_squared: b.value,
        c_phase: c.value,
        est_rel_error: b.est_rel_error.max(c.est_rel_error),
        evaluations: b.evaluations + c.evaluations,
    })
}

/// `B^2(t)` as a finite sum over `n_modes` bath modes per source.
///
/// Each band is cut into `n_modes` cells of equal logarithmic width; mode
/// `k` sits at the geometric centre `E_k` of its cell and carries coupling
/// `|g_k|^2 = W(E_k) ΔE_k`, where `ΔE_k` is the cell width.
pub fn b_squared_discrete(
    model: &NoiseModel,
    temperature: &Temperature,
    t: f64,
    n_modes: usize,
) -> Result<f64> {
    if n_modes < 2 {
        return Err(Error::domain("n_modes", n_modes as f64));
    }
    if !(t >= 0.0) {
        return Err(Error::domain("t", t));
    }
    let mut total = 0.0;
    for source in model.sources() {
        let band = source.band();
        let ratio = band.hi() / band.lo();
        let edge = |k: usize| {
            if k == n_modes {
                band.hi()
            } else {
                band.lo() * libm::pow(ratio, k as f64 / n_modes as f64)
            }
        };
        let mut lower = band.lo();
        for k in 0..n_modes {
            let upper = edge(k + 1);
            let e = libm::sqrt(lower * upper);
            let g2 = source.weight(e, temperature) * (upper - lower);
            let s = libm::sin(0.5 * e * t);
            total += 8.0 * g2 / (e * e) * s * s * temperature.coth_factor(e);
            lower = upper;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteSum {
    pub value: f64,
    pub n_modes: usize,
}

/// Doubles the mode count from `start_modes` until two successive sums
/// differ by less than `rel_tol` (relative).
pub fn b_squared_discrete_converged(
    model: &NoiseModel,
    temperature: &Temperature,
    t: f64,
    start_modes: usize,
    rel_tol: f64,
) -> Result<DiscreteSum> {
    const MAX_MODES: usize = 1 << 26;
    let mut n = start_modes.max(2);
    let mut previous = b_squared_discrete(model, temperature, t, n)?;
    loop {
        if previous == 0.0 {
            return Ok(DiscreteSum {
                value: 0.0,
                n_modes: n,
            });
        }
        if n >= MAX_MODES {
            return Err(Error::NonConvergence {
                best_estimate: previous,
                achieved_rel_error: f64::NAN,
                refinements: n.trailing_zeros(),
            });
        }
        n *= 2;
        let current = b_squared_discrete(model, temperature, t, n)?;
        let rel = (current - previous).abs() / current.abs();
        previous = current;
        if rel < rel_tol {
            return Ok(DiscreteSum {
                value: current,
                n_modes: n,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{Band, Ohmic, OneOverF};
    use crate::units::freq_to_energy;
    use approx::assert_relative_eq;

    fn ohmic(eta: f64) -> NoiseModel {
        let band = Band::new(freq_to_energy(1e9).unwrap(), freq_to_energy(50e9).unwrap()).unwrap();
        NoiseModel::Ohmic(Ohmic::new(eta, freq_to_energy(50e9).unwrap(), band).unwrap())
    }

    fn one_over_f(alpha: f64) -> NoiseModel {
        let band = Band::new(freq_to_energy(1e3).unwrap(), freq_to_energy(1e9).unwrap()).unwrap();
        NoiseModel::OneOverF(OneOverF::new(6.40e6, alpha, band).unwrap())
    }

    fn kelvin(t: f64) -> Temperature {
        Temperature::from_kelvin(t).unwrap()
    }

    #[test]
    fn zero_time_and_zero_coupling() {
        for model in [ohmic(1e-6), one_over_f(1e-7)] {
            let req = KernelRequest::new(model, kelvin(0.03), 0.0);
            let r = evaluate(&req).unwrap();
            assert_eq!(r.b_squared, 0.0);
            assert_eq!(r.c_phase, 0.0);
            assert_eq!(
                b_squared_discrete(&model, &kelvin(0.03), 0.0, 17).unwrap(),
                0.0
            );
        }
        let silent = NoiseModel::composite(
            match ohmic(0.0) {
                NoiseModel::Ohmic(o) => Some(o),
                _ => None,
            },
            match one_over_f(0.0) {
                NoiseModel::OneOverF(f) => Some(f),
                _ => None,
            },
        );
        let r = evaluate(&KernelRequest::new(silent, kelvin(0.03), 0.02)).unwrap();
        assert_eq!(r.b_squared, 0.0);
        assert_eq!(r.c_phase, 0.0);
    }

    #[test]
    fn negative_time_rejected() {
        let req = KernelRequest::new(ohmic(1e-6), kelvin(0.03), -1.0);
        assert!(matches!(b_squared(&req), Err(Error::Domain { .. })));
        assert!(b_squared_discrete(&ohmic(1e-6), &kelvin(0.03), 0.1, 1).is_err());
    }

    #[test]
    fn oneoverf_small_angle_value() {
        let req = KernelRequest::new(one_over_f(1e-7), kelvin(0.03), 0.02);
        let b2 = b_squared(&req).unwrap();
        let small_angle = 2.0 * 6.40e6 * 1e-7 * 0.02 * 0.02 * libm::log(1e6);
        assert!((b2.value / small_angle - 1.0).abs() < 5e-3);
        assert!((b2.value - 7.07e-3).abs() < 0.05e-3);
        assert!(b2.est_rel_error <= 1e-9);
    }

    #[test]
    fn x_minus_sin_series_matches_direct() {
        for x in [0.099_999, 0.05, 0.2] {
            assert_relative_eq!(x_minus_sin(x), x - libm::sin(x), max_relative = 1e-10);
        }
        assert_relative_eq!(x_minus_sin(1e-5), 1e-15 / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn c_phase_linear_in_weight() {
        let a = c_phase(&KernelRequest::new(ohmic(1e-6), kelvin(0.03), 0.05))
            .unwrap()
            .value;
        let b = c_phase(&KernelRequest::new(ohmic(1e-5), kelvin(0.03), 0.05))
            .unwrap()
            .value;
        assert!(a > 0.0);
        assert_relative_eq!(b, 10.0 * a, max_relative = 1e-9);
    }

    #[test]
    fn two_mode_sum_by_hand() {
        // One decade [1, 10], two cells: [1, √10] and [√10, 10].
        let band = Band::new(1.0, 10.0).unwrap();
        let model = NoiseModel::Ohmic(Ohmic::new(1e-3, 50.0, band).unwrap());
        let temp = kelvin(0.05);
        let t = 0.3;
        let r10 = libm::sqrt(10.0);
        let mut expected = 0.0;
        for (lo, hi) in [(1.0, r10), (r10, 10.0)] {
            let e: f64 = libm::sqrt(lo * hi);
            let w = 1e-3 * e * libm::exp(-e / 50.0);
            let s = libm::sin(e * t / 2.0);
            let coth = 1.0 / libm::tanh(e / (2.0 * 86.173_332_62 * 0.05));
            expected += 8.0 * w * (hi - lo) / (e * e) * s * s * coth;
        }
        let got = b_squared_discrete(&model, &temp, t, 2).unwrap();
        assert_relative_eq!(got, expected, max_relative = 1e-14);
    }
}
