// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps over time, temperature and noise strength.
//!
//! A [`ScenarioConfig`] is the user-facing description; [`ScenarioConfig::resolve`]
//! validates it and converts every band and scale into internal energy units,
//! yielding a [`Scenario`] that evaluates rows, curves and the critical `α_f`.

use alloc::format;
use alloc::vec::Vec;

use crate::dynamics::{decoherence_measure, QubitState};
use crate::kernel::b_squared_source;
use crate::quadrature::QuadratureSpec;
use crate::spectra::{Band, CutoffSign, Ohmic, OneOverF, Source, Temperature};
use crate::units::{charging_energy, kappa_from_charging, t_to_tau_ps, BandInterpretation};
use crate::{Error, Result};

/// Decoherence budget per gate operation.
pub const DIVINCENZO_THRESHOLD: f64 = 1e-4;

/// The `α_f` below which the reference analysis calls `1/f` decoherence
/// endurable within one characteristic time.
pub const REFERENCE_CRITICAL_ALPHA_F: f64 = 5e-8;

/// Search interval for [`Scenario::critical_alpha_f`].
pub const ALPHA_SEARCH_BRACKET: (f64, f64) = (1e-12, 1e-3);

/// Bisection stops once `hi / lo` is within this factor.
const ALPHA_RELATIVE_WIDTH: f64 = 1.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaSource {
    /// `κ ħ^2` in μeV² given directly.
    Direct(f64),
    /// Derive from the charging energy of the given capacitances.
    Circuit { c_g_f: f64, c_j_f: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl TimeGrid {
    /// Evenly spaced values, endpoints included. One point yields `start`.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return alloc::vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub e_j_uev: f64,
    pub temperatures_k: Vec<f64>,
    pub eta: f64,
    pub e_cut_ghz: f64,
    pub cutoff_sign: CutoffSign,
    pub alpha_f_values: Vec<f64>,
    pub kappa_source: KappaSource,
    pub ohmic_band_ghz: (f64, f64),
    pub oneoverf_band_hz: (f64, f64),
    pub band_interpretation: BandInterpretation,
    pub t_grid: TimeGrid,
    pub initial_state: QubitState,
    pub quadrature: QuadratureSpec,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            e_j_uev: 51.8,
            temperatures_k: alloc::vec![0.03],
            eta: 1e-6,
            e_cut_ghz: 50.0,
            cutoff_sign: CutoffSign::Negative,
            alpha_f_values: alloc::vec![REFERENCE_CRITICAL_ALPHA_F],
            kappa_source: KappaSource::Circuit {
                c_g_f: 1e-18,
                c_j_f: 1e-16,
            },
            ohmic_band_ghz: (1.0, 50.0),
            oneoverf_band_hz: (1e3, 1e9),
            band_interpretation: BandInterpretation::Ordinary,
            t_grid: TimeGrid {
                start: 0.0,
                stop: 0.02,
                points: 201,
            },
            initial_state: QubitState::basis_zero(),
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// The three reference curve families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Ohmic noise only, three temperatures.
    Fig1,
    /// `1/f` noise only, three values of `α_f`.
    Fig2,
    /// Both sources at 30 mK, three values of `α_f`.
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Default configuration reproducing the figure.
    pub fn config(self) -> ScenarioConfig {
        let base = ScenarioConfig::default();
        match self {
            Figure::Fig1 => ScenarioConfig {
                temperatures_k: alloc::vec![0.03, 0.15, 0.1875],
                alpha_f_values: alloc::vec![0.0],
                ..base
            },
            Figure::Fig2 => ScenarioConfig {
                eta: 0.0,
                alpha_f_values: alloc::vec![1.0e-7, 1.1e-7, 1.3e-7],
                ..base
            },
            Figure::Fig3 => ScenarioConfig {
                alpha_f_values: alloc::vec![3e-8, 4e-8, 5e-8],
                ..base
            },
        }
    }

    /// Remarks about the default parameter choice.
    pub fn notes(self) -> &'static [&'static str] {
        match self {
            Figure::Fig2 => &[
                "upper curve uses alpha_f = 1.3e-7; pass --alpha-f 1e-7,1.1e-7,1.2e-7 for the alternative upper value",
            ],
            _ => &[],
        }
    }
}

/// One curve of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSpec {
    pub temperature_k: f64,
    pub eta: f64,
    pub alpha_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub tau_ps: f64,
    pub b2_ohmic: f64,
    pub b2_oneoverf: f64,
    pub b2_total: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub curve: CurveSpec,
    /// Sorted by `t` ascending.
    pub rows: Vec<SweepRow>,
}

/// Outcome of the critical-`α_f` search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalAlpha {
    pub alpha_star: f64,
    pub bracket: (f64, f64),
    pub d_at_alpha_star: f64,
    pub threshold: f64,
    pub t_op: f64,
    pub tau_op_ps: f64,
    pub temperature_k: f64,
    pub eta: f64,
    /// Small-angle inversion for pure `1/f` noise:
    /// `-ln(1 - 2 threshold) / (2 κ t_op^2 ln(E_hi/E_lo))`.
    pub small_angle_alpha: f64,
    pub iterations: u32,
}

/// A validated configuration in internal units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub e_j_uev: f64,
    pub kappa_uev2: f64,
    pub e_cut_uev: f64,
    pub cutoff_sign: CutoffSign,
    pub ohmic_band: Band,
    pub oneoverf_band: Band,
    pub quadrature: QuadratureSpec,
    pub initial_state: QubitState,
    temperatures_k: Vec<f64>,
    eta: f64,
    alpha_f_values: Vec<f64>,
    t_values: Vec<f64>,
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            field,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn nonnegative(field: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(
            field,
            format!("must be nonnegative and finite, got {v}"),
        ))
    }
}

fn band(
    field: &'static str,
    interp: BandInterpretation,
    (lo, hi): (f64, f64),
    scale: f64,
) -> Result<Band> {
    positive(field, lo)?;
    positive(field, hi)?;
    if lo >= hi {
        return Err(Error::config(
            field,
            format!("lower edge {lo} must be below upper edge {hi}"),
        ));
    }
    let lo = interp
        .energy(lo * scale)
        .map_err(|e| Error::config(field, format!("{e}")))?;
    let hi = interp
        .energy(hi * scale)
        .map_err(|e| Error::config(field, format!("{e}")))?;
    Band::new(lo, hi).map_err(|e| Error::config(field, format!("{e}")))
}

impl ScenarioConfig {
    pub fn resolve(&self) -> Result<Scenario> {
        positive("e_j_uev", self.e_j_uev)?;
        if self.temperatures_k.is_empty() {
            return Err(Error::config(
                "temperatures_k",
                "at least one temperature required",
            ));
        }
        for &t in &self.temperatures_k {
            positive("temperatures_k", t)?;
        }
        nonnegative("eta", self.eta)?;
        positive("e_cut_ghz", self.e_cut_ghz)?;
        if self.alpha_f_values.is_empty() {
            return Err(Error::config(
                "alpha_f_values",
                "at least one value required",
            ));
        }
        for &a in &self.alpha_f_values {
            nonnegative("alpha_f_values", a)?;
        }
        let kappa_uev2 = match self.kappa_source {
            KappaSource::Direct(k) => {
                positive("kappa_uev2", k)?;
                k
            }
            KappaSource::Circuit { c_g_f, c_j_f } => {
                positive("c_g_f", c_g_f)?;
                positive("c_j_f", c_j_f)?;
                let e_c = charging_energy(c_g_f, c_j_f)
                    .map_err(|e| Error::config("c_j_f", format!("{e}")))?;
                kappa_from_charging(e_c)
                    .map_err(|e| Error::config("c_j_f", format!("{e}")))?
                    .0
            }
        };
        let interp = self.band_interpretation;
        let ohmic_band = band("ohmic_band_ghz", interp, self.ohmic_band_ghz, 1e9)?;
        let oneoverf_band = band("oneoverf_band_hz", interp, self.oneoverf_band_hz, 1.0)?;
        let e_cut_uev = interp
            .energy(self.e_cut_ghz * 1e9)
            .map_err(|e| Error::config("e_cut_ghz", format!("{e}")))?;

        let grid = self.t_grid;
        if grid.points == 0 {
            return Err(Error::config("t_grid", "needs at least one point"));
        }
        nonnegative("t_grid", grid.start)?;
        nonnegative("t_grid", grid.stop)?;
        if grid.stop < grid.start {
            return Err(Error::config(
                "t_grid",
                format!("stop {} precedes start {}", grid.stop, grid.start),
            ));
        }
        if grid.points > 1 && grid.stop == grid.start {
            return Err(Error::config("t_grid", "several points need stop > start"));
        }
        self.quadrature
            .validate()
            .map_err(|e| Error::config("quadrature", format!("{e}")))?;

        Ok(Scenario {
            e_j_uev: self.e_j_uev,
            kappa_uev2,
            e_cut_uev,
            cutoff_sign: self.cutoff_sign,
            ohmic_band,
            oneoverf_band,
            quadrature: self.quadrature,
            initial_state: self.initial_state,
            temperatures_k: self.temperatures_k.clone(),
            eta: self.eta,
            alpha_f_values: self.alpha_f_values.clone(),
            t_values: grid.values(),
        })
    }
}

fn kernel_error(t: f64, source: &'static str, err: Error) -> Error {
    match err {
        Error::NonConvergence {
            best_estimate,
            achieved_rel_error,
            ..
        } => Error::SweepPoint {
            t,
            source,
            best_estimate,
            achieved_rel_error,
        },
        other => other,
    }
}

impl Scenario {
    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    /// Curves in deterministic order: temperature outer, `α_f` inner.
    pub fn curves(&self) -> Vec<CurveSpec> {
        let mut out = Vec::with_capacity(self.temperatures_k.len() * self.alpha_f_values.len());
        for &temperature_k in &self.temperatures_k {
            for &alpha_f in &self.alpha_f_values {
                out.push(CurveSpec {
                    temperature_k,
                    eta: self.eta,
                    alpha_f,
                });
            }
        }
        out
    }

    pub fn ohmic(&self, eta: f64) -> Result<Ohmic> {
        Ok(Ohmic::new(eta, self.e_cut_uev, self.ohmic_band)?.with_cutoff_sign(self.cutoff_sign))
    }

    pub fn one_over_f(&self, alpha_f: f64) -> Result<OneOverF> {
        OneOverF::new(self.kappa_uev2, alpha_f, self.oneoverf_band)
    }

    fn b2_pair(&self, curve: &CurveSpec, t: f64) -> Result<(f64, f64)> {
        let temperature = Temperature::from_kelvin(curve.temperature_k)?;
        let ohmic = self.ohmic(curve.eta)?;
        let b2_ohmic = b_squared_source(&Source::Ohmic(&ohmic), &temperature, t, &self.quadrature)
            .map_err(|e| kernel_error(t, "ohmic", e))?
            .value;
        let f = self.one_over_f(curve.alpha_f)?;
        let b2_oneoverf =
            b_squared_source(&Source::OneOverF(&f), &temperature, t, &self.quadrature)
                .map_err(|e| kernel_error(t, "1/f", e))?
                .value;
        Ok((b2_ohmic, b2_oneoverf))
    }

    /// One output row.
    pub fn row(&self, curve: &CurveSpec, t: f64) -> Result<SweepRow> {
        if !(t >= 0.0) {
            return Err(Error::domain("t", t));
        }
        let (b2_ohmic, b2_oneoverf) = self.b2_pair(curve, t)?;
        let b2_total = b2_ohmic + b2_oneoverf;
        Ok(SweepRow {
            t,
            tau_ps: t_to_tau_ps(t),
            b2_ohmic,
            b2_oneoverf,
            b2_total,
            d: decoherence_measure(b2_total),
        })
    }

    pub fn run_curve(&self, curve: &CurveSpec) -> Result<SweepResult> {
        let rows = self
            .t_values
            .iter()
            .map(|&t| self.row(curve, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepResult {
            curve: *curve,
            rows,
        })
    }

    pub fn run(&self) -> Result<Vec<SweepResult>> {
        self.curves().iter().map(|c| self.run_curve(c)).collect()
    }

    /// `D(t)` for one curve at one time.
    pub fn decoherence_at(&self, curve: &CurveSpec, t: f64) -> Result<f64> {
        Ok(self.row(curve, t)?.d)
    }

    /// Smallest `α_f` at which `D(t_op)` reaches `threshold`, at the first
    /// configured temperature and the configured `η`.
    ///
    /// `t_op` defaults to the characteristic time `1/E_J`. Bisection runs on
    /// `ln α_f` over [`ALPHA_SEARCH_BRACKET`] until the bracket is 1% wide.
    pub fn critical_alpha_f(&self, threshold: f64, t_op: Option<f64>) -> Result<CriticalAlpha> {
        if !(threshold > 0.0 && threshold < 0.5) {
            return Err(Error::config(
                "threshold",
                format!("must lie in (0, 0.5), got {threshold}"),
            ));
        }
        let t_op = t_op.unwrap_or(1.0 / self.e_j_uev);
        positive("t_op", t_op)?;
        let temperature_k = self.temperatures_k[0];
        let d_of = |alpha_f: f64| {
            self.decoherence_at(
                &CurveSpec {
                    temperature_k,
                    eta: self.eta,
                    alpha_f,
                },
                t_op,
            )
        };

        let (mut lo, mut hi) = ALPHA_SEARCH_BRACKET;
        let d_lo = d_of(lo)?;
        let d_hi = d_of(hi)?;
        if !(d_lo < threshold && threshold < d_hi) {
            return Err(Error::Bracket {
                lo,
                hi,
                d_lo,
                d_hi,
                threshold,
            });
        }
        let mut iterations = 0;
        while hi / lo > ALPHA_RELATIVE_WIDTH {
            let mid = libm::sqrt(lo * hi);
            if d_of(mid)? < threshold {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        let alpha_star = libm::sqrt(lo * hi);
        let d_at_alpha_star = d_of(alpha_star)?;

        let small_angle_alpha = -libm::log1p(-2.0 * threshold)
            / (2.0 * self.kappa_uev2 * t_op * t_op * self.oneoverf_band.log_width());

        Ok(CriticalAlpha {
            alpha_star,
            bracket: (lo, hi),
            d_at_alpha_star,
            threshold,
            t_op,
            tau_op_ps: t_to_tau_ps(t_op),
            temperature_k,
            eta: self.eta,
            small_angle_alpha,
            iterations,
        })
    }
}

/// Evaluates every curve of `config`.
pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<SweepResult>> {
    config.resolve()?.run()
}

/// A figure's curve family together with the configuration that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureRun {
    pub figure: Figure,
    pub config: ScenarioConfig,
    pub curves: Vec<SweepResult>,
}

/// Evaluates one figure's curve family with `overrides` applied on top of
/// the figure defaults.
pub fn run_figure(figure: Figure, overrides: &ConfigOverrides) -> Result<FigureRun> {
    let config = overrides.applied_to(figure.config());
    let curves = run_sweep(&config)?;
    Ok(FigureRun {
        figure,
        config,
        curves,
    })
}

/// A partial [`ScenarioConfig`]; `None` leaves the base value untouched.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub e_j_uev: Option<f64>,
    pub temperatures_k: Option<Vec<f64>>,
    pub eta: Option<f64>,
    pub e_cut_ghz: Option<f64>,
    pub cutoff_sign: Option<CutoffSign>,
    pub alpha_f_values: Option<Vec<f64>>,
    pub kappa_source: Option<KappaSource>,
    pub ohmic_band_ghz: Option<(f64, f64)>,
    pub oneoverf_band_hz: Option<(f64, f64)>,
    pub band_interpretation: Option<BandInterpretation>,
    pub t_grid: Option<TimeGrid>,
    pub initial_state: Option<QubitState>,
    pub rel_tol: Option<f64>,
    pub max_refinements: Option<u32>,
    pub panels_per_decade: Option<u32>,
}

impl ConfigOverrides {
    /// Values set in `later` win over values set in `self`.
    pub fn merged_with(self, later: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            e_j_uev: later.e_j_uev.or(self.e_j_uev),
            temperatures_k: later.temperatures_k.or(self.temperatures_k),
            eta: later.eta.or(self.eta),
            e_cut_ghz: later.e_cut_ghz.or(self.e_cut_ghz),
            cutoff_sign: later.cutoff_sign.or(self.cutoff_sign),
            alpha_f_values: later.alpha_f_values.or(self.alpha_f_values),
            kappa_source: later.kappa_source.or(self.kappa_source),
            ohmic_band_ghz: later.ohmic_band_ghz.or(self.ohmic_band_ghz),
            oneoverf_band_hz: later.oneoverf_band_hz.or(self.oneoverf_band_hz),
            band_interpretation: later.band_interpretation.or(self.band_interpretation),
            t_grid: later.t_grid.or(self.t_grid),
            initial_state: later.initial_state.or(self.initial_state),
            rel_tol: later.rel_tol.or(self.rel_tol),
            max_refinements: later.max_refinements.or(self.max_refinements),
            panels_per_decade: later.panels_per_decade.or(self.panels_per_decade),
        }
    }

    pub fn applied_to(&self, mut base: ScenarioConfig) -> ScenarioConfig {
        let o = self.clone();
        if let Some(v) = o.e_j_uev {
            base.e_j_uev = v;
        }
        if let Some(v) = o.temperatures_k {
            base.temperatures_k = v;
        }
        if let Some(v) = o.eta {
            base.eta = v;
        }
        if let Some(v) = o.e_cut_ghz {
            base.e_cut_ghz = v;
        }
        if let Some(v) = o.cutoff_sign {
            base.cutoff_sign = v;
        }
        if let Some(v) = o.alpha_f_values {
            base.alpha_f_values = v;
        }
        if let Some(v) = o.kappa_source {
            base.kappa_source = v;
        }
        if let Some(v) = o.ohmic_band_ghz {
            base.ohmic_band_ghz = v;
        }
        if let Some(v) = o.oneoverf_band_hz {
            base.oneoverf_band_hz = v;
        }
        if let Some(v) = o.band_interpretation {
            base.band_interpretation = v;
        }
        if let Some(v) = o.t_grid {
            base.t_grid = v;
        }
        if let Some(v) = o.initial_state {
            base.initial_state = v;
        }
        if let Some(v) = o.rel_tol {
            base.quadrature.rel_tol = v;
        }
        if let Some(v) = o.max_refinements {
            base.quadrature.max_refinements = v;
        }
        if let Some(v) = o.panels_per_decade {
            base.quadrature.panels_per_decade = v;
        }
        base
    }
}
