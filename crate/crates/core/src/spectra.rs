// SPDX-License-Identifier: Apache-2.0

//! Bath spectral weights `W(E) = D(E) g(E)^2` in internal energy units.
//!
//! Two noise families are modelled, each with its own frequency band:
//!
//! - Ohmic: `W(E) = η E exp(-E/E_cut)`, temperature independent;
//! - `1/f`: `W(E) = κ α_f / (E coth(E / 2k_BT))`, chosen so that the power
//!   spectrum `S(E) ∝ W(E) coth(E / 2k_BT) = κ α_f / E` is exactly `1/f`.
//!
//! A [`NoiseModel::Composite`] holds at most one of each and sums them, with
//! every member masked to its own band.

use core::f64::consts::FRAC_PI_2;

use crate::units::thermal_energy;
use crate::{Error, Result};

/// Below this value of `E / 2k_BT` the hyperbolic cotangent is replaced by
/// its two-term Laurent series.
const COTH_SERIES_BELOW: f64 = 1e-6;

/// `coth(x)` for `x > 0`.
#[inline]
pub fn coth(x: f64) -> f64 {
    if x < COTH_SERIES_BELOW {
        1.0 / x + x / 3.0
    } else {
        1.0 / libm::tanh(x)
    }
}

/// Closed energy interval `[lo, hi]` in μeV with `0 < lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    lo: f64,
    hi: f64,
}

impl Band {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo.is_finite()) {
            return Err(Error::domain("band lower edge", lo));
        }
        if !(hi > lo && hi.is_finite()) {
            return Err(Error::domain("band upper edge", hi));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, energy: f64) -> bool {
        (self.lo..=self.hi).contains(&energy)
    }

    /// `ln(hi / lo)`.
    pub fn log_width(&self) -> f64 {
        libm::log(self.hi / self.lo)
    }
}

/// Bath temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature {
    kelvin: f64,
    thermal_energy: f64,
}

impl Temperature {
    pub fn from_kelvin(kelvin: f64) -> Result<Self> {
        if !(kelvin > 0.0 && kelvin.is_finite()) {
            return Err(Error::domain("temperature", kelvin));
        }
        Ok(Self {
            kelvin,
            thermal_energy: thermal_energy(kelvin),
        })
    }

    pub fn kelvin(&self) -> f64 {
        self.kelvin
    }

    /// `k_B T` in μeV.
    pub fn thermal_energy(&self) -> f64 {
        self.thermal_energy
    }

    /// `coth(E / 2k_BT)`.
    #[inline]
    pub fn coth_factor(&self, energy: f64) -> f64 {
        coth(energy / (2.0 * self.thermal_energy))
    }
}

/// Sign of the exponent in the Ohmic cutoff factor.
///
/// `Negative` gives the physical damping `exp(-E/E_cut)`. `Positive` keeps
/// the growing `exp(+E/E_cut)` form for sensitivity comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutoffSign {
    #[default]
    Negative,
    Positive,
}

impl CutoffSign {
    #[inline]
    fn factor(self, ratio: f64) -> f64 {
        match self {
            CutoffSign::Negative => libm::exp(-ratio),
            CutoffSign::Positive => libm::exp(ratio),
        }
    }
}

/// Ohmic bath: `W(E) = η E exp(∓E/E_cut)` on `band`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ohmic {
    pub eta: f64,
    pub e_cut: f64,
    pub cutoff_sign: CutoffSign,
    pub band: Band,
}

impl Ohmic {
    pub fn new(eta: f64, e_cut: f64, band: Band) -> Result<Self> {
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::domain("eta", eta));
        }
        if !(e_cut > 0.0) {
            return Err(Error::domain("cutoff energy", e_cut));
        }
        Ok(Self {
            eta,
            e_cut,
            cutoff_sign: CutoffSign::Negative,
            band,
        })
    }

    pub fn with_cutoff_sign(mut self, sign: CutoffSign) -> Self {
        self.cutoff_sign = sign;
        self
    }

    /// Weight without band masking; `energy` must be positive.
    #[inline]
    pub(crate) fn weight_unmasked(&self, energy: f64) -> f64 {
        self.eta * energy * self.cutoff_sign.factor(energy / self.e_cut)
    }
}

/// `1/f` bath: `W(E) = κ α_f / (E coth(E / 2k_BT))` on `band`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneOverF {
    /// `κ ħ^2` in μeV².
    pub kappa_uev2: f64,
    pub alpha_f: f64,
    pub band: Band,
}

impl OneOverF {
    pub fn new(kappa_uev2: f64, alpha_f: f64, band: Band) -> Result<Self> {
        if !(kappa_uev2 > 0.0 && kappa_uev2.is_finite()) {
            return Err(Error::domain("kappa", kappa_uev2));
        }
        if !(alpha_f >= 0.0 && alpha_f.is_finite()) {
            return Err(Error::domain("alpha_f", alpha_f));
        }
        Ok(Self {
            kappa_uev2,
            alpha_f,
            band,
        })
    }

    #[inline]
    pub(crate) fn weight_unmasked(&self, energy: f64, temperature: &Temperature) -> f64 {
        self.kappa_uev2 * self.alpha_f / (energy * temperature.coth_factor(energy))
    }
}

/// Ohmic and/or `1/f` members, at most one of each.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Composite {
    pub ohmic: Option<Ohmic>,
    pub one_over_f: Option<OneOverF>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    Ohmic(Ohmic),
    OneOverF(OneOverF),
    Composite(Composite),
}

/// A single noise source, as seen by the kernel integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source<'a> {
    Ohmic(&'a Ohmic),
    OneOverF(&'a OneOverF),
}

impl Source<'_> {
    pub fn band(&self) -> Band {
        match self {
            Source::Ohmic(o) => o.band,
            Source::OneOverF(f) => f.band,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Source::Ohmic(_) => "ohmic",
            Source::OneOverF(_) => "1/f",
        }
    }

    /// True when the weight vanishes identically.
    pub fn is_silent(&self) -> bool {
        match self {
            Source::Ohmic(o) => o.eta == 0.0,
            Source::OneOverF(f) => f.alpha_f == 0.0,
        }
    }

    /// `W(E)` for `E` inside the band; callers guarantee `E > 0`.
    #[inline]
    pub fn weight(&self, energy: f64, temperature: &Temperature) -> f64 {
        match self {
            Source::Ohmic(o) => o.weight_unmasked(energy),
            Source::OneOverF(f) => f.weight_unmasked(energy, temperature),
        }
    }

    /// `W(E) coth(E / 2k_BT)`, the combination entering `B^2`.
    ///
    /// For the `1/f` source the temperature cancels and the value is
    /// `κ α_f / E` up to rounding.
    #[inline]
    pub fn thermal_weight(&self, energy: f64, temperature: &Temperature) -> f64 {
        let coth = temperature.coth_factor(energy);
        match self {
            Source::Ohmic(o) => o.weight_unmasked(energy) * coth,
            Source::OneOverF(f) => f.kappa_uev2 * f.alpha_f / (energy * coth) * coth,
        }
    }
}

impl NoiseModel {
    pub fn composite(ohmic: Option<Ohmic>, one_over_f: Option<OneOverF>) -> Self {
        NoiseModel::Composite(Composite { ohmic, one_over_f })
    }

    /// Members in a fixed order: Ohmic first, then `1/f`.
    pub fn sources(&self) -> impl Iterator<Item = Source<'_>> {
        let (ohmic, one_over_f) = match self {
            NoiseModel::Ohmic(o) => (Some(o), None),
            NoiseModel::OneOverF(f) => (None, Some(f)),
            NoiseModel::Composite(c) => (c.ohmic.as_ref(), c.one_over_f.as_ref()),
        };
        ohmic
            .map(Source::Ohmic)
            .into_iter()
            .chain(one_over_f.map(Source::OneOverF))
    }
}

fn check_energy(energy: f64) -> Result<()> {
    if energy > 0.0 && energy.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("energy", energy))
    }
}

/// `η E exp(-E/E_cut)`.
pub fn weight_ohmic(energy: f64, eta: f64, e_cut: f64) -> Result<f64> {
    check_energy(energy)?;
    Ok(eta * energy * libm::exp(-energy / e_cut))
}

/// `κ α_f / (E coth(E / 2k_BT))`; finite as `E → 0` where it tends to
/// `κ α_f / 2k_BT`.
pub fn weight_oneoverf(
    energy: f64,
    kappa_uev2: f64,
    alpha_f: f64,
    temperature: &Temperature,
) -> Result<f64> {
    check_energy(energy)?;
    Ok(kappa_uev2 * alpha_f / (energy * temperature.coth_factor(energy)))
}

/// Total weight of `model` at `energy`. Each member contributes only inside
/// its own band.
pub fn weight(model: &NoiseModel, energy: f64, temperature: &Temperature) -> Result<f64> {
    check_energy(energy)?;
    Ok(model
        .sources()
        .filter(|s| s.band().contains(energy))
        .map(|s| s.weight(energy, temperature))
        .sum())
}

/// Spectral density `J = (π/2) W` in internal units. Diagnostic only.
pub fn spectral_density_j(
    model: &NoiseModel,
    energy: f64,
    temperature: &Temperature,
) -> Result<f64> {
    Ok(FRAC_PI_2 * weight(model, energy, temperature)?)
}

/// Power spectrum `S = J coth(E / 2k_BT)`.
pub fn power_spectrum_s(model: &NoiseModel, energy: f64, temperature: &Temperature) -> Result<f64> {
    Ok(spectral_density_j(model, energy, temperature)? * temperature.coth_factor(energy))
}
