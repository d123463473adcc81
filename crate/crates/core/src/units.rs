// SPDX-License-Identifier: Apache-2.0

//! Physical constants, unit conversions and the scalar energy scales that
//! feed the noise and dynamics modules.
//!
//! | constant | value | unit |
//! |---|---|---|
//! | ħ | 6.582119569e-10 | μeV·s |
//! | h | 4.135667696e-9 | μeV·s |
//! | k_B | 86.17333262 | μeV/K |
//! | e | 1.602176634e-19 | C |
//! | R_Q = h/(2e)² | ≈ 6453.2 | Ω |

use core::f64::consts::PI;

use crate::{Error, Result};

/// Reduced Planck constant, μeV·s (CODATA 2018).
pub const HBAR_UEV_S: f64 = 6.582_119_569e-10;
/// Planck constant, μeV·s (CODATA 2018).
pub const H_UEV_S: f64 = 4.135_667_696e-9;
/// Boltzmann constant, μeV/K (CODATA 2018).
pub const K_B_UEV_PER_K: f64 = 86.173_332_62;
/// Elementary charge, C (exact).
pub const E_CHARGE_C: f64 = 1.602_176_634e-19;

const UEV_PER_EV: f64 = 1.0e6;
const PS_PER_S: f64 = 1.0e12;

/// The constants table as a value, for echoing into output metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar_uev_s: f64,
    pub h_uev_s: f64,
    pub k_b_uev_per_k: f64,
    pub e_coulomb: f64,
    pub r_q_ohm: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar_uev_s: HBAR_UEV_S,
        h_uev_s: H_UEV_S,
        k_b_uev_per_k: K_B_UEV_PER_K,
        e_coulomb: E_CHARGE_C,
        r_q_ohm: resistance_quantum_ohm(),
    };
}

/// Superconducting resistance quantum `h / (2e)^2` in ohms.
pub const fn resistance_quantum_ohm() -> f64 {
    // h in J·s = h[μeV·s] · 1e-6 · e
    let h_j_s = H_UEV_S / UEV_PER_EV * E_CHARGE_C;
    h_j_s / (4.0 * E_CHARGE_C * E_CHARGE_C)
}

/// Raw circuit quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub r_ohm: f64,
    pub c_g_f: f64,
    pub c_j_f: f64,
    pub ct_over_cj: f64,
    pub i_c_a: Option<f64>,
}

/// Energy scales derived from (or injected in place of) circuit parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScales {
    pub e_c_uev: f64,
    pub e_j_uev: f64,
    pub eta: f64,
    pub kappa_uev2: f64,
    pub kappa_si_per_s2: f64,
}

impl EnergyScales {
    /// Derives every scale from the circuit. `E_J` needs the critical
    /// current; without it the caller must supply `e_j_uev` directly.
    pub fn from_circuit(circuit: &CircuitParams, e_j_uev: Option<f64>) -> Result<Self> {
        if !(circuit.ct_over_cj > 0.0) {
            return Err(Error::domain("C_t/C_J", circuit.ct_over_cj));
        }
        let e_c = charging_energy(circuit.c_g_f, circuit.c_j_f)?;
        let e_j = match (e_j_uev, circuit.i_c_a) {
            (Some(e), _) if e > 0.0 => e,
            (Some(e), _) => return Err(Error::domain("E_J", e)),
            (None, Some(i_c)) => josephson_energy(i_c)?,
            (None, None) => return Err(Error::domain("critical current", f64::NAN)),
        };
        let eta = eta_from_circuit(circuit.r_ohm, circuit.ct_over_cj)?;
        let (kappa_uev2, kappa_si_per_s2) = kappa_from_charging(e_c)?;
        Ok(Self {
            e_c_uev: e_c,
            e_j_uev: e_j,
            eta,
            kappa_uev2,
            kappa_si_per_s2,
        })
    }
}

/// `E_c = e^2 / 2(C_g + C_J)` in μeV.
pub fn charging_energy(c_g_f: f64, c_j_f: f64) -> Result<f64> {
    if !(c_g_f > 0.0) {
        return Err(Error::domain("gate capacitance", c_g_f));
    }
    if !(c_j_f > 0.0) {
        return Err(Error::domain("junction capacitance", c_j_f));
    }
    // e^2/2C in joules, divided by e for eV
    Ok(E_CHARGE_C / (2.0 * (c_g_f + c_j_f)) * UEV_PER_EV)
}

/// `E_J = I_c ħ / 2e` in μeV.
pub fn josephson_energy(i_c_a: f64) -> Result<f64> {
    if !(i_c_a > 0.0) {
        return Err(Error::domain("critical current", i_c_a));
    }
    // ħ[J·s] / e[C] = ħ[eV·s]; the remaining 1/e converts J to eV.
    Ok(i_c_a * HBAR_UEV_S / (2.0 * E_CHARGE_C))
}

/// Ohmic coupling strength `η = 4 (R/R_Q) (C_t/C_J)^2`.
pub fn eta_from_circuit(r_ohm: f64, ct_over_cj: f64) -> Result<f64> {
    if !(r_ohm > 0.0) {
        return Err(Error::domain("resistance", r_ohm));
    }
    if !(ct_over_cj > 0.0) {
        return Err(Error::domain("C_t/C_J", ct_over_cj));
    }
    Ok(4.0 * r_ohm / resistance_quantum_ohm() * ct_over_cj * ct_over_cj)
}

/// The `1/f` prefactor `κ = 64 E_c^2 / (h ħ)`.
///
/// Returns `(κ ħ^2 in μeV^2, κ in s^-2)`. In energy units `κ ħ^2 = 32 E_c^2 / π`.
pub fn kappa_from_charging(e_c_uev: f64) -> Result<(f64, f64)> {
    if !(e_c_uev > 0.0) {
        return Err(Error::domain("charging energy", e_c_uev));
    }
    let kappa_uev2 = 32.0 * e_c_uev * e_c_uev / PI;
    Ok((kappa_uev2, kappa_uev2 / (HBAR_UEV_S * HBAR_UEV_S)))
}

/// Photon energy `h ν` in μeV.
pub fn freq_to_energy(nu_hz: f64) -> Result<f64> {
    if !(nu_hz > 0.0) {
        return Err(Error::domain("frequency", nu_hz));
    }
    Ok(H_UEV_S * nu_hz)
}

/// `ħ ω` in μeV for an angular frequency in rad/s.
pub fn angular_freq_to_energy(omega_rad_s: f64) -> Result<f64> {
    if !(omega_rad_s > 0.0) {
        return Err(Error::domain("angular frequency", omega_rad_s));
    }
    Ok(HBAR_UEV_S * omega_rad_s)
}

/// How a band edge quoted in Hz is turned into an energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BandInterpretation {
    /// The number is an ordinary frequency ν; `E = h ν`.
    #[default]
    Ordinary,
    /// The number is an angular frequency ω; `E = ħ ω`.
    Angular,
}

impl BandInterpretation {
    pub fn energy(self, value_hz: f64) -> Result<f64> {
        match self {
            BandInterpretation::Ordinary => freq_to_energy(value_hz),
            BandInterpretation::Angular => angular_freq_to_energy(value_hz),
        }
    }
}

/// Dimensionless time to picoseconds: `τ = t ħ`.
pub fn t_to_tau_ps(t: f64) -> f64 {
    t * (HBAR_UEV_S * PS_PER_S)
}

pub fn tau_ps_to_t(tau_ps: f64) -> f64 {
    tau_ps / (HBAR_UEV_S * PS_PER_S)
}

/// Thermal energy `k_B T` in μeV.
pub fn thermal_energy(t_kelvin: f64) -> f64 {
    K_B_UEV_PER_K * t_kelvin
}
