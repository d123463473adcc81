// SPDX-License-Identifier: Apache-2.0

//! Short-time qubit dynamics given the dephasing kernel.
//!
//! States are 2x2 density matrices in the eigenbasis of the free qubit
//! Hamiltonian. With `b = B^2(t)` and `φ = E_J t`:
//!
//! ```text
//! ρ10(t) = ρ10 (1 - e^-b + e^{iφ} + e^{iφ - b}) / 2
//! ρ11(t) = ρ00 (1 - e^-b) / 2 + ρ11 (1 + e^-b) / 2
//! ```
//!
//! The deviation from the closed evolution is measured in the λ-norm, and its
//! worst case over initial states is `D = (1 - e^-b) / 2`.

use num_complex::Complex64;

use crate::{Error, Result};

/// Slack allowed on the trace and positivity checks.
pub const STATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    rho00: f64,
    rho11: f64,
    rho10: Complex64,
}

impl QubitState {
    pub fn new(rho00: f64, rho11: f64, rho10: Complex64) -> Result<Self> {
        if !(-STATE_TOLERANCE..=1.0 + STATE_TOLERANCE).contains(&rho00) {
            return Err(Error::domain("rho00", rho00));
        }
        if !(-STATE_TOLERANCE..=1.0 + STATE_TOLERANCE).contains(&rho11) {
            return Err(Error::domain("rho11", rho11));
        }
        if ((rho00 + rho11) - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::domain("trace", rho00 + rho11));
        }
        if !rho10.re.is_finite()
            || !rho10.im.is_finite()
            || rho10.norm_sqr() > rho00 * rho11 + STATE_TOLERANCE
        {
            return Err(Error::domain("|rho10|^2", rho10.norm_sqr()));
        }
        Ok(Self {
            rho00,
            rho11,
            rho10,
        })
    }

    /// `diag(1, 0)`.
    pub const fn basis_zero() -> Self {
        Self {
            rho00: 1.0,
            rho11: 0.0,
            rho10: Complex64::new(0.0, 0.0),
        }
    }

    /// `diag(0, 1)`.
    pub const fn basis_one() -> Self {
        Self {
            rho00: 0.0,
            rho11: 1.0,
            rho10: Complex64::new(0.0, 0.0),
        }
    }

    pub fn rho00(&self) -> f64 {
        self.rho00
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho10(&self) -> Complex64 {
        self.rho10
    }

    pub fn rho01(&self) -> Complex64 {
        self.rho10.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho00 + self.rho11
    }

    /// `ρ00 ρ11 - |ρ10|^2`, nonnegative for a physical state.
    pub fn determinant(&self) -> f64 {
        self.rho00 * self.rho11 - self.rho10.norm_sqr()
    }
}

/// Inputs that fix the dynamics at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsParams {
    pub e_j_uev: f64,
    pub b_squared: f64,
}

impl DynamicsParams {
    pub fn new(e_j_uev: f64, b_squared: f64) -> Result<Self> {
        if !(e_j_uev > 0.0 && e_j_uev.is_finite()) {
            return Err(Error::domain("E_J", e_j_uev));
        }
        if !(b_squared >= 0.0) {
            return Err(Error::domain("B^2", b_squared));
        }
        Ok(Self { e_j_uev, b_squared })
    }

    /// Characteristic time `1/E_J` in dimensionless units.
    pub fn characteristic_time(&self) -> f64 {
        1.0 / self.e_j_uev
    }

    /// `1 - e^{-B^2}`.
    fn damping(&self) -> f64 {
        -libm::expm1(-self.b_squared)
    }
}

/// True while `t` does not exceed the characteristic time `1/E_J`, where the
/// symmetric split-operator factorisation is trustworthy.
pub fn within_validity(t: f64, e_j_uev: f64) -> bool {
    t * e_j_uev <= 1.0
}

fn phase(t: f64, e_j_uev: f64) -> Complex64 {
    Complex64::from_polar(1.0, t * e_j_uev)
}

/// Open-system evolution of `rho0` to time `t`.
///
/// Logs a warning (but still evaluates) past the characteristic time.
pub fn evolve(rho0: &QubitState, t: f64, params: &DynamicsParams) -> Result<QubitState> {
    if !(t >= 0.0) {
        return Err(Error::domain("t", t));
    }
    if !within_validity(t, params.e_j_uev) {
        log::warn!(
            "t = {t} exceeds the characteristic time 1/E_J = {}; short-time evolution degrades",
            params.characteristic_time()
        );
    }
    let decay = libm::exp(-params.b_squared);
    let damping = params.damping();
    let rot = phase(t, params.e_j_uev);
    let rho10 = rho0.rho10 * (Complex64::new(damping, 0.0) + rot * (1.0 + decay)) * 0.5;
    let rho11 = 0.5 * rho0.rho00 * damping + 0.5 * rho0.rho11 * (1.0 + decay);
    let rho00 = 0.5 * rho0.rho00 * (1.0 + decay) + 0.5 * rho0.rho11 * damping;
    Ok(QubitState {
        rho00,
        rho11,
        rho10,
    })
}

/// Closed evolution: populations fixed, coherence rotated by `E_J t`.
pub fn ideal_evolve(rho0: &QubitState, t: f64, e_j_uev: f64) -> QubitState {
    QubitState {
        rho10: rho0.rho10 * phase(t, e_j_uev),
        ..*rho0
    }
}

/// Traceless deviation `σ = ρ - ρ^ideal`; `σ00 = -σ11`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub sigma11: f64,
    pub sigma10: Complex64,
}

impl Deviation {
    /// Elementwise `real - ideal`.
    pub fn between(real: &QubitState, ideal: &QubitState) -> Self {
        Self {
            sigma11: real.rho11 - ideal.rho11,
            sigma10: real.rho10 - ideal.rho10,
        }
    }
}

/// Closed-form deviation:
/// `σ10 = ρ10 (1 - e^-b)(1 - e^{iφ}) / 2`, `σ11 = (1 - e^-b)(ρ00 - ρ11) / 2`.
pub fn deviation(rho0: &QubitState, t: f64, params: &DynamicsParams) -> Deviation {
    let damping = params.damping();
    let rot = phase(t, params.e_j_uev);
    Deviation {
        sigma11: 0.5 * damping * (rho0.rho00 - rho0.rho11),
        sigma10: rho0.rho10 * (Complex64::new(1.0, 0.0) - rot) * (0.5 * damping),
    }
}

/// `‖σ‖_λ = sqrt(|σ10|^2 + σ11^2)`.
pub fn norm_lambda(sigma: &Deviation) -> f64 {
    libm::sqrt(sigma.sigma10.norm_sqr() + sigma.sigma11 * sigma.sigma11)
}

/// `‖σ(t)‖_λ = (1 - e^-b)/2 · sqrt((ρ00 - ρ11)^2 + 4|ρ10|^2 sin^2(E_J t / 2))`.
pub fn norm_closed_form(rho0: &QubitState, t: f64, params: &DynamicsParams) -> f64 {
    let pop = rho0.rho00 - rho0.rho11;
    let s = libm::sin(0.5 * params.e_j_uev * t);
    0.5 * params.damping() * libm::sqrt(pop * pop + 4.0 * rho0.rho10.norm_sqr() * s * s)
}

/// Worst-case decoherence `D = (1 - e^{-B^2}) / 2`, attained by the two
/// diagonal pure states.
pub fn decoherence_measure(b_squared: f64) -> f64 {
    -0.5 * libm::expm1(-b_squared)
}

/// `D(t)` for given dynamics parameters.
pub fn decoherence_d(params: &DynamicsParams) -> f64 {
    decoherence_measure(params.b_squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{LN_2, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    fn plus() -> QubitState {
        QubitState::new(0.5, 0.5, Complex64::new(0.5, 0.0)).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(QubitState::new(0.6, 0.5, Complex64::new(0.0, 0.0)).is_err());
        assert!(QubitState::new(0.5, 0.5, Complex64::new(0.6, 0.0)).is_err());
        assert!(QubitState::new(1.2, -0.2, Complex64::new(0.0, 0.0)).is_err());
        assert!(QubitState::new(0.5, 0.5, Complex64::new(0.0, 0.5)).is_ok());
    }

    #[test]
    fn no_dephasing_is_ideal() {
        let p = DynamicsParams::new(51.8, 0.0).unwrap();
        for t in [0.0, 0.005, 0.013] {
            let a = evolve(&plus(), t, &p).unwrap();
            let b = ideal_evolve(&plus(), t, 51.8);
            assert!(close(a.rho10(), b.rho10()));
            assert!((a.rho11() - b.rho11()).abs() < 1e-15);
            let d = deviation(&plus(), t, &p);
            assert_eq!(norm_lambda(&d), 0.0);
            assert_eq!(norm_closed_form(&plus(), t, &p), 0.0);
        }
        assert_eq!(decoherence_measure(0.0), 0.0);
    }

    #[test]
    fn ln2_dephasing_values() {
        let p = DynamicsParams::new(51.8, LN_2).unwrap();
        let out = evolve(&QubitState::basis_zero(), 0.01, &p).unwrap();
        assert!((out.rho11() - 0.25).abs() < 1e-15);
        assert_eq!(out.rho10(), Complex64::new(0.0, 0.0));

        let t = PI / 51.8;
        let out = evolve(&plus(), t, &p).unwrap();
        assert!(close(out.rho10(), Complex64::new(-0.25, 0.0)));
        assert!((decoherence_measure(LN_2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn ideal_evolution_phases() {
        let e_j = 51.8;
        let full = ideal_evolve(&plus(), 2.0 * PI / e_j, e_j);
        assert!(close(full.rho10(), plus().rho10()));
        let quarter = ideal_evolve(&plus(), PI / (2.0 * e_j), e_j);
        assert!(close(quarter.rho10(), Complex64::new(0.0, 0.5)));
        for s in [QubitState::basis_zero(), QubitState::basis_one()] {
            assert_eq!(ideal_evolve(&s, 0.37, e_j), s);
        }
    }

    #[test]
    fn identity_at_zero_time() {
        let p = DynamicsParams::new(51.8, 0.0).unwrap();
        let s = QubitState::new(0.7, 0.3, Complex64::new(0.2, -0.3)).unwrap();
        assert_eq!(evolve(&s, 0.0, &p).unwrap(), s);
    }

    #[test]
    fn diagonal_state_deviation() {
        let b2 = 0.3;
        let p = DynamicsParams::new(51.8, b2).unwrap();
        let d = deviation(&QubitState::basis_zero(), 0.01, &p);
        assert!((d.sigma11 - 0.5 * (1.0 - libm::exp(-b2))).abs() < 1e-15);
        assert_eq!(d.sigma10, Complex64::new(0.0, 0.0));
        assert!(
            (norm_closed_form(&QubitState::basis_zero(), 0.01, &p) - decoherence_d(&p)).abs()
                < 1e-15
        );
    }

    #[test]
    fn pythagorean_norm() {
        let d = Deviation {
            sigma11: 3.0,
            sigma10: Complex64::new(0.0, 4.0),
        };
        assert_eq!(norm_lambda(&d), 5.0);
        let zero = Deviation {
            sigma11: 0.0,
            sigma10: Complex64::new(0.0, 0.0),
        };
        assert_eq!(norm_lambda(&zero), 0.0);
    }

    #[test]
    fn measure_limits_and_monotonicity() {
        assert!((decoherence_measure(1e3) - 0.5).abs() < 1e-15);
        let mut last = -1.0;
        for k in 0..200 {
            let d = decoherence_measure(k as f64 * 0.05);
            assert!(d > last);
            last = d;
        }
    }

    #[test]
    fn validity_window() {
        assert!(within_validity(0.019, 51.8));
        assert!(!within_validity(0.02, 51.8));
        let p = DynamicsParams::new(51.8, 0.1).unwrap();
        // still evaluated beyond the window
        assert!(evolve(&plus(), 0.1, &p).is_ok());
        assert!(evolve(&plus(), -0.1, &p).is_err());
    }
}
