// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! at the end if any criterion failed.
//!
//! Run with `cargo test -p jcq --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use jcq_core::dynamics::{
    decoherence_measure, deviation, evolve, ideal_evolve, norm_closed_form, norm_lambda, Deviation,
    DynamicsParams, QubitState,
};
use jcq_core::kernel::{b_squared, b_squared_discrete_converged, KernelRequest};
use jcq_core::scenario::{
    run_figure, ConfigOverrides, Figure, ScenarioConfig, SweepResult, DIVINCENZO_THRESHOLD,
    REFERENCE_CRITICAL_ALPHA_F,
};
use jcq_core::spectra::{Band, NoiseModel, Ohmic, OneOverF, Temperature};
use jcq_core::units::{
    charging_energy, freq_to_energy, kappa_from_charging, resistance_quantum_ohm, t_to_tau_ps,
};
use jcq_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn kelvin(t: f64) -> Temperature {
    Temperature::from_kelvin(t).unwrap()
}

fn kappa() -> f64 {
    kappa_from_charging(charging_energy(1e-18, 1e-16).unwrap())
        .unwrap()
        .0
}

fn ohmic(eta: f64) -> Ohmic {
    let band = Band::new(freq_to_energy(1e9).unwrap(), freq_to_energy(50e9).unwrap()).unwrap();
    Ohmic::new(eta, freq_to_energy(50e9).unwrap(), band).unwrap()
}

fn f_band() -> Band {
    Band::new(freq_to_energy(1e3).unwrap(), freq_to_energy(1e9).unwrap()).unwrap()
}

fn one_over_f(alpha: f64) -> OneOverF {
    OneOverF::new(kappa(), alpha, f_band()).unwrap()
}

fn b2(model: NoiseModel, t_k: f64, t: f64) -> f64 {
    b_squared(&KernelRequest::new(model, kelvin(t_k), t))
        .unwrap()
        .value
}

fn within_time(label: &str, elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!(
            "{label} took {:.2} s, limit {limit_s} s",
            elapsed.as_secs_f64()
        ))
    }
}

fn kernel_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let models = [
        NoiseModel::Ohmic(ohmic(1e-6)),
        NoiseModel::OneOverF(one_over_f(1e-7)),
        NoiseModel::composite(Some(ohmic(1e-6)), Some(one_over_f(5e-8))),
    ];
    let points = [
        (0.03, 0.001),
        (0.03, 0.02),
        (0.15, 0.0193),
        (0.1875, 0.05),
        (0.1875, 0.1),
    ];
    let mut worst = 0.0f64;
    let mut max_modes = 0;
    for model in &models {
        for &(t_k, t) in &points {
            let temp = kelvin(t_k);
            let quad = b_squared(&KernelRequest::new(*model, temp, t))
                .map_err(|e| e.to_string())?
                .value;
            let modes = b_squared_discrete_converged(model, &temp, t, 1024, 1e-6)
                .map_err(|e| e.to_string())?;
            let rel = (quad - modes.value).abs() / quad;
            if rel > 1e-6 {
                return Err(format!(
                    "T={t_k} t={t}: quadrature {quad:e} vs modes {:e} (rel {rel:.2e})",
                    modes.value
                ));
            }
            worst = worst.max(rel);
            max_modes = max_modes.max(modes.n_modes);
        }
    }
    within_time("kernel oracle", start.elapsed(), 10.0)?;
    Ok(format!(
        "15 combinations, worst rel {worst:.2e}, up to {max_modes} modes, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn small_angle_law() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [3e-8, 5e-8, 1e-7, 1.3e-7] {
        for t in [0.001, 0.005, 0.01, 0.0193, 0.02] {
            let got = b2(NoiseModel::OneOverF(one_over_f(alpha)), 0.03, t);
            let law = 2.0 * kappa() * alpha * t * t * f_band().log_width();
            let rel = (got / law - 1.0).abs();
            if rel > 5e-3 {
                return Err(format!("alpha={alpha} t={t}: {got:e} vs {law:e}"));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!("worst rel deviation {worst:.2e} (limit 5e-3)"))
}

fn temperature_cancellation() -> Outcome {
    let mut worst = 0.0f64;
    for t in [0.001, 0.005, 0.0193, 0.02, 0.1] {
        let cold = b2(NoiseModel::OneOverF(one_over_f(1e-7)), 0.03, t);
        let warm = b2(NoiseModel::OneOverF(one_over_f(1e-7)), 0.1875, t);
        let rel = ((cold - warm) / cold).abs();
        if rel > 1e-10 {
            return Err(format!("t={t}: {cold:e} vs {warm:e}"));
        }
        worst = worst.max(rel);
    }
    Ok(format!("worst rel difference {worst:.2e} (limit 1e-10)"))
}

fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    // uniform in the Bloch ball, shrunk a hair so positivity survives rounding
    let r = rng.gen::<f64>().cbrt() * (1.0 - 1e-12);
    let z = rng.gen_range(-1.0..=1.0f64);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    QubitState::new(
        0.5 * (1.0 + r * z),
        0.5 * (1.0 - r * z),
        Complex64::from_polar(0.5 * r * s, phi),
    )
    .unwrap()
}

fn dynamics_identities() -> Outcome {
    const TOL: f64 = 1e-12;
    const E_J: f64 = 51.8;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a63_7131);
    let pairs: Vec<(f64, f64)> = (0..20)
        .map(|_| {
            (
                rng.gen_range(0.0..0.1),
                10f64.powf(rng.gen_range(-8.0..1.0)),
            )
        })
        .collect();
    let mut checks = 0u64;
    for _ in 0..10_000 {
        let rho = random_state(&mut rng);
        for &(t, b_sq) in &pairs {
            let p = DynamicsParams::new(E_J, b_sq).map_err(|e| e.to_string())?;
            let out = evolve(&rho, t, &p).map_err(|e| e.to_string())?;
            let ideal = ideal_evolve(&rho, t, E_J);
            let closed = deviation(&rho, t, &p);
            let direct = Deviation::between(&out, &ideal);
            let bound = decoherence_measure(b_sq);
            let norm = norm_closed_form(&rho, t, &p);
            let ok = (out.trace() - 1.0).abs() <= TOL
                && out.determinant() >= -TOL
                && out.rho00() >= -TOL
                && out.rho11() >= -TOL
                && (direct.sigma11 - closed.sigma11).abs() <= TOL
                && (direct.sigma10 - closed.sigma10).norm() <= TOL
                && (norm_lambda(&direct) - norm).abs() <= TOL
                && norm <= bound + TOL;
            if !ok {
                return Err(format!("state {rho:?} t={t} B2={b_sq}"));
            }
            checks += 1;
        }
    }
    for &(t, b_sq) in &pairs {
        let p = DynamicsParams::new(E_J, b_sq).map_err(|e| e.to_string())?;
        for s in [QubitState::basis_zero(), QubitState::basis_one()] {
            if (norm_closed_form(&s, t, &p) - decoherence_measure(b_sq)).abs() > TOL {
                return Err(format!("sup not attained at t={t} B2={b_sq}"));
            }
        }
    }
    within_time("dynamics identities", start.elapsed(), 5.0)?;
    Ok(format!(
        "{checks} state-parameter checks, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn constants() -> Outcome {
    let (_, kappa_si) = kappa_from_charging(charging_energy(1e-18, 1e-16).unwrap()).unwrap();
    let r_q = resistance_quantum_ohm();
    let tau = t_to_tau_ps(0.0193);
    if !(1.4e25..=1.6e25).contains(&kappa_si) {
        return Err(format!("kappa_SI = {kappa_si:e}"));
    }
    if (r_q - 6453.2).abs() > 0.1 {
        return Err(format!("R_Q = {r_q}"));
    }
    if (tau - 12.7).abs() > 0.1 {
        return Err(format!("tau(0.0193) = {tau} ps"));
    }
    Ok(format!(
        "kappa_SI = {kappa_si:.4e} s^-2, R_Q = {r_q:.4} ohm, tau = {tau:.4} ps"
    ))
}

fn max_d(curve: &SweepResult, t_max: f64) -> f64 {
    curve
        .rows
        .iter()
        .filter(|r| r.t <= t_max + 1e-15)
        .map(|r| r.d)
        .fold(0.0, f64::max)
}

fn fig1_claims() -> Outcome {
    let start = Instant::now();
    let run = run_figure(Figure::Fig1, &ConfigOverrides::default()).map_err(|e| e.to_string())?;
    let curves = &run.curves;
    let temps: Vec<f64> = curves.iter().map(|c| c.curve.temperature_k).collect();
    if temps != [0.03, 0.15, 0.1875] {
        return Err(format!("unexpected temperatures {temps:?}"));
    }
    for pair in curves.windows(2) {
        for (lo, hi) in pair[0].rows.iter().zip(&pair[1].rows) {
            if lo.b2_total > hi.b2_total || lo.d > hi.d {
                return Err(format!("not ordered by T at t={}", lo.t));
            }
        }
    }
    let cold = max_d(&curves[0], 0.1);
    let warm = max_d(&curves[2], 0.02);
    if cold >= DIVINCENZO_THRESHOLD {
        return Err(format!("max D at 0.03 K for t<=0.1 is {cold:e}"));
    }
    if warm >= DIVINCENZO_THRESHOLD {
        return Err(format!("max D at 0.1875 K for t<=0.02 is {warm:e}"));
    }
    within_time("fig1", start.elapsed(), 30.0)?;
    Ok(format!(
        "ordered by T; max D {cold:.3e} (0.03 K, t<=0.1), {warm:.3e} (0.1875 K, t<=0.02); {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn monotone_in_alpha(curves: &[SweepResult], name: &str) -> Result<(), String> {
    for pair in curves.windows(2) {
        if pair[0].curve.alpha_f >= pair[1].curve.alpha_f {
            return Err(format!("{name}: curves not sorted by alpha_f"));
        }
        for (lo, hi) in pair[0].rows.iter().zip(&pair[1].rows) {
            if lo.b2_total > hi.b2_total || lo.d > hi.d {
                return Err(format!("{name}: not monotone in alpha_f at t={}", lo.t));
            }
        }
    }
    Ok(())
}

fn fig2_fig3_structure() -> Outcome {
    let fig2 = run_figure(Figure::Fig2, &ConfigOverrides::default()).map_err(|e| e.to_string())?;
    monotone_in_alpha(&fig2.curves, "fig2")?;
    let fig3 = run_figure(Figure::Fig3, &ConfigOverrides::default()).map_err(|e| e.to_string())?;
    monotone_in_alpha(&fig3.curves, "fig3")?;

    let mut worst = 0.0f64;
    for composite in &fig3.curves {
        let single = |eta: f64, alphas: Vec<f64>| -> Result<SweepResult, String> {
            let cfg = ScenarioConfig {
                eta,
                alpha_f_values: alphas,
                ..fig3.config.clone()
            };
            let mut runs = cfg
                .resolve()
                .and_then(|s| s.run())
                .map_err(|e| e.to_string())?;
            Ok(runs.remove(0))
        };
        let o = single(composite.curve.eta, vec![0.0])?;
        let f = single(0.0, vec![composite.curve.alpha_f])?;
        for ((c, o), f) in composite.rows.iter().zip(&o.rows).zip(&f.rows) {
            let sum = o.b2_total + f.b2_total;
            let rel = if c.b2_total == 0.0 {
                sum.abs()
            } else {
                ((c.b2_total - sum) / c.b2_total).abs()
            };
            if rel > 1e-9 {
                return Err(format!(
                    "composite != sum at t={}: {} vs {sum}",
                    c.t, c.b2_total
                ));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "fig2 ({} curves) and fig3 ({} curves) monotone in alpha_f; composite vs sum worst rel {worst:.2e}",
        fig2.curves.len(),
        fig3.curves.len()
    ))
}

fn critical_alpha_report(dir: &Path) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_jcq"))
        .args(["critical-alpha", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let text =
        std::fs::read_to_string(dir.join("critical_alpha.json")).map_err(|e| e.to_string())?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let c = &doc["critical_alpha"];
    let num = |v: &serde_json::Value, k: &str| v[k].as_f64().ok_or_else(|| format!("missing {k}"));
    let alpha = num(c, "alpha_star")?;
    let d = num(c, "d_at_alpha_star")?;
    let analytic = num(c, "small_angle_alpha")?;
    let threshold = num(c, "threshold")?;
    if ((d - threshold) / threshold).abs() > 0.02 {
        return Err(format!("D(alpha*) = {d:e}, threshold {threshold:e}"));
    }
    if ((alpha - analytic) / analytic).abs() > 0.01 {
        return Err(format!("alpha* {alpha:e} vs analytic {analytic:e}"));
    }
    let reference = &c["reference"];
    let ref_alpha = num(reference, "alpha_f")?;
    let d_ref = num(reference, "d_at_reference_alpha_f")?;
    if ref_alpha != REFERENCE_CRITICAL_ALPHA_F
        || reference["agrees_within_bisection_width"]
            .as_bool()
            .is_none()
    {
        return Err("manifest lacks the reference comparison".into());
    }
    Ok(format!(
        "alpha* = {alpha:.4e}, D(alpha*) = {d:.4e}, analytic {analytic:.4e}; reference alpha_f {ref_alpha:e} gives D = {d_ref:.3e}"
    ))
}

fn determinism(dir: &Path) -> Outcome {
    let run = |sub: &str| -> Result<Vec<(String, Vec<u8>)>, String> {
        let out_dir = dir.join(sub);
        let status = Command::new(env!("CARGO_BIN_EXE_jcq"))
            .args(["figures", "fig3", "--out"])
            .arg(&out_dir)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&out_dir)
            .map_err(|e| e.to_string())?
            .filter_map(|e| e.ok())
            .filter(|e| e.path().extension().is_some_and(|x| x == "csv"))
            .map(|e| {
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        Ok(files)
    };
    let a = run("a")?;
    let b = run("b")?;
    if a.is_empty() {
        return Err("no CSV written".into());
    }
    if a != b {
        return Err("CSV output differs between runs".into());
    }
    Ok(format!(
        "{} CSV files byte-identical across two runs",
        a.len()
    ))
}

#[test]
fn acceptance() {
    let tmp = tempfile::tempdir().unwrap();
    let criteria: Vec<Criterion> = vec![
        (
            "1 kernel oracle equivalence",
            Box::new(kernel_oracle_equivalence),
        ),
        ("2 1/f small-angle law", Box::new(small_angle_law)),
        (
            "3 1/f temperature cancellation",
            Box::new(temperature_cancellation),
        ),
        ("4 dynamics identities", Box::new(dynamics_identities)),
        ("5 physical constants", Box::new(constants)),
        ("6 Ohmic-only curve family", Box::new(fig1_claims)),
        (
            "7 1/f and composite families",
            Box::new(fig2_fig3_structure),
        ),
        (
            "8 critical alpha_f report",
            Box::new(|| critical_alpha_report(&tmp.path().join("critical"))),
        ),
        (
            "9 determinism",
            Box::new(|| determinism(&tmp.path().join("determinism"))),
        ),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
