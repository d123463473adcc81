// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use jcq::config::{
    load_config, parse_band_interpretation, parse_cutoff_sign, parse_f64, parse_grid, parse_list,
    parse_pair, parse_state,
};
use jcq::{manifest, run, CliError, ExitCode};
use jcq_core::dynamics::{
    decoherence_measure, deviation, evolve, norm_closed_form, norm_lambda, within_validity,
    DynamicsParams,
};
use jcq_core::kernel::{b_squared_source, c_phase, KernelRequest};
use jcq_core::scenario::{
    ConfigOverrides, CurveSpec, Figure, KappaSource, ScenarioConfig, DIVINCENZO_THRESHOLD,
};
use jcq_core::spectra::{NoiseModel, Source, Temperature};
use jcq_core::units::t_to_tau_ps;

#[derive(Parser)]
#[command(
    name = "jcq",
    version,
    about = "Short-time decoherence of a Josephson charge qubit in Ohmic and 1/f noise"
)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// Key-value configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Josephson energy E_J in μeV.
    #[arg(long, global = true)]
    ej_uev: Option<String>,
    /// Bath temperature(s) in K, comma separated.
    #[arg(long, global = true)]
    temp_k: Option<String>,
    /// Ohmic coupling strength.
    #[arg(long, global = true)]
    eta: Option<String>,
    /// 1/f amplitude(s), comma separated.
    #[arg(long, global = true)]
    alpha_f: Option<String>,
    /// 1/f prefactor κħ² in μeV² (default: derived from C_g = 1e-18 F, C_J = 1e-16 F).
    #[arg(long, global = true)]
    kappa_uev2: Option<String>,
    /// Ohmic cutoff in GHz.
    #[arg(long, global = true)]
    e_cut_ghz: Option<String>,
    /// Ohmic band `lo:hi` in GHz.
    #[arg(long, global = true)]
    ohmic_band_ghz: Option<String>,
    /// 1/f band `lo:hi` in Hz.
    #[arg(long, global = true)]
    f_band_hz: Option<String>,
    /// Band edges as ordinary (`ordinary`) or angular (`angular`) frequencies.
    #[arg(long, global = true)]
    band: Option<String>,
    /// Time grid `start:stop:points` in dimensionless t.
    #[arg(long, global = true)]
    t_grid: Option<String>,
    /// Initial state `rho00:rho11:re(rho10):im(rho10)`.
    #[arg(long, global = true)]
    initial_state: Option<String>,
    /// Sign of the Ohmic cutoff exponent, `neg` or `pos`.
    #[arg(long, global = true)]
    cutoff_sign: Option<String>,
    /// Quadrature relative tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<String>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Decoherence threshold.
    #[arg(long, global = true, default_value_t = DIVINCENZO_THRESHOLD)]
    threshold: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate B²(t) and C(t) once, for the first temperature and α_f.
    Bsq {
        #[arg(long)]
        t: f64,
    },
    /// Evaluate D(t) and the evolved initial state once.
    Decohere {
        #[arg(long)]
        t: f64,
    },
    /// Run the full grid of the configuration.
    Sweep,
    /// Reproduce one of the reference curve families.
    Figures {
        #[arg(value_parser = ["fig1", "fig2", "fig3"])]
        which: String,
    },
    /// Find the α_f at which D(t_op) reaches the threshold.
    CriticalAlpha {
        /// Operation time; defaults to 1/E_J.
        #[arg(long)]
        t_op: Option<f64>,
    },
}

impl Flags {
    fn overrides(&self) -> Result<ConfigOverrides, CliError> {
        let file = match &self.config {
            Some(path) => load_config(path)?,
            None => ConfigOverrides::default(),
        };
        let opt =
            |key: &str, v: &Option<String>| v.as_deref().map(|s| parse_f64(key, s)).transpose();
        let flags = ConfigOverrides {
            e_j_uev: opt("--ej-uev", &self.ej_uev)?,
            temperatures_k: self
                .temp_k
                .as_deref()
                .map(|s| parse_list("--temp-k", s))
                .transpose()?,
            eta: opt("--eta", &self.eta)?,
            e_cut_ghz: opt("--e-cut-ghz", &self.e_cut_ghz)?,
            cutoff_sign: self
                .cutoff_sign
                .as_deref()
                .map(|s| parse_cutoff_sign("--cutoff-sign", s))
                .transpose()?,
            alpha_f_values: self
                .alpha_f
                .as_deref()
                .map(|s| parse_list("--alpha-f", s))
                .transpose()?,
            kappa_source: opt("--kappa-uev2", &self.kappa_uev2)?.map(KappaSource::Direct),
            ohmic_band_ghz: self
                .ohmic_band_ghz
                .as_deref()
                .map(|s| parse_pair("--ohmic-band-ghz", s))
                .transpose()?,
            oneoverf_band_hz: self
                .f_band_hz
                .as_deref()
                .map(|s| parse_pair("--f-band-hz", s))
                .transpose()?,
            band_interpretation: self
                .band
                .as_deref()
                .map(|s| parse_band_interpretation("--band", s))
                .transpose()?,
            t_grid: self
                .t_grid
                .as_deref()
                .map(|s| parse_grid("--t-grid", s))
                .transpose()?,
            initial_state: self
                .initial_state
                .as_deref()
                .map(|s| parse_state("--initial-state", s))
                .transpose()?,
            rel_tol: opt("--rel-tol", &self.rel_tol)?,
            max_refinements: None,
            panels_per_decade: None,
        };
        Ok(file.merged_with(flags))
    }
}

fn first_curve(cfg: &ScenarioConfig) -> CurveSpec {
    CurveSpec {
        temperature_k: cfg.temperatures_k.first().copied().unwrap_or(f64::NAN),
        eta: cfg.eta,
        alpha_f: cfg.alpha_f_values.first().copied().unwrap_or(f64::NAN),
    }
}

fn bsq(cfg: &ScenarioConfig, t: f64) -> Result<(), CliError> {
    let scenario = cfg.resolve()?;
    let curve = first_curve(cfg);
    let temperature = Temperature::from_kelvin(curve.temperature_k)?;
    let ohmic = scenario.ohmic(curve.eta)?;
    let f = scenario.one_over_f(curve.alpha_f)?;
    let b_o = b_squared_source(
        &Source::Ohmic(&ohmic),
        &temperature,
        t,
        &scenario.quadrature,
    )?;
    let b_f = b_squared_source(&Source::OneOverF(&f), &temperature, t, &scenario.quadrature)?;
    let c_req = |model| KernelRequest {
        model,
        temperature,
        t,
        quadrature: scenario.quadrature,
    };
    let c_o = c_phase(&c_req(NoiseModel::Ohmic(ohmic)))?;
    let c_f = c_phase(&c_req(NoiseModel::OneOverF(f)))?;
    let out = json!({
        "t": t,
        "tau_ps": t_to_tau_ps(t),
        "temperature_k": curve.temperature_k,
        "eta": curve.eta,
        "alpha_f": curve.alpha_f,
        "b2_ohmic": b_o.value,
        "b2_oneoverf": b_f.value,
        "b2_total": b_o.value + b_f.value,
        "c_ohmic": c_o.value,
        "c_oneoverf": c_f.value,
        "c_total": c_o.value + c_f.value,
        "est_rel_error": b_o.est_rel_error.max(b_f.est_rel_error).max(c_o.est_rel_error).max(c_f.est_rel_error),
        "evaluations": b_o.evaluations + b_f.evaluations + c_o.evaluations + c_f.evaluations,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializes")
    );
    Ok(())
}

fn decohere(cfg: &ScenarioConfig, t: f64) -> Result<(), CliError> {
    let scenario = cfg.resolve()?;
    let row = scenario.row(&first_curve(cfg), t)?;
    let params = DynamicsParams::new(scenario.e_j_uev, row.b2_total)?;
    let rho0 = scenario.initial_state;
    let rho = evolve(&rho0, t, &params)?;
    let sigma = deviation(&rho0, t, &params);
    let out = json!({
        "t": t,
        "tau_ps": row.tau_ps,
        "b2_ohmic": row.b2_ohmic,
        "b2_oneoverf": row.b2_oneoverf,
        "b2_total": row.b2_total,
        "D": decoherence_measure(row.b2_total),
        "norm_lambda": norm_lambda(&sigma),
        "norm_closed_form": norm_closed_form(&rho0, t, &params),
        "state": {
            "rho00": rho.rho00(),
            "rho11": rho.rho11(),
            "rho10": [rho.rho10().re, rho.rho10().im],
        },
        "within_validity": within_validity(t, scenario.e_j_uev),
        "exceeds_threshold": decoherence_measure(row.b2_total) > DIVINCENZO_THRESHOLD,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializes")
    );
    Ok(())
}

fn critical_alpha(
    cfg: &ScenarioConfig,
    threshold: f64,
    t_op: Option<f64>,
    out: &PathBuf,
) -> Result<(), CliError> {
    let scenario = cfg.resolve()?;
    let c = scenario.critical_alpha_f(threshold, t_op)?;
    let d_ref = scenario.decoherence_at(
        &CurveSpec {
            temperature_k: c.temperature_k,
            eta: c.eta,
            alpha_f: jcq_core::scenario::REFERENCE_CRITICAL_ALPHA_F,
        },
        c.t_op,
    )?;
    let doc = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "run": "critical-alpha",
        "config": manifest::config(cfg),
        "resolved": manifest::resolved(&scenario),
        "constants": manifest::constants(),
        "critical_alpha": manifest::critical_alpha(&c, d_ref),
    });
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let path = out.join("critical_alpha.json");
    run::write_json(&path, &doc)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&doc["critical_alpha"]).expect("serializes")
    );
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn report(w: &run::Written) {
    for p in &w.csv_files {
        eprintln!("wrote {}", p.display());
    }
    eprintln!("wrote {}", w.manifest.display());
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let overrides = cli.flags.overrides()?;
    match cli.command {
        Command::Bsq { t } => bsq(&overrides.applied_to(ScenarioConfig::default()), t),
        Command::Decohere { t } => decohere(&overrides.applied_to(ScenarioConfig::default()), t),
        Command::Sweep => {
            let cfg = overrides.applied_to(ScenarioConfig::default());
            report(&run::sweep_to_dir(&cfg, &cli.flags.out, "sweep", &[])?);
            Ok(())
        }
        Command::Figures { which } => {
            let figure = Figure::parse(&which).expect("clap restricts values");
            report(&run::figure_to_dir(figure, &overrides, &cli.flags.out)?);
            Ok(())
        }
        Command::CriticalAlpha { t_op } => {
            // 1/f-only unless the user asks for an Ohmic contribution
            let base = ScenarioConfig {
                eta: 0.0,
                ..ScenarioConfig::default()
            };
            critical_alpha(
                &overrides.applied_to(base),
                cli.flags.threshold,
                t_op,
                &cli.flags.out,
            )
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = execute(cli) {
        eprintln!("error: {e}");
        process::exit(e.exit_code() as i32);
    }
    process::exit(ExitCode::Success as i32);
}
