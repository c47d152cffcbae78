//! Experiment runner: configuration in, report out.
//!
//! [`run`] resolves a registry name, executes the pipeline for it
//! (validate, discretize, analyze, then any requested scans and
//! completeness tables for builtin problems; the dedicated labs for
//! `keldysh_lab` and `bitsadze_witness`), and assembles a serializable
//! [`Report`]. Everything is deterministic given the config and seed.
//!
//! Error classification follows the process exit codes: configuration
//! problems (including unknown names and out-of-range settings) exit 2,
//! numerical failures (factorization or eigensolver breakdowns) exit 3.

pub mod config;
pub mod export;
pub mod jsonfmt;
pub mod report;

pub use config::{ExperimentConfig, OutputFormat, ParamValue};
pub use report::Report;

use std::time::Instant;

use num_complex::Complex64;
use thiserror::Error;

use crate::discretize::{discretize, interpolate, DiscretizeError};
use crate::problem::{builtin_problem, validate, BUILTIN_PROBLEMS};
use crate::spectral::{
    analyze, bitsadze_witness, completeness_residual, keldysh_lab, random_energy_perturbation,
    resolvent_scan, SpectralError,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: std::path::PathBuf, source: std::io::Error },
    #[error("numerical failure in {stage}: {message}")]
    Numeric { stage: &'static str, message: String },
}

impl HarnessError {
    /// Process exit code: 2 for configuration and I/O problems, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Io { .. } => 2,
            HarnessError::Numeric { .. } => 3,
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(e.to_string())
}

fn numeric(stage: &'static str, e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numeric { stage, message: e.to_string() }
}

/// Discretization failures are config errors unless the assembled
/// matrices themselves misbehave.
fn map_discretize(e: DiscretizeError) -> HarnessError {
    match e {
        DiscretizeError::AsymmetricGram { .. } | DiscretizeError::GramNotPositive(_) => {
            numeric("discretize", e)
        }
        other => HarnessError::Config(format!("discretize: {other}")),
    }
}

fn map_spectral(stage: &'static str) -> impl Fn(SpectralError) -> HarnessError {
    move |e| match e {
        SpectralError::InvalidArgument(_) => HarnessError::Config(format!("{stage}: {e}")),
        SpectralError::Linalg(_) => numeric(stage, e),
    }
}

/// Every runnable experiment: the builtin problems plus the two labs.
pub fn registry() -> Vec<&'static str> {
    BUILTIN_PROBLEMS
        .iter()
        .copied()
        .chain(["keldysh_lab", "bitsadze_witness"])
        .collect()
}

pub fn run(cfg: &ExperimentConfig) -> Result<Report, HarnessError> {
    match cfg.experiment.as_str() {
        "keldysh_lab" => run_keldysh(cfg),
        "bitsadze_witness" => run_bitsadze(cfg),
        name if BUILTIN_PROBLEMS.contains(&name) => run_builtin(cfg),
        name => Err(HarnessError::Config(format!("unknown problem '{name}'"))),
    }
}

/// Default completeness ladder: {4, 8, 16, 32, N} clipped to the system
/// size.
fn default_m_list(n: usize) -> Vec<usize> {
    let mut list: Vec<usize> = [4usize, 8, 16, 32, n].into_iter().filter(|&m| m <= n).collect();
    list.dedup();
    list
}

fn run_builtin(cfg: &ExperimentConfig) -> Result<Report, HarnessError> {
    let resolution = cfg
        .resolution
        .ok_or_else(|| config_err("'resolution' is required for builtin problems"))?;
    if !cfg.scan_thetas.is_empty() && cfg.scan_radii.is_empty() {
        return Err(config_err("'scan_radii' must be nonempty when 'scan_thetas' is given"));
    }

    let mut report = Report::new(cfg.clone());
    let spec = builtin_problem(&cfg.experiment, &cfg.complex_params()).map_err(config_err)?;

    let t = Instant::now();
    let validation = validate(&spec, 16).map_err(config_err)?;
    report.timings.push(("validate".into(), t.elapsed().as_secs_f64()));
    report.validation = Some((&validation).into());

    let t = Instant::now();
    let mut sys = discretize(&spec, resolution, cfg.degree).map_err(map_discretize)?;
    report.timings.push(("discretize".into(), t.elapsed().as_secs_f64()));
    report.n_dofs = Some(sys.n());

    if let Some(target_c) = cfg.random_perturbation_c {
        let extra = random_energy_perturbation(&sys, cfg.seed, target_c)
            .map_err(map_spectral("perturbation"))?;
        sys.d = sys.d.add(&extra).map_err(|e| numeric("perturbation", e))?;
    }

    let t = Instant::now();
    let spectral = analyze(&sys, cfg.tol, cfg.fit_window).map_err(map_spectral("analyze"))?;
    report.timings.push(("analyze".into(), t.elapsed().as_secs_f64()));
    report.spectral = Some((&spectral).into());

    if !cfg.scan_thetas.is_empty() {
        let t = Instant::now();
        for &theta in &cfg.scan_thetas {
            let scan = resolvent_scan(&sys, theta, &cfg.scan_radii)
                .map_err(map_spectral("resolvent_scan"))?;
            report.scans.push((&scan).into());
        }
        report.timings.push(("scans".into(), t.elapsed().as_secs_f64()));
    }

    let m_list = cfg.m_list.clone().unwrap_or_else(|| default_m_list(sys.n()));
    if !m_list.is_empty() {
        let t = Instant::now();
        // Smooth, nowhere-vanishing default target: the nodal interpolant
        // of exp(x) resp. exp(x + y).
        let target = interpolate(&sys.basis, |p| Complex64::new((p[0] + p[1]).exp(), 0.0));
        let rows = completeness_residual(&sys, &target, &m_list)
            .map_err(map_spectral("completeness"))?;
        report.timings.push(("completeness".into(), t.elapsed().as_secs_f64()));
        report.completeness = rows.iter().map(Into::into).collect();
    }

    Ok(report)
}

fn run_keldysh(cfg: &ExperimentConfig) -> Result<Report, HarnessError> {
    let kc = cfg
        .keldysh
        .as_ref()
        .ok_or_else(|| config_err("experiment 'keldysh_lab' requires a 'keldysh' section"))?;
    let mut report = Report::new(cfg.clone());
    let t = Instant::now();
    let stats = keldysh_lab(kc.size, kc.p, kc.delta_norm, &kc.epsilons, cfg.seed)
        .map_err(map_spectral("keldysh_lab"))?;
    report.timings.push(("keldysh_lab".into(), t.elapsed().as_secs_f64()));
    report.angular = Some((&stats).into());
    Ok(report)
}

fn run_bitsadze(cfg: &ExperimentConfig) -> Result<Report, HarnessError> {
    let bc = cfg
        .bitsadze
        .as_ref()
        .ok_or_else(|| config_err("experiment 'bitsadze_witness' requires a 'bitsadze' section"))?;
    let mut report = Report::new(cfg.clone());
    let t = Instant::now();
    let rows = bitsadze_witness(bc.s, &bc.k_list, bc.resolution)
        .map_err(map_spectral("bitsadze_witness"))?;
    report.timings.push(("bitsadze_witness".into(), t.elapsed().as_secs_f64()));
    report.bitsadze = rows.iter().map(Into::into).collect();
    Ok(report)
}
