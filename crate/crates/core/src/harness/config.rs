//! Declarative experiment configuration.
//!
//! A config is a single strict JSON document: unknown keys are rejected so
//! that a saved file replays exactly, years later, or not at all. Scalar
//! problem parameters accept either a bare number or a `[re, im]` pair.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Real or complex scalar as it appears in the JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Complex([f64; 2]),
}

impl ParamValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            ParamValue::Real(x) => Complex64::new(x, 0.0),
            ParamValue::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Where a run writes its report; the path is a directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: String,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Settings for the `keldysh_lab` experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeldyshConfig {
    pub size: usize,
    pub p: f64,
    pub delta_norm: f64,
    pub epsilons: Vec<f64>,
}

/// Settings for the `bitsadze_witness` experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitsadzeConfig {
    pub s: f64,
    pub k_list: Vec<usize>,
    #[serde(default = "default_bitsadze_resolution")]
    pub resolution: usize,
}

fn default_bitsadze_resolution() -> usize {
    64
}

fn default_degree() -> usize {
    1
}

fn default_tol() -> f64 {
    1e-10
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Registry name: a builtin problem, `keldysh_lab`, or
    /// `bitsadze_witness`.
    pub experiment: String,
    /// Coefficient parameters for builtin problems.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ParamValue>,
    /// Mesh resolution; required for builtin problems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Eigensolver acceptance tolerance.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Ray angles for resolvent scans, in (-pi, pi].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scan_thetas: Vec<f64>,
    /// Radii shared by every scanned ray.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scan_radii: Vec<f64>,
    /// Cluster counts for the completeness table; the default ladder is
    /// {4, 8, 16, 32, N} clipped to the system size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_list: Option<Vec<usize>>,
    /// Inclusive 0-based index window for the s-number decay fit; the
    /// window must start at index 1 or later.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_window: Option<(usize, usize)>,
    #[serde(default)]
    pub seed: u64,
    /// When set, adds a seeded random perturbation of exactly this
    /// relative size on top of the problem's own perturbation terms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_perturbation_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keldysh: Option<KeldyshConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bitsadze: Option<BitsadzeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

impl ExperimentConfig {
    /// Minimal config for a builtin problem.
    pub fn for_problem(name: &str, resolution: usize, degree: usize) -> Self {
        ExperimentConfig {
            experiment: name.to_string(),
            params: BTreeMap::new(),
            resolution: Some(resolution),
            degree,
            tol: default_tol(),
            scan_thetas: Vec::new(),
            scan_radii: Vec::new(),
            m_list: None,
            fit_window: None,
            seed: 0,
            random_perturbation_c: None,
            keldysh: None,
            bitsadze: None,
            output: None,
        }
    }

    pub fn complex_params(&self) -> BTreeMap<String, Complex64> {
        self.params.iter().map(|(k, v)| (k.clone(), v.to_complex())).collect()
    }
}
