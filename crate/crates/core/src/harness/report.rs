//! Serializable run report.
//!
//! The analysis types carry closures and complex scalars, so the report
//! mirrors them in plain-data structs. A report serialized through
//! [`crate::harness::jsonfmt`] deserializes back to an identical value and
//! re-serializes to identical bytes; wall-clock timings stay out of the
//! document (they go to stderr) so repeated runs are byte-identical.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::problem::ValidationReport;
use crate::spectral::{
    AngularStats, BitsadzeRow, CompletenessRow, ResolventSample, ResolventScan, SpectralReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexPair {
    fn from(z: Complex64) -> Self {
        ComplexPair { re: z.re, im: z.im }
    }
}

impl From<ComplexPair> for Complex64 {
    fn from(p: ComplexPair) -> Self {
        Complex64::new(p.re, p.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationSummary {
    pub strongly_elliptic: bool,
    pub coercive: bool,
    pub condition: String,
    pub completeness_angle_ok: bool,
    pub notes: Vec<String>,
}

impl From<&ValidationReport> for ValidationSummary {
    fn from(v: &ValidationReport) -> Self {
        ValidationSummary {
            strongly_elliptic: v.strongly_elliptic,
            coercive: v.coercive,
            condition: v.condition_one_of_three.as_str().to_string(),
            completeness_angle_ok: v.completeness_angle_ok,
            notes: v.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayPredictionOut {
    pub label: String,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralSummary {
    pub n: usize,
    pub hermitian_path: bool,
    pub perturbation_c: f64,
    pub sector_bound: f64,
    pub sector_violations: usize,
    pub max_abs_arg: f64,
    pub completeness_angle_ok: bool,
    pub cluster_count: usize,
    pub max_chain_len: usize,
    pub decay_exponent: f64,
    pub fit_window: (usize, usize),
    pub decay_predictions: Vec<DecayPredictionOut>,
    pub eigenvalues: Vec<ComplexPair>,
    pub eigen_cluster: Vec<usize>,
    pub cluster_chain_len: Vec<usize>,
    pub s_numbers: Vec<f64>,
}

impl From<&SpectralReport> for SpectralSummary {
    fn from(r: &SpectralReport) -> Self {
        SpectralSummary {
            n: r.eigenvalues.len(),
            hermitian_path: r.hermitian_path,
            perturbation_c: r.perturbation_c,
            sector_bound: r.sector_bound,
            sector_violations: r.sector_violations,
            max_abs_arg: r.max_abs_arg,
            completeness_angle_ok: r.completeness_angle_ok,
            cluster_count: r.cluster_count,
            max_chain_len: r.max_chain_len,
            decay_exponent: r.decay_exponent,
            fit_window: r.fit_window,
            decay_predictions: r
                .decay_predictions
                .iter()
                .map(|p| DecayPredictionOut { label: p.label.clone(), slope: p.slope })
                .collect(),
            eigenvalues: r.eigenvalues.iter().map(|&z| z.into()).collect(),
            eigen_cluster: r.eigen_cluster.clone(),
            cluster_chain_len: r.cluster_chain_len.clone(),
            s_numbers: r.s_numbers.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleOut {
    pub radius: f64,
    pub lambda: ComplexPair,
    pub norm: Option<f64>,
    pub bound: Option<f64>,
    pub satisfied: Option<bool>,
    pub singular: bool,
}

impl From<&ResolventSample> for SampleOut {
    fn from(s: &ResolventSample) -> Self {
        SampleOut {
            radius: s.radius,
            lambda: s.lambda.into(),
            norm: s.norm,
            bound: s.bound,
            satisfied: s.satisfied,
            singular: s.singular,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSummary {
    pub theta: f64,
    pub m_theta: Option<f64>,
    pub perturbation_c: f64,
    pub samples: Vec<SampleOut>,
}

impl From<&ResolventScan> for ScanSummary {
    fn from(s: &ResolventScan) -> Self {
        ScanSummary {
            theta: s.theta,
            m_theta: s.m_theta,
            perturbation_c: s.perturbation_c,
            samples: s.samples.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletenessRowOut {
    pub m: usize,
    pub span_dim: usize,
    pub h_minus: f64,
    pub l2: f64,
    pub sl: f64,
}

impl From<&CompletenessRow> for CompletenessRowOut {
    fn from(r: &CompletenessRow) -> Self {
        CompletenessRowOut {
            m: r.m,
            span_dim: r.span_dim,
            h_minus: r.h_minus,
            l2: r.l2,
            sl: r.sl,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngularSummary {
    pub n: usize,
    pub p: f64,
    pub delta_norm: f64,
    pub seed: u64,
    pub epsilons: Vec<f64>,
    pub outside_counts: Vec<usize>,
    pub negative_corner_counts: Vec<usize>,
    pub root_rank: usize,
    pub eigenvalues: Vec<ComplexPair>,
}

impl From<&AngularStats> for AngularSummary {
    fn from(a: &AngularStats) -> Self {
        AngularSummary {
            n: a.n,
            p: a.p,
            delta_norm: a.delta_norm,
            seed: a.seed,
            epsilons: a.epsilons.clone(),
            outside_counts: a.outside_counts.clone(),
            negative_corner_counts: a.negative_corner_counts.clone(),
            root_rank: a.root_rank,
            eigenvalues: a.eigenvalues.iter().map(|&z| z.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitsadzeRowOut {
    pub k: usize,
    pub l2_norm: f64,
    pub sup_u: f64,
    pub sup_dx: f64,
}

impl From<&BitsadzeRow> for BitsadzeRowOut {
    fn from(r: &BitsadzeRow) -> Self {
        BitsadzeRowOut { k: r.k, l2_norm: r.l2_norm, sup_u: r.sup_u, sup_dx: r.sup_dx }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub version: String,
    pub config: ExperimentConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_dofs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scans: Vec<ScanSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub completeness: Vec<CompletenessRowOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular: Option<AngularSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bitsadze: Vec<BitsadzeRowOut>,
    /// Per-stage wall-clock seconds; reported on stderr, never serialized,
    /// so identical runs produce identical bytes.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl Report {
    pub fn new(config: ExperimentConfig) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            n_dofs: None,
            validation: None,
            spectral: None,
            scans: Vec::new(),
            completeness: Vec::new(),
            angular: None,
            bitsadze: Vec::new(),
            timings: Vec::new(),
        }
    }
}
