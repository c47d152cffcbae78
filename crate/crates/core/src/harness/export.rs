//! Disk output: JSON reports, CSV tables, and matrix archives.
//!
//! All writes go through a temp-file-plus-rename so a crashed run never
//! leaves a half-written document behind. Floats use the same 17-digit
//! scientific format everywhere, which round-trips doubles exactly.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use super::jsonfmt::{format_float, to_json_bytes};
use super::report::Report;
use super::HarnessError;
use crate::linalg::{canonical_arg, DenseMatrix};

fn io_err(path: &Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io { path: path.to_path_buf(), source }
}

fn serialize_err(what: &'static str, e: serde_json::Error) -> HarnessError {
    HarnessError::Numeric { stage: what, message: e.to_string() }
}

/// Writes through `<name>.tmp` in the same directory, then renames.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    let name = path
        .file_name()
        .ok_or_else(|| HarnessError::Config(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

pub fn report_json_bytes(report: &Report) -> Result<Vec<u8>, HarnessError> {
    to_json_bytes(report).map_err(|e| serialize_err("report serialization", e))
}

/// Writes the report into `dir`: `report.json` for JSON, one CSV file per
/// populated table for CSV. Returns the paths written.
pub fn export(
    report: &Report,
    format: OutputFormat,
    dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    match format {
        OutputFormat::Json => {
            let path = dir.join("report.json");
            atomic_write(&path, &report_json_bytes(report)?)?;
            Ok(vec![path])
        }
        OutputFormat::Csv => export_csv(report, dir),
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn export_csv(report: &Report, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut written = Vec::new();
    let mut emit = |name: &str, body: String| -> Result<(), HarnessError> {
        let path = dir.join(name);
        atomic_write(&path, body.as_bytes())?;
        written.push(path);
        Ok(())
    };

    if let Some(sp) = &report.spectral {
        let mut body = String::from("index,re,im,abs,arg,cluster,chain_len\n");
        for (i, (z, &cluster)) in sp.eigenvalues.iter().zip(&sp.eigen_cluster).enumerate() {
            let lambda = Complex64::new(z.re, z.im);
            body.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                i,
                format_float(z.re),
                format_float(z.im),
                format_float(lambda.norm()),
                format_float(canonical_arg(lambda)),
                cluster,
                sp.cluster_chain_len[cluster],
            ));
        }
        emit("eigenvalues.csv", body)?;

        let mut body = String::from("index,mu\n");
        for (i, &mu) in sp.s_numbers.iter().enumerate() {
            body.push_str(&format!("{},{}\n", i, format_float(mu)));
        }
        emit("s_numbers.csv", body)?;
    }

    if !report.scans.is_empty() {
        let mut body = String::from("theta,r,norm,bound,ok\n");
        for scan in &report.scans {
            for s in &scan.samples {
                let ok = s.satisfied.map(|b| b.to_string()).unwrap_or_default();
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format_float(scan.theta),
                    format_float(s.radius),
                    opt_cell(s.norm),
                    opt_cell(s.bound),
                    ok,
                ));
            }
        }
        emit("scans.csv", body)?;
    }

    if !report.completeness.is_empty() {
        let mut body = String::from("m,span_dim,h_minus,l2,sl\n");
        for row in &report.completeness {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                row.m,
                row.span_dim,
                format_float(row.h_minus),
                format_float(row.l2),
                format_float(row.sl),
            ));
        }
        emit("completeness.csv", body)?;
    }

    if let Some(angular) = &report.angular {
        let mut body = String::from("epsilon,outside,negative_corner\n");
        for (i, &eps) in angular.epsilons.iter().enumerate() {
            body.push_str(&format!(
                "{},{},{}\n",
                format_float(eps),
                angular.outside_counts[i],
                angular.negative_corner_counts[i],
            ));
        }
        emit("angular.csv", body)?;
    }

    if !report.bitsadze.is_empty() {
        let mut body = String::from("k,l2_norm,sup_u,sup_dx\n");
        for row in &report.bitsadze {
            body.push_str(&format!(
                "{},{},{},{}\n",
                row.k,
                format_float(row.l2_norm),
                format_float(row.sup_u),
                format_float(row.sup_dx),
            ));
        }
        emit("bitsadze.csv", body)?;
    }

    Ok(written)
}

/// On-disk form of one dense matrix; bit-exact by the 17-digit float rule.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixArchive {
    n: usize,
    format: String,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn write_matrix_archive(path: &Path, m: &DenseMatrix) -> Result<(), HarnessError> {
    if !m.is_square() {
        return Err(HarnessError::Config("matrix archives hold square matrices".into()));
    }
    let data = m.data();
    let doc = MatrixArchive {
        n: m.n_rows(),
        format: "dense-rowmajor".to_string(),
        re: data.iter().map(|z| z.re).collect(),
        im: data.iter().map(|z| z.im).collect(),
    };
    let bytes = to_json_bytes(&doc).map_err(|e| serialize_err("matrix archive", e))?;
    atomic_write(path, &bytes)
}

pub fn read_matrix_archive(path: &Path) -> Result<DenseMatrix, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: MatrixArchive = serde_json::from_str(&text)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    if doc.format != "dense-rowmajor" {
        return Err(HarnessError::Config(format!(
            "{}: unsupported matrix format '{}'",
            path.display(),
            doc.format
        )));
    }
    if doc.re.len() != doc.n * doc.n || doc.im.len() != doc.n * doc.n {
        return Err(HarnessError::Config(format!(
            "{}: entry count does not match n = {}",
            path.display(),
            doc.n
        )));
    }
    DenseMatrix::from_fn(doc.n, doc.n, |i, j| {
        Complex64::new(doc.re[i * doc.n + j], doc.im[i * doc.n + j])
    })
    .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ExperimentConfig;
    use crate::harness::report::{ComplexPair, SpectralSummary};

    fn spectral_stub() -> SpectralSummary {
        SpectralSummary {
            n: 3,
            hermitian_path: true,
            perturbation_c: 0.0,
            sector_bound: 0.0,
            sector_violations: 0,
            max_abs_arg: 0.0,
            completeness_angle_ok: true,
            cluster_count: 3,
            max_chain_len: 1,
            decay_exponent: -2.0,
            fit_window: (1, 3),
            decay_predictions: Vec::new(),
            eigenvalues: vec![
                ComplexPair { re: 1.0, im: 0.0 },
                ComplexPair { re: 2.0, im: 0.0 },
                ComplexPair { re: 4.0, im: 0.0 },
            ],
            eigen_cluster: vec![0, 1, 2],
            cluster_chain_len: vec![1, 1, 1],
            s_numbers: vec![1.0, 0.5, 0.25],
        }
    }

    #[test]
    fn matrix_archive_round_trips_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = DenseMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(
                1.0 / (1.0 + i as f64 + j as f64),
                (i as f64 - j as f64) * std::f64::consts::PI,
            )
        })
        .unwrap();
        write_matrix_archive(&path, &m).unwrap();
        let back = read_matrix_archive(&path).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[(i, j)].re.to_bits(), back[(i, j)].re.to_bits());
                assert_eq!(m[(i, j)].im.to_bits(), back[(i, j)].im.to_bits());
            }
        }
        assert!(!dir.path().join("m.json.tmp").exists());
    }

    #[test]
    fn archive_rejects_corrupt_documents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, r#"{"n": 2, "format": "dense-rowmajor", "re": [1.0], "im": [0.0]}"#)
            .unwrap();
        assert!(read_matrix_archive(&path).is_err());
        fs::write(
            &path,
            r#"{"n": 1, "format": "sparse", "re": [1.0], "im": [0.0]}"#,
        )
        .unwrap();
        assert!(read_matrix_archive(&path).is_err());
    }

    #[test]
    fn csv_export_writes_one_file_per_populated_table() {
        let mut report = Report::new(ExperimentConfig::for_problem("neumann_1d", 4, 1));
        report.spectral = Some(spectral_stub());
        let dir = tempfile::tempdir().unwrap();
        let written = export(&report, OutputFormat::Csv, dir.path()).unwrap();
        let names: Vec<_> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(names, vec!["eigenvalues.csv", "s_numbers.csv"]);
        let eig = fs::read_to_string(&written[0]).unwrap();
        let lines: Vec<_> = eig.lines().collect();
        assert_eq!(lines[0], "index,re,im,abs,arg,cluster,chain_len");
        assert_eq!(lines.len(), 1 + 3);
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn json_export_round_trips() {
        let mut report = Report::new(ExperimentConfig::for_problem("robin_1d", 4, 1));
        report.spectral = Some(spectral_stub());
        let dir = tempfile::tempdir().unwrap();
        let written = export(&report, OutputFormat::Json, dir.path()).unwrap();
        assert_eq!(written.len(), 1);
        let bytes = fs::read(&written[0]).unwrap();
        let back: Report = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(report_json_bytes(&back).unwrap(), bytes);
    }
}
