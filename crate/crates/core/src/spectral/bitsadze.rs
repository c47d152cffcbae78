//! A witness family against well-posedness of a second-order problem with
//! complex principal part on the upper half-disk.
//!
//! The functions `u_k(z) = (|z|^2 - 1) sin(kz) / k^s` vanish identically
//! on the boundary circle, and on the real segment their values and first
//! derivatives shrink like powers of k. Their interior size explodes:
//! `|sin(kz)|^2 = sin^2(kx) + sinh^2(ky)`, so the L2 norm over the
//! half-disk grows like `e^k / k^s`. Boundary data going to zero with
//! interior norms diverging rules out any a-priori estimate, whatever
//! norms one picks on the two sides; this module computes the three
//! quantities per k so the divergence is a checkable table.

use super::{bad, SpectralError};
use crate::discretize::gauss_legendre;

/// Largest admitted frequency: keeps every intermediate, in particular
/// `sinh(k)^2` in the modulus identity, below 1e300.
pub const MAX_WITNESS_FREQUENCY: usize = 345;

#[derive(Clone, Debug)]
pub struct BitsadzeRow {
    pub k: usize,
    /// L2 norm of u_k over the upper half-disk.
    pub l2_norm: f64,
    /// sup of |u_k| over the real segment [-1, 1].
    pub sup_u: f64,
    /// sup of |d/dx u_k| over the real segment.
    pub sup_dx: f64,
}

/// `|u_k|` at `z = r e^{i theta}` in polar coordinates. The boundary
/// factor is `r^2 - 1`, exactly zero at `r = 1`, so circle samples vanish
/// identically no matter how large `sin(kz)` gets.
pub fn witness_value(k: usize, s: f64, r: f64, theta: f64) -> f64 {
    let kf = k as f64;
    let x = r * theta.cos();
    let y = r * theta.sin();
    let modulus2 = (kf * x).sin().powi(2) + (kf * y).sinh().powi(2);
    (r * r - 1.0).abs() * modulus2.sqrt() / kf.powf(s)
}

/// u_k and its x-derivative on the real segment, where everything is real:
/// `u = (x^2 - 1) sin(kx) / k^s`.
fn segment_values(k: usize, s: f64, x: f64) -> (f64, f64) {
    let kf = k as f64;
    let scale = kf.powf(s);
    let u = (x * x - 1.0) * (kf * x).sin() / scale;
    let du = (2.0 * x * (kf * x).sin() + kf * (x * x - 1.0) * (kf * x).cos()) / scale;
    (u, du)
}

/// Tabulates `(k, L2 norm on the half-disk, segment sup of |u_k|, segment
/// sup of |u_k'|)` for an ascending list of frequencies. The L2 norm uses
/// a composite 8-point Gauss-Legendre rule with `resolution` panels per
/// polar axis; segment suprema scan `4 * resolution + 1` uniform points.
/// Vanishing on the half-circle is re-verified at `2 * resolution + 1`
/// sample angles before returning.
pub fn bitsadze_witness(
    s: f64,
    k_list: &[usize],
    resolution: usize,
) -> Result<Vec<BitsadzeRow>, SpectralError> {
    use std::f64::consts::PI;
    if !(s > 1.0 && s.is_finite()) {
        return Err(bad(format!("smoothness exponent {s} must exceed 1")));
    }
    if resolution < 64 {
        return Err(bad(format!("resolution {resolution} below the floor of 64")));
    }
    if k_list.is_empty() {
        return Err(bad("no frequencies given"));
    }
    for pair in k_list.windows(2) {
        if pair[1] <= pair[0] {
            return Err(bad("frequency list must be strictly ascending"));
        }
    }
    for &k in k_list {
        if k == 0 {
            return Err(bad("frequencies must be at least 1"));
        }
        if k > MAX_WITNESS_FREQUENCY {
            return Err(bad(format!(
                "frequency {k} exceeds the overflow cap {MAX_WITNESS_FREQUENCY}"
            )));
        }
    }

    let quad = gauss_legendre(8).expect("order 8 is within the supported range");
    let panel = |a: f64, b: f64| -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        quad.nodes
            .iter()
            .zip(&quad.weights)
            .map(|(&t, &w)| (a + half * (t + 1.0), w * half))
            .collect()
    };
    let mut r_points = Vec::with_capacity(8 * resolution);
    let mut t_points = Vec::with_capacity(8 * resolution);
    for i in 0..resolution {
        let (a, b) = (i as f64 / resolution as f64, (i + 1) as f64 / resolution as f64);
        r_points.extend(panel(a, b));
        t_points.extend(panel(PI * a, PI * b));
    }

    let mut rows = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let kf = k as f64;

        let mut integral = 0.0;
        for &(r, wr) in &r_points {
            let damp = (1.0 - r * r).powi(2) * r * wr;
            let mut theta_sum = 0.0;
            for &(theta, wt) in &t_points {
                let x = r * theta.cos();
                let y = r * theta.sin();
                theta_sum += wt * ((kf * x).sin().powi(2) + (kf * y).sinh().powi(2));
            }
            integral += damp * theta_sum;
        }
        let l2_norm = integral.sqrt() / kf.powf(s);

        let samples = 4 * resolution;
        let mut sup_u = 0.0f64;
        let mut sup_dx = 0.0f64;
        for i in 0..=samples {
            let x = -1.0 + 2.0 * i as f64 / samples as f64;
            let (u, du) = segment_values(k, s, x);
            sup_u = sup_u.max(u.abs());
            sup_dx = sup_dx.max(du.abs());
        }

        for j in 0..=2 * resolution {
            let theta = PI * j as f64 / (2 * resolution) as f64;
            let v = witness_value(k, s, 1.0, theta);
            if !(v <= 1e-12) {
                return Err(bad(format!(
                    "boundary vanishing failed at k = {k}, theta = {theta}: |u| = {v}"
                )));
            }
        }

        rows.push(BitsadzeRow { k, l2_norm, sup_u, sup_dx });
    }
    Ok(rows)
}
