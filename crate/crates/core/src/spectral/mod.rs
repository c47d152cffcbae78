//! Spectral analysis of an assembled pencil `(K0 + D, M)` in the geometry
//! induced by the unperturbed form.
//!
//! With `K0 = G G^H` (Cholesky) the coefficient-space pencil is unitarily
//! equivalent to the Euclidean matrix `G_M^{-1}(K0 + D)G_M^{-H}` built from
//! the mass factor `M = G_M G_M^H`. Three quantities drive everything here:
//!
//! * `c = sigma_max(G^{-1} D G^{-H})` — the relative size of the
//!   perturbation against the unperturbed form. It is the smallest constant
//!   with `|v^H D u| <= c |G^H u| |G^H v|`.
//! * the sector fact: every pencil eigenvalue satisfies
//!   `|arg lambda| <= arcsin(c)` whenever `c < 1`. This is exact at the
//!   matrix level: if `|arg lambda| > arcsin c`, then in the `K0` geometry
//!   `|(I - lambda P)y| >= |sin arg lambda| |y| > c |y| >= |E y|`, so
//!   `K0 + D - lambda M` stays invertible.
//! * the s-numbers `mu_k`, eigenvalues of `P = G^{-1} M G^{-H}` in
//!   descending order. They are the singular values of the embedding of the
//!   form domain into its dual, and their power-law decay exponent is the
//!   handle on Schatten membership.
//!
//! [`resolvent_scan`] samples `|R(lambda)| = sigma_max(G^{-1} M (K0 + D -
//! lambda M)^{-1} G)` along rays `lambda = r e^{i theta}` and compares with
//! the closed-form ray bound: for the unperturbed pencil the norm equals
//! `max_k 1/|lambda_k - lambda|`, bounded by `1/(m_theta r)` where
//! `m_theta = |sin theta|` for `|theta| < pi/2` and `1` beyond; with a
//! perturbation of size `c < m_theta` the Neumann series gives the extra
//! factor `(1 - c/m_theta)^{-1}`.
//!
//! [`completeness_residual`] measures how well spans of root vectors
//! (ordered by eigenvalue modulus, clusters kept whole) approximate a
//! target vector in the three natural norms: dual, L2, and form norm.

pub mod bitsadze;
pub mod keldysh;

pub use bitsadze::{bitsadze_witness, witness_value, BitsadzeRow};
pub use keldysh::{keldysh_lab, AngularStats};

use num_complex::Complex64;
use thiserror::Error;

use crate::discretize::AssembledSystem;
use crate::linalg::{
    canonical_arg, cholesky, eigenvalue_order, hermitian_eig, schur, sort_schur, spectral_norm,
    svd_values, vdot, vnorm, DenseMatrix, LinalgError, HERMITIAN_REL_TOL,
};
use crate::problem::ProblemSpec;
use crate::rng::Counter64;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn bad(msg: impl Into<String>) -> SpectralError {
    SpectralError::InvalidArgument(msg.into())
}

/// `G^{-1} A G^{-H}` for a lower-triangular factor `G`.
fn two_sided_lower_solve(g: &DenseMatrix, a: &DenseMatrix) -> Result<DenseMatrix, SpectralError> {
    let x = g.solve_lower_mat(a)?;
    Ok(g.solve_lower_mat(&x.adjoint())?.adjoint())
}

/// Reduces the pencil to the Euclidean matrix `G_M^{-1}(K0+D)G_M^{-H}`,
/// returning it together with the mass factor.
fn euclidean_pencil(sys: &AssembledSystem) -> Result<(DenseMatrix, DenseMatrix), SpectralError> {
    let l = sys.k0.add(&sys.d)?;
    let g_m = cholesky(&sys.m)?;
    let b = two_sided_lower_solve(&g_m, &l)?;
    Ok((b, g_m))
}

/// The discrete perturbation size `c = sigma_max(G^{-1} D G^{-H})` with
/// `K0 = G G^H`; zero if and only if `D = 0`.
pub fn perturbation_norm(sys: &AssembledSystem) -> Result<f64, SpectralError> {
    if sys.d.frobenius_norm() == 0.0 {
        return Ok(0.0);
    }
    let e = two_sided_lower_solve(&sys.g_k0, &sys.d)?;
    Ok(spectral_norm(&e)?)
}

/// The s-numbers `mu_k`: eigenvalues of `G^{-1} M G^{-H}` in descending
/// order. They equal the reciprocals of the unperturbed pencil eigenvalues.
pub fn s_numbers(sys: &AssembledSystem) -> Result<Vec<f64>, SpectralError> {
    let p = two_sided_lower_solve(&sys.g_k0, &sys.m)?;
    let (vals, _) = hermitian_eig(&p.hermitian_part(), false)?;
    Ok(vals.into_iter().rev().collect())
}

/// Default log-log fit window `[N/8, N/2]` capped at `[10, 50]`: the upper
/// part of a discrete spectrum does not approximate the continuous operator
/// and must stay out of the fit. Endpoints are 0-based indices into the
/// descending s-number sequence, as in [`fit_decay`].
pub fn default_fit_window(n: usize) -> (usize, usize) {
    let lo = (n / 8).clamp(1, 10);
    let mut hi = (n / 2).min(50);
    if hi <= lo {
        hi = lo + 1;
    }
    (lo, hi.min(n.saturating_sub(1)))
}

/// Least-squares slope of `log mu[k]` against `log k` over the inclusive
/// index window into the descending sequence. Indices are 0-based so that
/// `mu[k]` pairs with the k-th mode of the underlying operator (a Neumann
/// problem puts its constant mode at k = 0); the window must start at 1 or
/// later for the logarithm to exist.
pub fn fit_decay(mu: &[f64], window: (usize, usize)) -> Result<f64, SpectralError> {
    let (lo, hi) = window;
    if lo < 1 || hi <= lo || hi >= mu.len() {
        return Err(bad(format!(
            "fit window [{lo}, {hi}] invalid for {} s-numbers",
            mu.len()
        )));
    }
    let mut xs = Vec::with_capacity(hi - lo + 1);
    let mut ys = Vec::with_capacity(hi - lo + 1);
    for k in lo..=hi {
        let v = mu[k];
        if !(v > 0.0) {
            return Err(bad(format!("s-number {k} is not positive: {v}")));
        }
        xs.push((k as f64).ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    Ok(num / den)
}

/// Consecutive-gap clustering of canonically sorted eigenvalues; returns a
/// cluster id per index, ids increasing with the sort order.
fn consecutive_clusters(values: &[Complex64], ctol: f64) -> Vec<usize> {
    let mut ids = vec![0usize; values.len()];
    for i in 1..values.len() {
        ids[i] = if (values[i] - values[i - 1]).norm() <= ctol {
            ids[i - 1]
        } else {
            ids[i - 1] + 1
        };
    }
    ids
}

/// Longest Jordan chain inside one diagonal Schur block: the nilpotency
/// index of the block minus its mean eigenvalue, with rank decisions scaled
/// to the cluster tolerance so that a normal cluster of nearby eigenvalues
/// counts as semisimple.
fn block_chain_len(
    t: &DenseMatrix,
    lo: usize,
    hi: usize,
    ctol: f64,
) -> Result<usize, SpectralError> {
    let k = hi - lo;
    if k <= 1 {
        return Ok(1);
    }
    let mut mean = Complex64::new(0.0, 0.0);
    for i in lo..hi {
        mean += t[(i, i)];
    }
    mean /= k as f64;
    let nilpotent = DenseMatrix::from_fn(k, k, |i, j| {
        let v = t[(lo + i, lo + j)];
        if i == j {
            v - mean
        } else {
            v
        }
    })?;
    let thr = 10.0 * k as f64 * ctol;
    let top = spectral_norm(&nilpotent)?;
    if top <= thr {
        return Ok(1);
    }
    let mut power = nilpotent.clone();
    for j in 1..=k {
        let svals = svd_values(&power)?;
        let thr_j = thr * top.powi(j as i32 - 1);
        if svals.iter().all(|&s| s <= thr_j) {
            return Ok(j);
        }
        if j < k {
            power = power.matmul(&nilpotent)?;
        }
    }
    Ok(k)
}

/// True when the principal coefficients are exactly the complex-structure
/// matrix [[1, i], [-i, 1]], i.e. the form integrates `|2 dbar u|^2`.
fn has_cauchy_riemann_principal(spec: &ProblemSpec) -> bool {
    if spec.domain.dim() != 2 {
        return false;
    }
    let i = Complex64::new(0.0, 1.0);
    let want = [Complex64::new(1.0, 0.0), i, -i, Complex64::new(1.0, 0.0)];
    spec.domain.interior_points(3).iter().all(|&p| {
        let a = (spec.a_matrix)(p);
        a.len() == 4 && a.iter().zip(&want).all(|(x, w)| (x - w).norm() <= 1e-12)
    })
}

#[derive(Clone, Debug)]
pub struct DecayPrediction {
    pub label: String,
    pub slope: f64,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    /// Pencil eigenvalues of `(K0 + D, M)`, ascending by (modulus, argument).
    pub eigenvalues: Vec<Complex64>,
    /// Cluster id per eigenvalue (consecutive in the sort order).
    pub eigen_cluster: Vec<usize>,
    pub cluster_count: usize,
    /// Longest Jordan chain per cluster; all ones on the Hermitian path.
    pub cluster_chain_len: Vec<usize>,
    pub max_chain_len: usize,
    /// s-numbers, descending.
    pub s_numbers: Vec<f64>,
    /// Discrete perturbation size c.
    pub perturbation_c: f64,
    pub max_abs_arg: f64,
    /// arcsin(min(c, 1)).
    pub sector_bound: f64,
    /// Eigenvalues with |arg| beyond sector_bound + 1e-8.
    pub sector_violations: usize,
    pub decay_exponent: f64,
    pub fit_window: (usize, usize),
    pub decay_predictions: Vec<DecayPrediction>,
    /// c < sin(pi s / n) with n the real spatial dimension.
    pub completeness_angle_ok: bool,
    /// Whether the reduced pencil was Hermitian, giving exactly real
    /// eigenvalues through the symmetric solver.
    pub hermitian_path: bool,
}

/// Angle slack on sector violations: containment is exact in exact
/// arithmetic, so the slack only covers eigensolver residuals.
pub const SECTOR_ARG_TOL: f64 = 1e-8;

pub fn analyze(
    sys: &AssembledSystem,
    tol: f64,
    window: Option<(usize, usize)>,
) -> Result<SpectralReport, SpectralError> {
    let n = sys.n();
    if n < 2 {
        return Err(bad("analysis needs at least two degrees of freedom"));
    }
    if !(tol >= 1e-14) {
        return Err(bad(format!("tolerance {tol} below the credible floor 1e-14")));
    }
    let (b, _g_m) = euclidean_pencil(sys)?;
    let scale = b.frobenius_norm();
    let ctol = 1e-6 * scale.max(f64::MIN_POSITIVE);
    let hermitian_path = b.hermitian_defect() <= HERMITIAN_REL_TOL;

    let (eigenvalues, eigen_cluster, cluster_chain_len) = if hermitian_path {
        let (vals, _) = hermitian_eig(&b.hermitian_part(), false)?;
        let mut values: Vec<Complex64> =
            vals.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        values.sort_by(|x, y| eigenvalue_order(*x, *y));
        let trace: Complex64 = (0..n).map(|i| b[(i, i)]).sum();
        let sum: Complex64 = values.iter().sum();
        if (trace - sum).norm() > tol.max(1e-10) * scale.max(1.0) {
            return Err(SpectralError::Linalg(LinalgError::NoConvergence {
                stage: "analyze_trace",
                sweeps: 0,
            }));
        }
        let ids = consecutive_clusters(&values, ctol);
        let count = ids.last().map_or(0, |&c| c + 1);
        (values, ids, vec![1usize; count])
    } else {
        let mut s = schur(&b)?;
        sort_schur(&mut s, |z| (z.norm(), canonical_arg(z)));
        // Reconstruction residual is the quality gate for the whole report.
        let recon = s.q.matmul(&s.t)?.matmul(&s.q.adjoint())?;
        let err = recon.sub(&b)?.frobenius_norm();
        if err > tol.max(1e-12) * scale.max(1.0) {
            return Err(SpectralError::Linalg(LinalgError::NoConvergence {
                stage: "analyze_schur",
                sweeps: 0,
            }));
        }
        let values: Vec<Complex64> = (0..n).map(|i| s.t[(i, i)]).collect();
        let ids = consecutive_clusters(&values, ctol);
        let count = ids.last().map_or(0, |&c| c + 1);
        let mut chains = Vec::with_capacity(count);
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && ids[end] == ids[start] {
                end += 1;
            }
            chains.push(block_chain_len(&s.t, start, end, ctol)?);
            start = end;
        }
        (values, ids, chains)
    };

    let cluster_count = cluster_chain_len.len();
    let max_chain_len = cluster_chain_len.iter().copied().max().unwrap_or(1);

    let mu = s_numbers(sys)?;
    for (k, &v) in mu.iter().enumerate() {
        if !(v > 0.0) {
            return Err(bad(format!("s-number {k} is not positive: {v}")));
        }
    }
    let fit_window = window.unwrap_or_else(|| default_fit_window(n));
    let decay_exponent = fit_decay(&mu, fit_window)?;

    let c = perturbation_norm(sys)?;
    let max_abs_arg =
        eigenvalues.iter().map(|&z| canonical_arg(z).abs()).fold(0.0, f64::max);
    let sector_bound = c.min(1.0).asin();
    let sector_violations = eigenvalues
        .iter()
        .filter(|&&z| canonical_arg(z).abs() > sector_bound + SECTOR_ARG_TOL)
        .count();

    let s_exp = sys.spec.s_exponent;
    let dim = sys.dim() as f64;
    let completeness_angle_ok = c < (std::f64::consts::PI * s_exp / dim).sin();
    let mut decay_predictions = vec![DecayPrediction {
        label: "smoothness_over_real_dimension".to_string(),
        slope: -2.0 * s_exp / dim,
    }];
    if has_cauchy_riemann_principal(&sys.spec) {
        decay_predictions.push(DecayPrediction {
            label: "smoothness_over_complex_dimension".to_string(),
            slope: -2.0 * s_exp / (dim / 2.0),
        });
    }

    Ok(SpectralReport {
        eigenvalues,
        eigen_cluster,
        cluster_count,
        cluster_chain_len,
        max_chain_len,
        s_numbers: mu,
        perturbation_c: c,
        max_abs_arg,
        sector_bound,
        sector_violations,
        decay_exponent,
        fit_window,
        decay_predictions,
        completeness_angle_ok,
        hermitian_path,
    })
}

#[derive(Clone, Debug)]
pub struct ResolventSample {
    pub radius: f64,
    pub lambda: Complex64,
    /// Dual-norm resolvent norm; absent when the sample hit an eigenvalue.
    pub norm: Option<f64>,
    /// Ray bound; absent at theta = 0 or when c >= m_theta.
    pub bound: Option<f64>,
    pub satisfied: Option<bool>,
    pub singular: bool,
}

#[derive(Clone, Debug)]
pub struct ResolventScan {
    pub theta: f64,
    /// Distance factor of the ray to the positive axis: |sin theta| below
    /// pi/2, then 1; absent on the positive axis itself.
    pub m_theta: Option<f64>,
    pub perturbation_c: f64,
    pub samples: Vec<ResolventSample>,
}

/// Samples `|R(lambda)|` in the dual geometry along the ray
/// `lambda = r e^{i theta}`. Radii hitting a pencil eigenvalue within
/// `1e-12 (1 + |lambda|)` are flagged singular rather than failing the scan.
pub fn resolvent_scan(
    sys: &AssembledSystem,
    theta: f64,
    radii: &[f64],
) -> Result<ResolventScan, SpectralError> {
    use std::f64::consts::PI;
    if !(theta > -PI && theta <= PI) {
        return Err(bad(format!("ray angle {theta} outside (-pi, pi]")));
    }
    if radii.is_empty() {
        return Err(bad("no radii given"));
    }
    for &r in radii {
        if !(r > 0.0 && r.is_finite()) {
            return Err(bad(format!("radius {r} must be positive and finite")));
        }
    }

    let (b, _) = euclidean_pencil(sys)?;
    let eigs: Vec<Complex64> = if b.hermitian_defect() <= HERMITIAN_REL_TOL {
        hermitian_eig(&b.hermitian_part(), false)?
            .0
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect()
    } else {
        let s = schur(&b)?;
        (0..sys.n()).map(|i| s.t[(i, i)]).collect()
    };
    let c = perturbation_norm(sys)?;
    let abs_theta = theta.abs();
    let m_theta = if abs_theta == 0.0 {
        None
    } else if abs_theta < PI / 2.0 {
        Some(abs_theta.sin())
    } else {
        Some(1.0)
    };

    let l = sys.k0.add(&sys.d)?;
    let g = &sys.g_k0;
    let mut samples = Vec::with_capacity(radii.len());
    for &r in radii {
        let lambda = Complex64::from_polar(r, theta);
        let bound = m_theta.and_then(|mt| {
            if c < mt {
                Some(1.0 / ((1.0 - c / mt) * mt * r))
            } else {
                None
            }
        });
        let singular =
            eigs.iter().any(|&e| (e - lambda).norm() <= 1e-12 * (1.0 + lambda.norm()));
        if singular {
            samples.push(ResolventSample {
                radius: r,
                lambda,
                norm: None,
                bound,
                satisfied: None,
                singular: true,
            });
            continue;
        }
        let a_lambda = l.sub(&sys.m.scale(lambda))?;
        let lu = match a_lambda.lu() {
            Ok(f) => f,
            Err(LinalgError::Singular(_)) => {
                samples.push(ResolventSample {
                    radius: r,
                    lambda,
                    norm: None,
                    bound,
                    satisfied: None,
                    singular: true,
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        // sigma_max of G^{-1} M (K0 + D - lambda M)^{-1} G.
        let w = lu.solve_mat(g)?;
        let y = sys.m.matmul(&w)?;
        let z = g.solve_lower_mat(&y)?;
        let norm = spectral_norm(&z)?;
        let satisfied = bound.map(|bd| norm <= bd * (1.0 + 1e-9));
        samples.push(ResolventSample {
            radius: r,
            lambda,
            norm: Some(norm),
            bound,
            satisfied,
            singular: false,
        });
    }
    Ok(ResolventScan { theta, m_theta, perturbation_c: c, samples })
}

#[derive(Clone, Debug)]
pub struct CompletenessRow {
    /// Number of eigenvalue clusters in the span, smallest modulus first.
    pub m: usize,
    /// Dimension of the spanned root subspace.
    pub span_dim: usize,
    /// Relative residual in the dual norm.
    pub h_minus: f64,
    /// Relative residual in L2.
    pub l2: f64,
    /// Relative residual in the form norm.
    pub sl: f64,
}

/// Relative distance of `t` from the span of the first `j` columns, all in
/// Euclidean coordinates; twice-through modified Gram-Schmidt keeps the
/// projector accurate even for moderately conditioned spans.
fn projection_residual(cols: &DenseMatrix, j: usize, t: &[Complex64]) -> f64 {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(j);
    for col in 0..j {
        let mut v = cols.col(col);
        let original = vnorm(&v);
        for _ in 0..2 {
            for q in &basis {
                let p = vdot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let norm = vnorm(&v);
        // A dependent column adds nothing to the span.
        if norm > 1e-13 * original.max(1.0) {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            basis.push(v);
        }
    }
    let mut r = t.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let p = vdot(q, &r);
            for (ri, qi) in r.iter_mut().zip(q) {
                *ri -= p * qi;
            }
        }
    }
    vnorm(&r) / vnorm(t)
}

/// Residuals of the best approximation of `target` from root-vector spans
/// of the `m` smallest-modulus eigenvalue clusters, in the dual, L2 and
/// form norms. Entries of `m_list` beyond the cluster count use the full
/// span.
pub fn completeness_residual(
    sys: &AssembledSystem,
    target: &[Complex64],
    m_list: &[usize],
) -> Result<Vec<CompletenessRow>, SpectralError> {
    let n = sys.n();
    if target.len() != n {
        return Err(bad(format!("target length {} does not match N = {n}", target.len())));
    }
    if vnorm(target) == 0.0 {
        return Err(bad("target must be nonzero"));
    }
    for &m in m_list {
        if m == 0 || m > n {
            return Err(bad(format!("m = {m} outside 1..=N = {n}")));
        }
    }

    let (b, g_m) = euclidean_pencil(sys)?;
    let (q, values) = if b.hermitian_defect() <= HERMITIAN_REL_TOL {
        let (vals, vecs) = hermitian_eig(&b.hermitian_part(), true)?;
        let q0 = vecs.expect("vectors requested");
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| {
            eigenvalue_order(Complex64::new(vals[i], 0.0), Complex64::new(vals[j], 0.0))
        });
        let q = DenseMatrix::from_fn(n, n, |r, col| q0[(r, idx[col])])?;
        let values: Vec<Complex64> =
            idx.iter().map(|&i| Complex64::new(vals[i], 0.0)).collect();
        (q, values)
    } else {
        let mut s = schur(&b)?;
        sort_schur(&mut s, |z| (z.norm(), canonical_arg(z)));
        let values: Vec<Complex64> = (0..n).map(|i| s.t[(i, i)]).collect();
        (s.q, values)
    };

    let ids = consecutive_clusters(&values, 1e-6 * b.frobenius_norm().max(f64::MIN_POSITIVE));
    let n_clusters = ids.last().map_or(0, |&c| c + 1);
    let mut prefix = vec![0usize; n_clusters + 1];
    for &id in &ids {
        prefix[id + 1] += 1;
    }
    for cidx in 0..n_clusters {
        prefix[cidx + 1] += prefix[cidx];
    }

    // Targets and spans in the Euclidean coordinates of each geometry.
    // L2: y = G_M^H x, and the Schur basis is already orthonormal there.
    // SL: y = G^H x. Dual: y = G^{-1} M x on coefficient vectors x.
    let g_k = &sys.g_k0;
    let t_l2 = g_m.adjoint().matvec(target)?;
    let t_sl = g_k.adjoint().matvec(target)?;
    let t_hm = g_k.solve_lower(&sys.m.matvec(target)?)?;

    let x_full = g_m.solve_lower_adjoint_mat(&q)?;
    let sl_full = g_k.adjoint().matmul(&x_full)?;
    let hm_full = g_k.solve_lower_mat(&sys.m.matmul(&x_full)?)?;

    let mut rows = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let j = prefix[m.min(n_clusters)];
        rows.push(CompletenessRow {
            m,
            span_dim: j,
            h_minus: projection_residual(&hm_full, j, &t_hm),
            l2: projection_residual(&q, j, &t_l2),
            sl: projection_residual(&sl_full, j, &t_sl),
        });
    }
    Ok(rows)
}

/// Seeded Gaussian perturbation with an exactly prescribed discrete size:
/// `D = G E G^H` where `E` is a normalized Gaussian matrix, so that
/// `perturbation_norm` returns `target_c` up to roundoff.
pub fn random_energy_perturbation(
    sys: &AssembledSystem,
    seed: u64,
    target_c: f64,
) -> Result<DenseMatrix, SpectralError> {
    if !(target_c >= 0.0 && target_c.is_finite()) {
        return Err(bad(format!("target perturbation size {target_c} must be nonnegative")));
    }
    let n = sys.n();
    let mut rng = Counter64::new(seed);
    let mut x = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = rng.gaussian_c64();
        }
    }
    let sigma = spectral_norm(&x)?;
    if sigma == 0.0 {
        return Err(bad("degenerate Gaussian draw"));
    }
    let e = x.scale(Complex64::new(target_c / sigma, 0.0));
    let ge = sys.g_k0.matmul(&e)?;
    Ok(ge.matmul(&sys.g_k0.adjoint())?)
}
