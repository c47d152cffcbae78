//! Galerkin discretization on uniform meshes: piecewise linear or quadratic
//! elements on an interval, bilinear tensor elements on a rectangle.
//!
//! [`discretize`] turns a [`ProblemSpec`] into the dense matrix triple
//!
//! * `m`  — mass matrix, `(phi_q, phi_p)` in L2,
//! * `k0` — Gram matrix of the unperturbed form (principal part, `a00`,
//!   boundary `b00/b1`),
//! * `d`  — the perturbation (convection `a_vec`, `delta_a0`, tangential
//!   `t_field` and `delta_b0` boundary terms),
//!
//! all indexed by test function in the row and trial function in the
//! column. Dirichlet faces are imposed by deleting every node on the
//! closure of those faces, so the matrices act on the retained degrees of
//! freedom only. Element integrals use tensor Gauss-Legendre rules with
//! `2 * degree + 2` points per axis; nodes are found by Newton iteration on
//! the Legendre recurrence rather than tables. Boundary terms reduce to
//! endpoint evaluations in one dimension and to one-dimensional Gauss rules
//! over faces in two.
//!
//! `m` and `k0` must come out Hermitian up to roundoff; the assembly checks
//! the defect against 1e-12 and then symmetrizes exactly, so the spectral
//! layer can rely on Hermitian structure. `k0` must also admit a Cholesky
//! factorization, which is computed here once and carried in the assembled
//! system, since every downstream norm computation uses it.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{cholesky, DenseMatrix, LinalgError};
use crate::problem::{validate, Domain, Face, Point, ProblemError, ProblemSpec};

/// Largest retained system size the dense solvers accept.
pub const MAX_DOFS: usize = 4096;

#[derive(Debug, Error)]
pub enum DiscretizeError {
    #[error("quadrature order {0} unsupported; the generator covers 1..=16 points")]
    QuadratureOrder(usize),
    #[error("resolution must be at least 1")]
    BadResolution,
    #[error("degree {degree} unsupported in {dim}d; intervals take 1 or 2, rectangles take 1")]
    UnsupportedDegree { degree: usize, dim: usize },
    #[error("all degrees of freedom were removed by the Dirichlet faces")]
    EmptySystem,
    #[error("retained system size {0} exceeds the dense cap {MAX_DOFS}")]
    TooLarge(usize),
    #[error("coefficients fail the strong ellipticity check; refusing to assemble")]
    NotStronglyElliptic,
    #[error("assembled {which} has relative Hermitian defect {defect:.3e} beyond 1e-12; coefficients violate the standing hypotheses")]
    AsymmetricGram { which: &'static str, defect: f64 },
    #[error("|b1| = {value:.3e} below the 1e-12 floor on retained face {face:?}")]
    BoundaryFloor { face: Face, value: f64 },
    #[error("unperturbed Gram matrix is not positive definite: {0}")]
    GramNotPositive(LinalgError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Generates the `n`-point Gauss-Legendre rule by Newton iteration on the
/// three-term Legendre recurrence. Exact for polynomials of degree
/// `2n - 1`; nodes come out ascending and symmetric about zero.
pub fn gauss_legendre(n: usize) -> Result<Quadrature, DiscretizeError> {
    if n == 0 || n > 16 {
        return Err(DiscretizeError::QuadratureOrder(n));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Standard initial guess for the i-th largest root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x); roots are interior so the
            // denominator stays away from zero.
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        if 2 * i + 1 == n {
            // Middle root of an odd rule is exactly zero.
            x = 0.0;
        }
        // Evaluate the derivative at the settled node: the loop above leaves
        // `dp` one Newton step behind `x`, which costs ~1e-14 in the weights.
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    nodes.reverse();
    weights.reverse();
    Ok(Quadrature { nodes, weights })
}

/// Retained nodal basis of one discretization.
#[derive(Clone, Debug)]
pub struct Basis {
    pub domain: Domain,
    pub degree: usize,
    pub resolution: usize,
    /// Coordinates of the retained nodes, in global numbering order.
    pub nodes: Vec<Point>,
    kept_of_full: Vec<Option<usize>>,
}

impl Basis {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    fn kept(&self, full: usize) -> Option<usize> {
        self.kept_of_full[full]
    }
}

/// Nodal interpolant: the coefficient vector of `f` in the retained basis.
pub fn interpolate<F: Fn(Point) -> Complex64>(basis: &Basis, f: F) -> Vec<Complex64> {
    basis.nodes.iter().map(|&p| f(p)).collect()
}

/// One discretized problem: the matrix triple plus the Cholesky factor of
/// `k0` (lower triangular `g_k0` with `k0 = g_k0 g_k0^H`).
pub struct AssembledSystem {
    pub spec: ProblemSpec,
    pub basis: Basis,
    pub m: DenseMatrix,
    pub k0: DenseMatrix,
    pub d: DenseMatrix,
    pub g_k0: DenseMatrix,
}

impl AssembledSystem {
    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn dim(&self) -> usize {
        self.spec.domain.dim()
    }
}

/// 1d reference shapes on [0, 1] and their t-derivatives.
fn shapes_1d(degree: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    match degree {
        1 => (vec![1.0 - t, t], vec![-1.0, 1.0]),
        2 => (
            vec![(1.0 - t) * (1.0 - 2.0 * t), 4.0 * t * (1.0 - t), t * (2.0 * t - 1.0)],
            vec![4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0],
        ),
        _ => unreachable!("degree checked by discretize"),
    }
}

/// Q1 reference shapes on [-1, 1]^2 with corner order
/// (-,-), (+,-), (-,+), (+,+); returns values and reference gradients.
fn shapes_q1(xi: f64, eta: f64) -> ([f64; 4], [[f64; 2]; 4]) {
    const SIGNS: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0], [1.0, 1.0]];
    let mut vals = [0.0; 4];
    let mut grads = [[0.0; 2]; 4];
    for (c, s) in SIGNS.iter().enumerate() {
        vals[c] = (1.0 + s[0] * xi) * (1.0 + s[1] * eta) / 4.0;
        grads[c][0] = s[0] * (1.0 + s[1] * eta) / 4.0;
        grads[c][1] = s[1] * (1.0 + s[0] * xi) / 4.0;
    }
    (vals, grads)
}

fn build_basis(spec: &ProblemSpec, resolution: usize, degree: usize) -> Result<Basis, DiscretizeError> {
    let domain = spec.domain;
    let r = resolution;
    let (full_nodes, on_dirichlet): (Vec<Point>, Vec<bool>) = match domain {
        Domain::Interval { a, b } => {
            let count = degree * r + 1;
            let h = (b - a) / r as f64;
            let nodes: Vec<Point> =
                (0..count).map(|k| [a + k as f64 * h / degree as f64, 0.0]).collect();
            let dir: Vec<bool> = (0..count)
                .map(|k| {
                    (k == 0 && spec.dirichlet.contains(&Face::Left))
                        || (k == count - 1 && spec.dirichlet.contains(&Face::Right))
                })
                .collect();
            (nodes, dir)
        }
        Domain::Rectangle { x0, x1, y0, y1 } => {
            let hx = (x1 - x0) / r as f64;
            let hy = (y1 - y0) / r as f64;
            let mut nodes = Vec::with_capacity((r + 1) * (r + 1));
            let mut dir = Vec::with_capacity((r + 1) * (r + 1));
            for j in 0..=r {
                for i in 0..=r {
                    nodes.push([x0 + i as f64 * hx, y0 + j as f64 * hy]);
                    dir.push(
                        (i == 0 && spec.dirichlet.contains(&Face::Left))
                            || (i == r && spec.dirichlet.contains(&Face::Right))
                            || (j == 0 && spec.dirichlet.contains(&Face::Bottom))
                            || (j == r && spec.dirichlet.contains(&Face::Top)),
                    );
                }
            }
            (nodes, dir)
        }
    };
    let mut kept_of_full = vec![None; full_nodes.len()];
    let mut nodes = Vec::new();
    for (k, &drop) in on_dirichlet.iter().enumerate() {
        if !drop {
            kept_of_full[k] = Some(nodes.len());
            nodes.push(full_nodes[k]);
        }
    }
    if nodes.is_empty() {
        return Err(DiscretizeError::EmptySystem);
    }
    if nodes.len() > MAX_DOFS {
        return Err(DiscretizeError::TooLarge(nodes.len()));
    }
    Ok(Basis { domain, degree, resolution: r, nodes, kept_of_full })
}

pub fn discretize(
    spec: &ProblemSpec,
    resolution: usize,
    degree: usize,
) -> Result<AssembledSystem, DiscretizeError> {
    if resolution == 0 {
        return Err(DiscretizeError::BadResolution);
    }
    let dim = spec.domain.dim();
    let degree_ok = matches!((dim, degree), (1, 1) | (1, 2) | (2, 1));
    if !degree_ok {
        return Err(DiscretizeError::UnsupportedDegree { degree, dim });
    }
    if !validate(spec, 8)?.strongly_elliptic {
        return Err(DiscretizeError::NotStronglyElliptic);
    }

    let basis = build_basis(spec, resolution, degree)?;
    let n = basis.n();
    let mut m = DenseMatrix::zeros(n, n);
    let mut k0 = DenseMatrix::zeros(n, n);
    let mut d = DenseMatrix::zeros(n, n);
    let quad = gauss_legendre(2 * degree + 2)?;

    match spec.domain {
        Domain::Interval { a, b } => {
            let r = basis.resolution;
            let h = (b - a) / r as f64;
            let local = degree + 1;
            // Shape values and t-derivatives at the quadrature points.
            let tables: Vec<(f64, Vec<f64>, Vec<f64>)> = quad
                .nodes
                .iter()
                .zip(&quad.weights)
                .map(|(&xi, &w)| {
                    let t = 0.5 * (xi + 1.0);
                    let (vals, derivs) = shapes_1d(degree, t);
                    (w * 0.5 * h, vals, derivs)
                })
                .collect();
            let t_of: Vec<f64> = quad.nodes.iter().map(|&xi| 0.5 * (xi + 1.0)).collect();
            for e in 0..r {
                let x_left = a + e as f64 * h;
                for (q_idx, (w, vals, derivs)) in tables.iter().enumerate() {
                    let x = x_left + t_of[q_idx] * h;
                    let pt: Point = [x, 0.0];
                    let amat = (spec.a_matrix)(pt);
                    let a00 = (spec.a00)(pt);
                    let avec = (spec.a_vec)(pt);
                    let da0 = (spec.delta_a0)(pt);
                    for p in 0..local {
                        let Some(gp) = basis.kept(e * degree + p) else { continue };
                        let (phi_p, dphi_p) = (vals[p], derivs[p] / h);
                        for q in 0..local {
                            let Some(gq) = basis.kept(e * degree + q) else { continue };
                            let (phi_q, dphi_q) = (vals[q], derivs[q] / h);
                            m[(gp, gq)] += Complex64::new(w * phi_p * phi_q, 0.0);
                            k0[(gp, gq)] +=
                                (amat[0] * dphi_q * dphi_p + a00 * phi_q * phi_p) * *w;
                            d[(gp, gq)] += (avec[0] * dphi_q + da0 * phi_q) * phi_p * *w;
                        }
                    }
                }
            }
            // Endpoint boundary terms; the basis is nodal, so only the
            // endpoint shape survives and each term is a diagonal update.
            for (face, full_idx) in [(Face::Left, 0usize), (Face::Right, degree * r)] {
                if spec.dirichlet.contains(&face) {
                    continue;
                }
                let pt: Point = if face == Face::Left { [a, 0.0] } else { [b, 0.0] };
                let b1 = (spec.b1)(pt, face);
                if b1.norm() < 1e-12 {
                    return Err(DiscretizeError::BoundaryFloor { face, value: b1.norm() });
                }
                if let Some(g) = basis.kept(full_idx) {
                    k0[(g, g)] += Complex64::new((spec.b00)(pt, face), 0.0) / b1;
                    d[(g, g)] += (spec.delta_b0)(pt, face) / b1;
                }
            }
        }
        Domain::Rectangle { x0, x1, y0, y1 } => {
            let r = basis.resolution;
            let hx = (x1 - x0) / r as f64;
            let hy = (y1 - y0) / r as f64;
            let stride = r + 1;
            let corner_offsets = [(0usize, 0usize), (1, 0), (0, 1), (1, 1)];
            for ey in 0..r {
                for ex in 0..r {
                    let cx = x0 + ex as f64 * hx;
                    let cy = y0 + ey as f64 * hy;
                    let full: Vec<usize> = corner_offsets
                        .iter()
                        .map(|&(i, j)| (ey + j) * stride + (ex + i))
                        .collect();
                    for (&xi, &wx) in quad.nodes.iter().zip(&quad.weights) {
                        for (&eta, &wy) in quad.nodes.iter().zip(&quad.weights) {
                            let w = wx * wy * hx * hy / 4.0;
                            let pt: Point =
                                [cx + (xi + 1.0) * hx / 2.0, cy + (eta + 1.0) * hy / 2.0];
                            let (vals, ref_grads) = shapes_q1(xi, eta);
                            let grads: Vec<[f64; 2]> = ref_grads
                                .iter()
                                .map(|g| [g[0] * 2.0 / hx, g[1] * 2.0 / hy])
                                .collect();
                            let amat = (spec.a_matrix)(pt);
                            let a00 = (spec.a00)(pt);
                            let avec = (spec.a_vec)(pt);
                            let da0 = (spec.delta_a0)(pt);
                            for p in 0..4 {
                                let Some(gp) = basis.kept(full[p]) else { continue };
                                for q in 0..4 {
                                    let Some(gq) = basis.kept(full[q]) else { continue };
                                    m[(gp, gq)] += Complex64::new(w * vals[p] * vals[q], 0.0);
                                    let mut principal = Complex64::new(0.0, 0.0);
                                    for i in 0..2 {
                                        for j in 0..2 {
                                            principal +=
                                                amat[i * 2 + j] * grads[q][j] * grads[p][i];
                                        }
                                    }
                                    k0[(gp, gq)] +=
                                        (principal + a00 * vals[q] * vals[p]) * w;
                                    let conv = avec[0] * grads[q][0] + avec[1] * grads[q][1];
                                    d[(gp, gq)] += (conv + da0 * vals[q]) * vals[p] * w;
                                }
                            }
                        }
                    }
                }
            }
            // Face integrals with a 1d Gauss rule per boundary edge.
            for face in spec.domain.faces() {
                if spec.dirichlet.contains(&face) {
                    continue;
                }
                let tangent = spec.domain.tangent(face);
                for k in 0..r {
                    // Element owning this boundary edge and the edge geometry.
                    let (ex, ey, edge_len) = match face {
                        Face::Left => (0, k, hy),
                        Face::Right => (r - 1, k, hy),
                        Face::Bottom => (k, 0, hx),
                        Face::Top => (k, r - 1, hx),
                    };
                    let cx = x0 + ex as f64 * hx;
                    let cy = y0 + ey as f64 * hy;
                    let full: Vec<usize> = corner_offsets
                        .iter()
                        .map(|&(i, j)| (ey + j) * stride + (ex + i))
                        .collect();
                    for (&s, &ws) in quad.nodes.iter().zip(&quad.weights) {
                        let (xi, eta) = match face {
                            Face::Left => (-1.0, s),
                            Face::Right => (1.0, s),
                            Face::Bottom => (s, -1.0),
                            Face::Top => (s, 1.0),
                        };
                        let w = ws * edge_len / 2.0;
                        let pt: Point =
                            [cx + (xi + 1.0) * hx / 2.0, cy + (eta + 1.0) * hy / 2.0];
                        let (vals, ref_grads) = shapes_q1(xi, eta);
                        let grads: Vec<[f64; 2]> = ref_grads
                            .iter()
                            .map(|g| [g[0] * 2.0 / hx, g[1] * 2.0 / hy])
                            .collect();
                        let b1 = (spec.b1)(pt, face);
                        if b1.norm() < 1e-12 {
                            return Err(DiscretizeError::BoundaryFloor {
                                face,
                                value: b1.norm(),
                            });
                        }
                        let ratio = Complex64::new((spec.b00)(pt, face), 0.0) / b1;
                        let t_coeff = (spec.t_field)(pt, face);
                        let db0 = (spec.delta_b0)(pt, face);
                        for p in 0..4 {
                            let Some(gp) = basis.kept(full[p]) else { continue };
                            for q in 0..4 {
                                let Some(gq) = basis.kept(full[q]) else { continue };
                                k0[(gp, gq)] += ratio * vals[q] * vals[p] * w;
                                let tangential =
                                    t_coeff * (tangent[0] * grads[q][0] + tangent[1] * grads[q][1]);
                                d[(gp, gq)] +=
                                    (tangential + db0 * vals[q]) / b1 * vals[p] * w;
                            }
                        }
                    }
                }
            }
        }
    }

    // Roundoff symmetrization, rejected when the defect is structural.
    let m_defect = m.hermitian_defect();
    if m_defect > 1e-12 {
        return Err(DiscretizeError::AsymmetricGram { which: "mass matrix", defect: m_defect });
    }
    let k_defect = k0.hermitian_defect();
    if k_defect > 1e-12 {
        return Err(DiscretizeError::AsymmetricGram { which: "Gram matrix", defect: k_defect });
    }
    let m = m.hermitian_part();
    let k0 = k0.hermitian_part();
    let g_k0 = cholesky(&k0).map_err(DiscretizeError::GramNotPositive)?;

    Ok(AssembledSystem { spec: spec.clone(), basis, m, k0, d, g_k0 })
}
