use num_complex::Complex64;

use super::{vdot, DenseMatrix, LinalgError, HERMITIAN_REL_TOL, QR_SWEEPS_PER_EIGENVALUE};

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and,
/// on request, a unitary matrix of eigenvector columns.
///
/// Strategy: unitary reduction to Hermitian tridiagonal form by Householder
/// reflectors, a diagonal phase scaling that makes the subdiagonal real, then
/// the classical implicit QL iteration with Wilkinson-style shifts on the
/// real tridiagonal data. Rotations are accumulated into the complex vector
/// matrix only when vectors are requested; the values-only path is what the
/// large s-number computations use.
pub fn hermitian_eig(
    a: &DenseMatrix,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<DenseMatrix>), LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::Dim("hermitian_eig"));
    }
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_REL_TOL {
        return Err(LinalgError::NotHermitian { defect });
    }
    let n = a.n_rows();
    if n == 0 {
        return Ok((vec![], if want_vectors { Some(DenseMatrix::zeros(0, 0)) } else { None }));
    }
    let mut w = a.hermitian_part();
    let mut q = if want_vectors { Some(DenseMatrix::identity(n)) } else { None };

    // Householder tridiagonalization. After step k, column k holds its final
    // tridiagonal entries and the trailing block stays Hermitian.
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut xnorm_sq = 0.0;
        for i in 0..m {
            xnorm_sq += w[(k + 1 + i, k)].norm_sqr();
        }
        let mut tail_sq = 0.0;
        for i in 1..m {
            tail_sq += w[(k + 1 + i, k)].norm_sqr();
        }
        if tail_sq == 0.0 {
            // Column already tridiagonal, nothing to reflect.
            continue;
        }
        let xnorm = xnorm_sq.sqrt();
        let alpha = w[(k + 1, k)];
        let phase = if alpha.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { alpha / alpha.norm() };
        let nu = -phase * xnorm;
        u[0] = alpha - nu;
        for i in 1..m {
            u[i] = w[(k + 1 + i, k)];
        }
        let unorm = u[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in u[..m].iter_mut() {
            *z /= unorm;
        }
        // v = W22 u, then the rank-2 symmetric update W22 -= u wv^H + wv u^H
        // with wv = 2 (v - (u^H v) u); u^H W22 u is real by symmetry.
        for i in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                acc += w[(k + 1 + i, k + 1 + j)] * u[j];
            }
            v[i] = acc;
        }
        let kk = vdot(&u[..m], &v[..m]).re;
        for i in 0..m {
            v[i] = (v[i] - kk * u[i]) * 2.0;
        }
        for i in 0..m {
            for j in 0..=i {
                let upd = u[i] * v[j].conj() + v[i] * u[j].conj();
                let val = w[(k + 1 + i, k + 1 + j)] - upd;
                w[(k + 1 + i, k + 1 + j)] = val;
                if i != j {
                    w[(k + 1 + j, k + 1 + i)] = val.conj();
                }
            }
        }
        w[(k + 1, k)] = nu;
        w[(k, k + 1)] = nu.conj();
        for i in 2..=m {
            w[(k + i, k)] = Complex64::new(0.0, 0.0);
            w[(k, k + i)] = Complex64::new(0.0, 0.0);
        }
        if let Some(q) = q.as_mut() {
            // Q <- Q (I - 2 u u^H) on columns k+1..n.
            for r in 0..n {
                let mut t = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    t += q[(r, k + 1 + j)] * u[j];
                }
                t *= 2.0;
                for j in 0..m {
                    let sub = t * u[j].conj();
                    q[(r, k + 1 + j)] -= sub;
                }
            }
        }
    }

    // Phase-scale the subdiagonal to be real and nonnegative.
    let mut d: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phi = Complex64::new(1.0, 0.0);
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n - 1 {
        let sub = w[(i + 1, i)];
        let m = sub.norm();
        e[i] = m;
        phi = if m == 0.0 { phi } else { phi * (sub / m) };
        phases[i + 1] = phi;
    }
    if let Some(q) = q.as_mut() {
        for (i, ph) in phases.iter().enumerate() {
            for r in 0..n {
                let scaled = q[(r, i)] * ph;
                q[(r, i)] = scaled;
            }
        }
    }

    tridiagonal_ql(&mut d, &mut e, q.as_mut())?;

    // Ascending selection sort, carrying vector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = q.map(|q| {
        let mut out = DenseMatrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            out.set_col(new, &q.col(old));
        }
        out
    });
    Ok((values, vectors))
}

/// Implicit QL with shifts on a real symmetric tridiagonal matrix, rotations
/// accumulated into the optional complex column matrix. Classical EISPACK
/// tql2 recurrence.
fn tridiagonal_ql(
    d: &mut [f64],
    e: &mut [f64],
    mut q: Option<&mut DenseMatrix>,
) -> Result<(), LinalgError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    // e[i] is the subdiagonal between i and i+1; the last slot is padding.
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let mut total_iter = 0usize;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                total_iter += 1;
                if iter > QR_SWEEPS_PER_EIGENVALUE {
                    return Err(LinalgError::NoConvergence {
                        stage: "tridiagonal_ql",
                        sweeps: total_iter,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let gg = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * gg;
                    d[i + 1] = h + s * (c * gg + s * d[i]);
                    if let Some(q) = q.as_deref_mut() {
                        let rows = q.n_rows();
                        for k in 0..rows {
                            let hk = q[(k, i + 1)];
                            let qki = q[(k, i)];
                            q[(k, i + 1)] = qki * s + hk * c;
                            q[(k, i)] = qki * c - hk * s;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
