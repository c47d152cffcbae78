use num_complex::Complex64;

use super::{
    cholesky, eigenvalue_order, hermitian_eig, vnorm, DenseMatrix, LinalgError, HERMITIAN_REL_TOL,
    QR_DEFLATION_REL, QR_SWEEPS_PER_EIGENVALUE,
};

/// Unitary Schur decomposition `A = Q T Q^H` with `T` upper triangular.
pub struct Schur {
    pub t: DenseMatrix,
    pub q: DenseMatrix,
}

/// Eigenvalues, unit eigenvector columns, and per-pair residuals
/// `|A v - lambda v|_2`, sorted by ascending modulus then ascending argument.
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub vectors: DenseMatrix,
    pub residuals: Vec<f64>,
}

/// Complex Givens rotation: returns `(c, s)` with `c` real so that
/// `[[c, s], [-conj(s), c]] * (a, b)^T = (r, 0)^T`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let an = a.norm();
    let denom = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        (0.0, b.conj() / bn)
    } else {
        (an / denom, (a / an) * b.conj() / denom)
    }
}

/// Householder reduction to upper Hessenberg form: `A = Q H Q^H`.
fn hessenberg(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let n = a.n_rows();
    let mut h = a.clone();
    let mut q = DenseMatrix::identity(n);
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut tail_sq = 0.0;
        for i in 1..m {
            tail_sq += h[(k + 1 + i, k)].norm_sqr();
        }
        if tail_sq == 0.0 {
            continue;
        }
        let alpha = h[(k + 1, k)];
        let xnorm = (alpha.norm_sqr() + tail_sq).sqrt();
        let phase = if alpha.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { alpha / alpha.norm() };
        let nu = -phase * xnorm;
        u[0] = alpha - nu;
        for i in 1..m {
            u[i] = h[(k + 1 + i, k)];
        }
        let unorm = u[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in u[..m].iter_mut() {
            *z /= unorm;
        }
        // Left: rows k+1..n of all columns, H <- (I - 2uu^H) H.
        for c in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..m {
                t += u[i].conj() * h[(k + 1 + i, c)];
            }
            t *= 2.0;
            for i in 0..m {
                let sub = t * u[i];
                h[(k + 1 + i, c)] -= sub;
            }
        }
        // Right: columns k+1..n of all rows, H <- H (I - 2uu^H).
        for r in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..m {
                t += h[(r, k + 1 + i)] * u[i];
            }
            t *= 2.0;
            for i in 0..m {
                let sub = t * u[i].conj();
                h[(r, k + 1 + i)] -= sub;
            }
        }
        for r in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..m {
                t += q[(r, k + 1 + i)] * u[i];
            }
            t *= 2.0;
            for i in 0..m {
                let sub = t * u[i].conj();
                q[(r, k + 1 + i)] -= sub;
            }
        }
        // Clean the annihilated part of the column.
        h[(k + 1, k)] = nu;
        for i in 2..=m {
            h[(k + i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(h: &DenseMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Schur decomposition by explicit shifted QR on the Hessenberg form.
///
/// Subdiagonal entries deflate when they fall below
/// `QR_DEFLATION_REL * (|h[k][k]| + |h[k+1][k+1]|)`; iteration is capped at
/// `QR_SWEEPS_PER_EIGENVALUE * n` total sweeps.
pub fn schur(a: &DenseMatrix) -> Result<Schur, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::Dim("schur"));
    }
    let n = a.n_rows();
    if n == 0 {
        return Ok(Schur { t: DenseMatrix::zeros(0, 0), q: DenseMatrix::zeros(0, 0) });
    }
    let fro = a.frobenius_norm();
    let (mut h, mut q) = hessenberg(a);
    let deflate_floor = QR_DEFLATION_REL * fro;

    let deflate = |h: &mut DenseMatrix, k: usize| -> bool {
        let s = h[(k, k)].norm() + h[(k + 1, k + 1)].norm();
        let thresh = if s == 0.0 { deflate_floor } else { QR_DEFLATION_REL * s };
        if h[(k + 1, k)].norm() <= thresh {
            h[(k + 1, k)] = Complex64::new(0.0, 0.0);
            true
        } else {
            false
        }
    };

    let cap = QR_SWEEPS_PER_EIGENVALUE * n.max(1);
    let mut sweeps = 0usize;
    let mut hi = n - 1;
    let mut stall = 0usize;
    'outer: loop {
        // Shrink from the bottom while trailing eigenvalues are converged.
        loop {
            if hi == 0 {
                break 'outer;
            }
            if deflate(&mut h, hi - 1) {
                hi -= 1;
                stall = 0;
            } else {
                break;
            }
        }
        // Active block lo..=hi: walk up to the first zero subdiagonal.
        let mut lo = hi;
        while lo > 0 && !deflate(&mut h, lo - 1) {
            lo -= 1;
        }

        sweeps += 1;
        stall += 1;
        if sweeps > cap {
            return Err(LinalgError::NoConvergence { stage: "schur_qr", sweeps });
        }
        let sigma = if stall > 0 && stall.is_multiple_of(10) {
            // Exceptional shift to break symmetric stalls.
            let extra = h[(hi, hi - 1)].norm()
                + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(extra, 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };

        // Explicit QR step on the window: factor H - sigma I by Givens
        // rotations, then multiply the factors in reverse order.
        for i in lo..=hi {
            let shifted = h[(i, i)] - sigma;
            h[(i, i)] = shifted;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for col in k..n {
                let x = h[(k, col)];
                let y = h[(k + 1, col)];
                h[(k, col)] = Complex64::new(c, 0.0) * x + s * y;
                h[(k + 1, col)] = -s.conj() * x + Complex64::new(c, 0.0) * y;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            for row in 0..=(k + 1).min(hi) {
                let x = h[(row, k)];
                let y = h[(row, k + 1)];
                h[(row, k)] = x * Complex64::new(c, 0.0) + y * s.conj();
                h[(row, k + 1)] = -(x * s) + y * Complex64::new(c, 0.0);
            }
            for row in 0..n {
                let x = q[(row, k)];
                let y = q[(row, k + 1)];
                q[(row, k)] = x * Complex64::new(c, 0.0) + y * s.conj();
                q[(row, k + 1)] = -(x * s) + y * Complex64::new(c, 0.0);
            }
        }
        for i in lo..=hi {
            let unshifted = h[(i, i)] + sigma;
            h[(i, i)] = unshifted;
        }
    }
    // Zero out negligible subdiagonal leftovers so T is exactly triangular.
    for r in 0..n {
        for c in 0..r {
            h[(r, c)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(Schur { t: h, q })
}

/// Swaps the adjacent diagonal entries `k`, `k+1` of an upper triangular `T`
/// by a unitary similarity, updating `Q` so `Q T Q^H` is unchanged.
fn swap_adjacent(t: &mut DenseMatrix, q: &mut DenseMatrix, k: usize) {
    let a = t[(k, k)];
    let b = t[(k, k + 1)];
    let d = t[(k + 1, k + 1)];
    // (b, d - a) spans the eigenvector of the 2x2 block for eigenvalue d;
    // rotating it onto e1 moves d to the leading diagonal slot. When a == d
    // the rotation degenerates to the identity, which is correct: equal
    // diagonal entries never need an exchange.
    let (c, s) = givens(b, d - a);
    rotate(t, q, k, c, s);
    t[(k + 1, k)] = Complex64::new(0.0, 0.0);
}

/// Applies the similarity defined by the rotation `(c, s)` on rows/columns
/// `(k, k+1)` of `T`, accumulating into `Q`.
fn rotate(t: &mut DenseMatrix, q: &mut DenseMatrix, k: usize, c: f64, s: Complex64) {
    let n = t.n_rows();
    let cc = Complex64::new(c, 0.0);
    for col in 0..n {
        let x = t[(k, col)];
        let y = t[(k + 1, col)];
        t[(k, col)] = cc * x + s * y;
        t[(k + 1, col)] = -s.conj() * x + cc * y;
    }
    for row in 0..n {
        let x = t[(row, k)];
        let y = t[(row, k + 1)];
        t[(row, k)] = x * cc + y * s.conj();
        t[(row, k + 1)] = -(x * s) + y * cc;
    }
    for row in 0..q.n_rows() {
        let x = q[(row, k)];
        let y = q[(row, k + 1)];
        q[(row, k)] = x * cc + y * s.conj();
        q[(row, k + 1)] = -(x * s) + y * cc;
    }
}

/// Reorders a Schur decomposition so the diagonal of `T` follows `key`
/// ascending (stable on ties). Adjacent-swap bubble pass; O(n^2) swaps.
pub fn sort_schur(schur: &mut Schur, key: impl Fn(Complex64) -> (f64, f64)) {
    let n = schur.t.n_rows();
    if n < 2 {
        return;
    }
    loop {
        let mut swapped = false;
        for k in 0..n - 1 {
            let ka = key(schur.t[(k, k)]);
            let kb = key(schur.t[(k + 1, k + 1)]);
            if kb < ka {
                swap_adjacent(&mut schur.t, &mut schur.q, k);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Unit eigenvector of the triangular factor for the eigenvalue at diagonal
/// position `i`, by back-substitution with guarded small denominators.
fn triangular_eigenvector(t: &DenseMatrix, i: usize) -> Vec<Complex64> {
    let n = t.n_rows();
    let lambda = t[(i, i)];
    let floor = f64::EPSILON * t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[i] = Complex64::new(1.0, 0.0);
    for j in (0..i).rev() {
        let mut num = Complex64::new(0.0, 0.0);
        for k in j + 1..=i {
            num += t[(j, k)] * y[k];
        }
        let mut den = t[(j, j)] - lambda;
        if den.norm() < floor {
            den = Complex64::new(floor, 0.0);
        }
        y[j] = -num / den;
        // Rescale on the fly if the vector is blowing up (strongly
        // non-normal blocks); direction is all that matters.
        let m = y[j].norm();
        if m > 1e250 {
            for z in y.iter_mut() {
                *z /= m;
            }
        }
    }
    let norm = vnorm(&y);
    for z in y.iter_mut() {
        *z /= norm;
    }
    y
}

/// Dense complex eigendecomposition.
///
/// Returns all `n` eigenvalues with unit eigenvectors and the measured
/// residuals `|A v - lambda v|_2`, each required to be at most
/// `tol * |A|_F`. Deterministic; no balancing beyond the norm scaling done
/// by the shifts.
pub fn eig(a: &DenseMatrix, tol: f64) -> Result<Spectrum, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::Dim("eig"));
    }
    if a.n_rows() > 4096 {
        return Err(LinalgError::InvalidArgument(format!(
            "eig size {} exceeds the supported 4096",
            a.n_rows()
        )));
    }
    if !(tol >= 1e-14) {
        return Err(LinalgError::InvalidArgument(format!(
            "eig tolerance {tol:e} must be at least 1e-14"
        )));
    }
    let n = a.n_rows();
    let dec = schur(a)?;
    let mut values: Vec<Complex64> = (0..n).map(|i| dec.t[(i, i)]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let y = triangular_eigenvector(&dec.t, i);
        let v = dec.q.matvec(&y)?;
        let norm = vnorm(&v);
        let unit: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        vectors.set_col(i, &unit);
    }
    // Canonical ordering: ascending modulus, ties by ascending argument.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalue_order(values[i], values[j]));
    let mut sorted_vectors = DenseMatrix::zeros(n, n);
    let mut sorted_values = Vec::with_capacity(n);
    for (new, &old) in order.iter().enumerate() {
        sorted_values.push(values[old]);
        sorted_vectors.set_col(new, &vectors.col(old));
    }
    values = sorted_values;
    vectors = sorted_vectors;

    let fro = a.frobenius_norm();
    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        let v = vectors.col(i);
        let av = a.matvec(&v)?;
        let mut r = 0.0;
        for (p, q) in av.iter().zip(&v) {
            r += (p - q * values[i]).norm_sqr();
        }
        let r = r.sqrt();
        if r > tol * fro.max(f64::MIN_POSITIVE) {
            return Err(LinalgError::NoConvergence { stage: "eig_residual", sweeps: 0 });
        }
        residuals.push(r);
    }
    Ok(Spectrum { values, vectors, residuals })
}

/// Generalized eigenproblem `L x = lambda M x` with `M` Hermitian positive
/// definite, reduced by Cholesky congruence: with `M = G G^H` and
/// `B = G^{-1} L G^{-H}`, eigenpairs map back through `x = G^{-H} y`.
///
/// When `B` is Hermitian (up to `HERMITIAN_REL_TOL`) the Hermitian solver is
/// used, so Hermitian-definite pencils come back with exactly real
/// eigenvalues. Residuals are `|L x - lambda M x|_2 / |M x|_2 <= tol`.
pub fn pencil_eig(l: &DenseMatrix, m: &DenseMatrix, tol: f64) -> Result<Spectrum, LinalgError> {
    if !l.is_square() || !m.is_square() || l.n_rows() != m.n_rows() {
        return Err(LinalgError::Dim("pencil_eig"));
    }
    let g = cholesky(m)?;
    let x = g.solve_lower_mat(l)?;
    let b = g.solve_lower_mat(&x.adjoint())?.adjoint();
    let n = l.n_rows();

    let (values, ys): (Vec<Complex64>, DenseMatrix) = if b.hermitian_defect() <= HERMITIAN_REL_TOL {
        let (vals, vecs) = hermitian_eig(&b, true)?;
        (vals.into_iter().map(|v| Complex64::new(v, 0.0)).collect(), vecs.unwrap())
    } else {
        let spec = eig(&b, tol)?;
        (spec.values, spec.vectors)
    };

    let mut vectors = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let xi = g.solve_lower_adjoint(&ys.col(i))?;
        let norm = vnorm(&xi);
        let unit: Vec<Complex64> = xi.iter().map(|z| z / norm).collect();
        vectors.set_col(i, &unit);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalue_order(values[i], values[j]));
    let mut sorted_values = Vec::with_capacity(n);
    let mut sorted_vectors = DenseMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        sorted_values.push(values[old]);
        sorted_vectors.set_col(new, &vectors.col(old));
    }

    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        let v = sorted_vectors.col(i);
        let lv = l.matvec(&v)?;
        let mv = m.matvec(&v)?;
        let mut num = 0.0;
        for (p, q) in lv.iter().zip(&mv) {
            num += (p - q * sorted_values[i]).norm_sqr();
        }
        let num = num.sqrt();
        let den = vnorm(&mv);
        let r = num / den;
        if r > tol {
            return Err(LinalgError::NoConvergence { stage: "pencil_residual", sweeps: 0 });
        }
        residuals.push(r);
    }
    Ok(Spectrum { values: sorted_values, vectors: sorted_vectors, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vdot;
    use crate::rng::Counter64;

    fn random_matrix(n: usize, seed: u64) -> DenseMatrix {
        let mut g = Counter64::new(seed);
        DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64()).unwrap()
    }

    #[test]
    fn diagonal_eigenvalues_pass_through() {
        let a = DenseMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, 1.0),
            ],
        )
        .unwrap();
        let s = eig(&a, 1e-12).unwrap();
        assert!((s.values[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((s.values[1] - Complex64::new(2.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn nilpotent_block_reports_double_zero() {
        let a = DenseMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = eig(&a, 1e-10).unwrap();
        assert!(s.values[0].norm() < 1e-12);
        assert!(s.values[1].norm() < 1e-12);
        assert!(s.residuals.iter().all(|&r| r <= 1e-10 * a.frobenius_norm()));
    }

    #[test]
    fn schur_factorization_reconstructs() {
        let n = 30;
        let a = random_matrix(n, 33);
        let dec = schur(&a).unwrap();
        let qtq = dec.q.matmul(&dec.t).unwrap().matmul(&dec.q.adjoint()).unwrap();
        let err = qtq.sub(&a).unwrap().frobenius_norm() / a.frobenius_norm();
        assert!(err < 1e-12, "reconstruction error {err}");
        let unitary = dec.q.adjoint().matmul(&dec.q).unwrap()
            .sub(&DenseMatrix::identity(n)).unwrap().frobenius_norm();
        assert!(unitary < 1e-12, "unitarity defect {unitary}");
    }

    // Oracle: build A = V diag(mu) V^{-1} from a prescribed spectrum; the
    // solver must return that spectrum.
    #[test]
    fn prescribed_similarity_spectrum_is_recovered() {
        let n = 50;
        let mut g = Counter64::new(77);
        let mus: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(1.0 + k as f64 + g.uniform(), 2.0 * g.uniform() - 1.0))
            .collect();
        let v = {
            // Well-conditioned: identity plus a modest random bump.
            let bump = random_matrix(n, 78).scale(Complex64::new(0.1, 0.0));
            DenseMatrix::identity(n).add(&bump).unwrap()
        };
        let d = DenseMatrix::from_fn(n, n, |r, c| {
            if r == c { mus[r] } else { Complex64::new(0.0, 0.0) }
        })
        .unwrap();
        // A = V D V^{-1} = ((V^H)^{-1} (V D)^H)^H.
        let w = v.matmul(&d).unwrap();
        let lu_vh = v.adjoint().lu().unwrap();
        let a = lu_vh.solve_mat(&w.adjoint()).unwrap().adjoint();
        let mut expected = mus.clone();
        expected.sort_by(|&p, &q| eigenvalue_order(p, q));
        let s = eig(&a, 1e-8).unwrap();
        for (got, want) in s.values.iter().zip(&expected) {
            assert!(
                (got - want).norm() < 1e-8 * want.norm().max(1.0),
                "eigenvalue mismatch {got} vs {want}"
            );
        }
    }

    #[test]
    fn eigenvector_residuals_are_small_for_random_matrices() {
        let n = 40;
        let a = random_matrix(n, 5);
        let s = eig(&a, 1e-10).unwrap();
        let fro = a.frobenius_norm();
        for (i, &r) in s.residuals.iter().enumerate() {
            assert!(r <= 1e-10 * fro, "residual {i}: {r}");
            let v = s.vectors.col(i);
            assert!((vnorm(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        let n = 25;
        let a = random_matrix(n, 55);
        let s = eig(&a, 1e-9).unwrap();
        let tr: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
        let sum: Complex64 = s.values.iter().sum();
        assert!((tr - sum).norm() <= 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn sort_schur_orders_diagonal_and_preserves_similarity() {
        let n = 20;
        let a = random_matrix(n, 91);
        let mut dec = schur(&a).unwrap();
        sort_schur(&mut dec, |z| (z.norm(), crate::linalg::canonical_arg(z)));
        for k in 0..n - 1 {
            let ka = dec.t[(k, k)].norm();
            let kb = dec.t[(k + 1, k + 1)].norm();
            assert!(ka <= kb + 1e-12, "diagonal not sorted at {k}");
        }
        let qtq = dec.q.matmul(&dec.t).unwrap().matmul(&dec.q.adjoint()).unwrap();
        let err = qtq.sub(&a).unwrap().frobenius_norm() / a.frobenius_norm();
        assert!(err < 1e-11, "similarity broken by reordering: {err}");
    }

    #[test]
    fn pencil_scalar_case() {
        let l = DenseMatrix::from_real(1, 1, &[2.0]).unwrap();
        let m = DenseMatrix::from_real(1, 1, &[1.0]).unwrap();
        let s = pencil_eig(&l, &m, 1e-12).unwrap();
        assert!((s.values[0] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pencil_diagonal_ratios() {
        let l = DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        let m = DenseMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 0.5]).unwrap();
        let s = pencil_eig(&l, &m, 1e-12).unwrap();
        assert!((s.values[0] - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!((s.values[1] - Complex64::new(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn pencil_hermitian_definite_has_exactly_real_eigenvalues() {
        let n = 20;
        let mut g = Counter64::new(8);
        let b = DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64()).unwrap();
        let l = b.matmul(&b.adjoint()).unwrap().add(&DenseMatrix::identity(n)).unwrap();
        let c = DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64() * 0.2).unwrap();
        let m = c.matmul(&c.adjoint()).unwrap().add(&DenseMatrix::identity(n)).unwrap();
        let s = pencil_eig(&l, &m, 1e-10).unwrap();
        for v in &s.values {
            assert_eq!(v.im, 0.0);
            assert!(v.re > 0.0);
        }
    }

    #[test]
    fn pencil_rejects_indefinite_mass() {
        let l = DenseMatrix::identity(2);
        let m = DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(matches!(pencil_eig(&l, &m, 1e-10), Err(LinalgError::NotPositiveDefinite { .. })));
    }

    #[test]
    fn givens_zeroes_second_component() {
        let mut g = Counter64::new(101);
        for _ in 0..50 {
            let a = g.gaussian_c64();
            let b = g.gaussian_c64();
            let (c, s) = givens(a, b);
            let second = -s.conj() * a + Complex64::new(c, 0.0) * b;
            assert!(second.norm() < 1e-13 * (a.norm() + b.norm()).max(1e-30));
            let unit = c * c + s.norm_sqr();
            assert!((unit - 1.0).abs() < 1e-13);
        }
        let _ = vdot(&[], &[]);
    }
}
