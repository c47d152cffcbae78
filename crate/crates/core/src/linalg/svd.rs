use super::{hermitian_eig, vnorm, DenseMatrix, LinalgError};

/// Singular values of a rectangular complex matrix, descending; `min(m, n)`
/// values are returned.
///
/// Computed from the Hermitian eigendecomposition of the smaller Gram matrix
/// (`A^H A` or `A A^H`), with a one-sided refinement: each value is
/// re-evaluated as `|A v|` (resp. `|A^H u|`) on the computed eigenvector,
/// which recovers accuracy lost to the squaring for small singular values.
pub fn svd_values(a: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    let (m, n) = (a.n_rows(), a.n_cols());
    let count = m.min(n);
    if count == 0 {
        return Ok(vec![]);
    }
    let use_right = n <= m;
    let gram = if use_right {
        a.adjoint().matmul(a)?
    } else {
        a.matmul(&a.adjoint())?
    };
    let (_, vecs) = hermitian_eig(&gram, true)?;
    let vecs = vecs.expect("vectors requested");
    let side = if use_right { a.clone() } else { a.adjoint() };
    let mut sigmas: Vec<f64> = (0..count)
        .map(|i| {
            let v = vecs.col(i);
            let av = side.matvec(&v).expect("dimension checked");
            vnorm(&av)
        })
        .collect();
    sigmas.sort_by(|p, q| q.partial_cmp(p).unwrap());
    Ok(sigmas)
}

/// Largest singular value; convenience wrapper used by the operator-norm
/// computations.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64, LinalgError> {
    Ok(svd_values(a)?.first().copied().unwrap_or(0.0))
}

/// Singular values (descending) together with the matching right singular
/// vectors as columns. Always forms `A^H A`, so the column space of the
/// returned matrix is the full domain; the trailing columns for tiny values
/// span the numerical kernel.
pub(super) fn svd_right(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix), LinalgError> {
    let n = a.n_cols();
    let gram = a.adjoint().matmul(a)?;
    let (_, vecs) = hermitian_eig(&gram, true)?;
    let vecs = vecs.expect("vectors requested");
    let mut pairs: Vec<(f64, usize)> = (0..n)
        .map(|i| {
            let v = vecs.col(i);
            let av = a.matvec(&v).expect("dimension checked");
            (vnorm(&av), i)
        })
        .collect();
    pairs.sort_by(|p, q| q.0.partial_cmp(&p.0).unwrap());
    let mut v_sorted = DenseMatrix::zeros(n, n);
    let mut sigmas = Vec::with_capacity(n);
    for (new, &(s, old)) in pairs.iter().enumerate() {
        sigmas.push(s);
        v_sorted.set_col(new, &vecs.col(old));
    }
    Ok((sigmas, v_sorted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::rng::Counter64;

    #[test]
    fn zero_matrix_has_zero_singular_values() {
        let a = DenseMatrix::zeros(3, 3);
        let s = svd_values(&a).unwrap();
        assert_eq!(s, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn diagonal_signs_are_absorbed() {
        let a = DenseMatrix::from_real(2, 2, &[3.0, 0.0, 0.0, -4.0]).unwrap();
        let s = svd_values(&a).unwrap();
        assert!((s[0] - 4.0).abs() < 1e-13);
        assert!((s[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn rectangular_matrices_return_min_dimension_count() {
        let a = DenseMatrix::from_real(3, 2, &[1.0, 0.0, 0.0, 2.0, 0.0, 0.0]).unwrap();
        let s = svd_values(&a).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 2.0).abs() < 1e-13);
        assert!((s[1] - 1.0).abs() < 1e-13);
        let wide = a.adjoint();
        let sw = svd_values(&wide).unwrap();
        assert_eq!(sw.len(), 2);
        assert!((sw[0] - 2.0).abs() < 1e-13);
    }

    // For Hermitian matrices the singular values are the absolute eigenvalues.
    #[test]
    fn hermitian_singular_values_are_absolute_eigenvalues() {
        let n = 25;
        let mut g = Counter64::new(17);
        let b = DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64()).unwrap();
        let h = b.add(&b.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0));
        let (vals, _) = hermitian_eig(&h, false).unwrap();
        let mut expected: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
        expected.sort_by(|p, q| q.partial_cmp(p).unwrap());
        let s = svd_values(&h).unwrap();
        for (got, want) in s.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-10 * expected[0].max(1.0), "{got} vs {want}");
        }
    }

    #[test]
    fn product_of_singular_values_matches_determinant_modulus() {
        for seed in [1u64, 2, 3, 4] {
            let n = 20;
            let mut g = Counter64::new(seed);
            let a = DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64()).unwrap();
            let s = svd_values(&a).unwrap();
            let prod: f64 = s.iter().map(|x| x.ln()).sum::<f64>().exp();
            let det = a.lu().unwrap().det().norm();
            let rel = (prod - det).abs() / det.max(1e-300);
            assert!(rel < 1e-6, "seed {seed}: |det| {det} vs product {prod} (rel {rel})");
        }
    }

    #[test]
    fn values_are_descending_and_nonnegative() {
        let mut g = Counter64::new(44);
        let a = DenseMatrix::from_fn(15, 15, |_, _| g.gaussian_c64()).unwrap();
        let s = svd_values(&a).unwrap();
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
        assert!(s.iter().all(|&x| x >= 0.0));
    }
}
