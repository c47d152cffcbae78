use num_complex::Complex64;

use super::{DenseMatrix, LinalgError, HERMITIAN_REL_TOL};

/// Cholesky factorization `H = G G^H` with `G` lower triangular and a real
/// positive diagonal. Input must be Hermitian up to a relative Frobenius
/// defect of `HERMITIAN_REL_TOL`; the factorization itself runs on the
/// Hermitian average so roundoff-level asymmetry cannot leak in.
pub fn cholesky(h: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::Dim("cholesky"));
    }
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_REL_TOL {
        return Err(LinalgError::NotHermitian { defect });
    }
    let n = h.n_rows();
    let a = h.hermitian_part();
    let mut g = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= g[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(LinalgError::NotPositiveDefinite { pivot: j, value: d });
        }
        let gjj = d.sqrt();
        g[(j, j)] = Complex64::new(gjj, 0.0);
        for i in j + 1..n {
            let mut acc = a[(i, j)];
            for k in 0..j {
                acc -= g[(i, k)] * g[(j, k)].conj();
            }
            g[(i, j)] = acc / gjj;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Counter64;

    #[test]
    fn identity_factors_to_identity() {
        let g = cholesky(&DenseMatrix::identity(4)).unwrap();
        let d = g.sub(&DenseMatrix::identity(4)).unwrap().frobenius_norm();
        assert!(d < 1e-15);
    }

    #[test]
    fn diagonal_factors_to_square_roots() {
        let h = DenseMatrix::from_real(2, 2, &[4.0, 0.0, 0.0, 9.0]).unwrap();
        let g = cholesky(&h).unwrap();
        assert!((g[(0, 0)].re - 2.0).abs() < 1e-15);
        assert!((g[(1, 1)].re - 3.0).abs() < 1e-15);
    }

    // Hand factorization of [[2,1],[1,2]]: first column (sqrt(2), 1/sqrt(2)),
    // second pivot 2 - 1/2 = 3/2, so the last row is (1/sqrt(2), sqrt(3/2)).
    #[test]
    fn two_by_two_matches_hand_computation() {
        let h = DenseMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let g = cholesky(&h).unwrap();
        assert!((g[(0, 0)].re - 2.0_f64.sqrt()).abs() < 1e-14);
        assert!((g[(1, 0)].re - 1.0 / 2.0_f64.sqrt()).abs() < 1e-14);
        assert!((g[(1, 1)].re - (1.5_f64).sqrt()).abs() < 1e-14);
        assert_eq!(g[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn indefinite_matrix_is_rejected_with_pivot_index() {
        let h = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        match cholesky(&h) {
            Err(LinalgError::NotPositiveDefinite { pivot, .. }) => assert_eq!(pivot, 1),
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let h = DenseMatrix::from_real(2, 2, &[1.0, 0.5, 0.0, 1.0]).unwrap();
        assert!(matches!(cholesky(&h), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn random_hpd_reconstructs() {
        let n = 25;
        let mut rng = Counter64::new(3);
        let b = DenseMatrix::from_fn(n, n, |_, _| rng.gaussian_c64()).unwrap();
        // B B^H + I is Hermitian positive definite by construction.
        let h = b.matmul(&b.adjoint()).unwrap().add(&DenseMatrix::identity(n)).unwrap();
        let g = cholesky(&h).unwrap();
        let back = g.matmul(&g.adjoint()).unwrap();
        let err = back.sub(&h).unwrap().frobenius_norm() / h.frobenius_norm();
        assert!(err < 1e-13, "relative reconstruction error {err}");
    }
}
