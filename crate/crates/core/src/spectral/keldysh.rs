//! Angular statistics of multiplicatively perturbed compact positive
//! matrices.
//!
//! Start from `A0 = U^H diag(k^{-p}) U` with `U` unitary, a positive
//! matrix with eigenvalues on the positive axis, and pass to
//! `A = A0 (I + dA)` with `|dA| = delta`. The classical completeness
//! picture predicts the eigenvalues of `A` stay inside small angular
//! sectors around the positive axis once `k^{-p}` decays fast enough,
//! with at most finitely many exceptions near the negative axis. The lab
//! counts, for each half-angle `eps`, how many eigenvalues sit outside
//! both sectors `|arg z| < eps` and `|arg(-z)| < eps`, and how many fall
//! in the negative corner itself.

use num_complex::Complex64;

use super::{bad, SpectralError};
use crate::linalg::{canonical_arg, eig, eigenvalue_order, svd_values, vdot, vnorm, DenseMatrix};
use crate::rng::Counter64;

#[derive(Clone, Debug)]
pub struct AngularStats {
    pub n: usize,
    pub p: f64,
    pub delta_norm: f64,
    pub seed: u64,
    pub epsilons: Vec<f64>,
    /// Per epsilon: eigenvalues with both |arg z| >= eps and
    /// |arg(-z)| >= eps.
    pub outside_counts: Vec<usize>,
    /// Per epsilon: eigenvalues with |arg(-z)| < eps.
    pub negative_corner_counts: Vec<usize>,
    /// Numerical rank of the eigenvector matrix.
    pub root_rank: usize,
    /// Eigenvalues, ascending by (modulus, argument).
    pub eigenvalues: Vec<Complex64>,
}

/// Twice-through modified Gram-Schmidt of a square Gaussian draw; the
/// result is unitary to working precision.
fn random_unitary(n: usize, rng: &mut Counter64) -> Result<DenseMatrix, SpectralError> {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gaussian_c64()).collect())
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let p = {
                    let (head, tail) = cols.split_at(j);
                    vdot(&head[i], &tail[0])
                };
                let (head, tail) = cols.split_at_mut(j);
                for (x, q) in tail[0].iter_mut().zip(&head[i]) {
                    *x -= p * q;
                }
            }
        }
        let norm = vnorm(&cols[j]);
        if norm < 1e-8 {
            return Err(bad("degenerate Gaussian draw for the unitary factor"));
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    DenseMatrix::from_fn(n, n, |i, j| cols[j][i]).map_err(Into::into)
}

/// Builds `A = U^H diag(k^{-p}) U (I + dA)` from the seed and reports the
/// angular distribution of its spectrum for each sector half-angle in
/// `eps_list`.
pub fn keldysh_lab(
    n: usize,
    p: f64,
    delta_norm: f64,
    eps_list: &[f64],
    seed: u64,
) -> Result<AngularStats, SpectralError> {
    use std::f64::consts::PI;
    if !(2..=1024).contains(&n) {
        return Err(bad(format!("matrix size {n} outside 2..=1024")));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(bad(format!("decay exponent {p} must be positive")));
    }
    if !(delta_norm >= 0.0 && delta_norm.is_finite()) {
        return Err(bad(format!("perturbation size {delta_norm} must be nonnegative")));
    }
    if eps_list.is_empty() {
        return Err(bad("no sector half-angles given"));
    }
    for &eps in eps_list {
        if !(eps > 0.0 && eps <= PI / 2.0) {
            return Err(bad(format!("sector half-angle {eps} outside (0, pi/2]")));
        }
    }

    let mut rng = Counter64::new(seed);
    let u = random_unitary(n, &mut rng)?;
    let diag = DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(((i + 1) as f64).powf(-p), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    let a0 = u.adjoint().matmul(&diag)?.matmul(&u)?;

    let a = if delta_norm > 0.0 {
        let mut draw = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                draw[(i, j)] = rng.gaussian_c64();
            }
        }
        let sigma = crate::linalg::spectral_norm(&draw)?;
        let da = draw.scale(Complex64::new(delta_norm / sigma, 0.0));
        let factor = DenseMatrix::identity(n).add(&da)?;
        a0.matmul(&factor)?
    } else {
        a0
    };

    let spectrum = eig(&a, 1e-9)?;
    let mut eigenvalues = spectrum.values.clone();
    eigenvalues.sort_by(|x, y| eigenvalue_order(*x, *y));

    let mut outside_counts = Vec::with_capacity(eps_list.len());
    let mut negative_corner_counts = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut outside = 0;
        let mut corner = 0;
        for &z in &eigenvalues {
            let d_plus = canonical_arg(z).abs();
            let d_minus = PI - d_plus;
            if d_minus < eps {
                corner += 1;
            }
            if d_plus >= eps && d_minus >= eps {
                outside += 1;
            }
        }
        outside_counts.push(outside);
        negative_corner_counts.push(corner);
    }

    let svals = svd_values(&spectrum.vectors)?;
    let top = svals.first().copied().unwrap_or(0.0);
    let root_rank = svals.iter().filter(|&&s| s > 1e-8 * top).count();

    Ok(AngularStats {
        n,
        p,
        delta_norm,
        seed,
        epsilons: eps_list.to_vec(),
        outside_counts,
        negative_corner_counts,
        root_rank,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unperturbed_spectrum_is_the_positive_power_sequence() {
        let stats = keldysh_lab(24, 1.5, 0.0, &[0.3], 7).unwrap();
        let max_im = stats.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(max_im <= 1e-10, "max |Im| = {max_im}");
        assert_eq!(stats.outside_counts, vec![0]);
        assert_eq!(stats.negative_corner_counts, vec![0]);
        assert_eq!(stats.root_rank, 24);
        // Similarity by a unitary preserves the diagonal model exactly.
        for (k, z) in stats.eigenvalues.iter().enumerate() {
            let want = ((24 - k) as f64).powf(-1.5);
            assert!((z.re - want).abs() <= 1e-8 * want, "k = {k}: {} vs {want}", z.re);
        }
    }

    #[test]
    fn same_seed_reproduces_identical_bits() {
        let a = keldysh_lab(16, 2.0, 0.3, &[0.2, 0.4], 42).unwrap();
        let b = keldysh_lab(16, 2.0, 0.3, &[0.2, 0.4], 42).unwrap();
        assert_eq!(a.eigenvalues.len(), b.eigenvalues.len());
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
        assert_eq!(a.outside_counts, b.outside_counts);
        assert_eq!(a.root_rank, b.root_rank);
    }

    #[test]
    fn counts_are_bounded_by_the_dimension() {
        let stats = keldysh_lab(20, 2.0, 0.5, &[0.1, 0.3, PI / 2.0], 3).unwrap();
        for (&o, &c) in stats.outside_counts.iter().zip(&stats.negative_corner_counts) {
            assert!(o + c <= 20);
        }
        assert_eq!(stats.eigenvalues.len(), 20);
    }

    #[test]
    fn rejects_out_of_range_arguments() {
        assert!(keldysh_lab(1, 2.0, 0.1, &[0.3], 0).is_err());
        assert!(keldysh_lab(2000, 2.0, 0.1, &[0.3], 0).is_err());
        assert!(keldysh_lab(8, 0.0, 0.1, &[0.3], 0).is_err());
        assert!(keldysh_lab(8, 2.0, -0.1, &[0.3], 0).is_err());
        assert!(keldysh_lab(8, 2.0, 0.1, &[], 0).is_err());
        assert!(keldysh_lab(8, 2.0, 0.1, &[0.0], 0).is_err());
        assert!(keldysh_lab(8, 2.0, 0.1, &[2.0], 0).is_err());
    }
}
