//! Self-contained dense complex linear algebra.
//!
//! Everything here works on row-major [`DenseMatrix`] values at desk scale
//! (n up to a few thousand) and is deterministic: identical inputs produce
//! identical bits on every run. The decompositions provided are
//!
//! 1. Cholesky `H = G G^H` for Hermitian positive definite matrices,
//! 2. a Hermitian eigensolver (Householder tridiagonalization + implicit QL),
//! 3. a general complex eigensolver (Householder Hessenberg reduction +
//!    Wilkinson-shift QR, eigenvectors by back-substitution on the triangular
//!    Schur factor),
//! 4. singular values via the Hermitian eigendecomposition of `A^H A` with
//!    one-sided refinement `sigma_i = |A v_i|`,
//! 5. generalized Hermitian-definite pencils by Cholesky congruence,
//! 6. Jordan chain extraction by rank-revealing analysis of powers of
//!    `A - lambda I`.

mod chol;
mod dense;
mod eig;
mod hermitian;
mod jordan;
mod svd;

pub use chol::cholesky;
pub use dense::{DenseMatrix, Lu};
pub use eig::{eig, pencil_eig, schur, sort_schur, Schur, Spectrum};
pub use hermitian::hermitian_eig;
pub use jordan::{jordan_chains, JordanChain};
pub use svd::{spectral_norm, svd_values};

use num_complex::Complex64;
use thiserror::Error;

/// Relative Frobenius defect below which a matrix is accepted as Hermitian.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// Subdiagonal deflation factor for the QR iteration: `h[k+1][k]` is deemed
/// zero once it drops below this multiple of `|h[k][k]| + |h[k+1][k+1]|`.
pub const QR_DEFLATION_REL: f64 = 1e-14;

/// Hard cap on QR iterations: 30 per eigenvalue, `30 n` in total.
pub const QR_SWEEPS_PER_EIGENVALUE: usize = 30;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {0}")]
    Dim(&'static str),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive definite (pivot {pivot} is {value:.3e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("{stage} failed to converge after {sweeps} sweeps")]
    NoConvergence { stage: &'static str, sweeps: usize },
    #[error(
        "rank decision is ambiguous: singular value {sigma:.3e} of power {power} \
         lies inside the band [{lo:.3e}, {hi:.3e}]; adjust the tolerance"
    )]
    RankAmbiguous { sigma: f64, power: usize, lo: f64, hi: f64 },
    #[error("singular matrix in {0}")]
    Singular(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Conjugating dot product `sum_i conj(x_i) y_i`.
pub fn vdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        acc += a.conj() * b;
    }
    acc
}

/// Euclidean norm of a complex vector.
pub fn vnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Canonical argument in (-pi, pi]: the -pi branch value is folded to +pi so
/// sorting by argument has a single representative for the negative axis.
pub fn canonical_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Total order on eigenvalues: ascending modulus, ties by ascending argument.
pub fn eigenvalue_order(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    let ka = (a.norm(), canonical_arg(a));
    let kb = (b.norm(), canonical_arg(b));
    ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
}
