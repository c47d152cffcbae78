//! A numerical laboratory for Sturm-Liouville spectral theory on intervals
//! and rectangles.
//!
//! The crate discretizes variational boundary value problems (Robin, mixed
//! Dirichlet/Robin, oblique-derivative, and a non-coercive Cauchy-Riemann
//! example) by Galerkin projection onto conforming finite element spaces and
//! then verifies spectral claims as exact matrix facts: sector containment of
//! perturbed eigenvalues, resolvent growth along rays, s-number decay, and
//! completeness of root vectors.
//!
//! The discrete dictionary used throughout, with basis functions `phi_i`,
//! mass matrix `M`, energy Gram matrix `K0` and perturbation matrix `D`:
//!
//! * a coefficient vector `x` represents `u = sum_i x_i phi_i`;
//! * `x^H K0 x` is the squared energy norm, `x^H M x` the squared `L^2` norm;
//! * a functional vector `g` with `g_i = (f, phi_i)_{L^2}` represents a
//!   distribution `f`, with squared dual norm `g^H K0^{-1} g`;
//! * the unperturbed operator acts as `x -> K0 x`, the perturbation as
//!   `x -> D x`, and the embedding of a function into duals as `x -> M x`.
//!
//! Modules build on each other in this order: [`linalg`] (dense complex
//! kernels), [`problem`] (coefficient data and hypothesis checks),
//! [`discretize`] (assembly), [`spectral`] (the actual experiments),
//! [`harness`] (configs, reports, CLI plumbing).

// Validation guards are written `!(x > 0.0)` instead of `x <= 0.0` on
// purpose: the negated form sends NaN down the error path. Index loops in
// the kernels mirror the classical algorithm statements.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod discretize;
pub mod harness;
pub mod linalg;
pub mod problem;
pub mod rng;
pub mod spectral;

pub use linalg::DenseMatrix;
