use num_complex::Complex64;

use super::svd::svd_right;
use super::{vdot, vnorm, DenseMatrix, LinalgError};

/// One Jordan chain: `vectors[0]` is the eigenvector and
/// `(A - lambda I) vectors[k+1] = vectors[k]` holds by construction.
#[derive(Clone, Debug)]
pub struct JordanChain {
    pub vectors: Vec<Vec<Complex64>>,
}

impl JordanChain {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Jordan chains of `a` at the eigenvalue `lambda`, by rank-revealing
/// analysis of the kernels of `(A - lambda I)^k`.
///
/// Rank decisions compare singular values of the powers against `tol`:
/// values below `tol / 10` count as zero, values above `tol * 10` as
/// nonzero, and anything inside the band aborts with `RankAmbiguous` so the
/// caller can adjust the tolerance instead of silently guessing the
/// structure. The number of chains of length at least `k` equals
/// `dim ker (A - lambda I)^k - dim ker (A - lambda I)^{k-1}`; chain tops are
/// picked greedily in the deeper kernels and mapped down by applying
/// `A - lambda I`, which makes the chain relation exact.
///
/// If `lambda` is not an eigenvalue at this tolerance the result is empty.
pub fn jordan_chains(
    a: &DenseMatrix,
    lambda: Complex64,
    tol: f64,
) -> Result<Vec<JordanChain>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::Dim("jordan_chains"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LinalgError::InvalidArgument(format!(
            "jordan_chains tolerance {tol:e} must be positive and finite"
        )));
    }
    let n = a.n_rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut b = a.clone();
    for i in 0..n {
        let shifted = b[(i, i)] - lambda;
        b[(i, i)] = shifted;
    }

    // Kernel bases of successive powers. kernels[k-1] spans ker B^k.
    let mut kernels: Vec<Vec<Vec<Complex64>>> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    let mut power = b.clone();
    let m_max;
    loop {
        let k = kernels.len() + 1;
        let basis = kernel_basis(&power, tol, k)?;
        let d = basis.len();
        kernels.push(basis);
        dims.push(d);
        if k == 1 && d == 0 {
            return Ok(vec![]);
        }
        if k > 1 && d == dims[k - 2] {
            m_max = k - 1;
            break;
        }
        if d == n || k == n {
            m_max = k;
            break;
        }
        power = power.matmul(&b)?;
    }

    // Walk heights from the deepest kernel down, picking chain tops that are
    // independent of the lower kernel plus the already-continued chains.
    let mut tops: Vec<(usize, Vec<Complex64>)> = Vec::new();
    let mut carry: Vec<Vec<Complex64>> = Vec::new();
    for j in (1..=m_max).rev() {
        let d_j = dims[j - 1];
        let d_jm1 = if j >= 2 { dims[j - 2] } else { 0 };
        let need = d_j - d_jm1 - carry.len();
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        if j >= 2 {
            basis.extend(kernels[j - 2].iter().cloned());
        }
        for v in &carry {
            if let Some(w) = orthonormal_against(&basis, v) {
                basis.push(w);
            }
        }
        let mut new_tops: Vec<Vec<Complex64>> = Vec::new();
        let mut candidates: Vec<Vec<Complex64>> = kernels[j - 1].clone();
        for _ in 0..need {
            // Greedy pivot: the candidate with the largest residual after
            // projection onto the current span is the best-conditioned top.
            let mut best: Option<(f64, usize, Vec<Complex64>)> = None;
            for (idx, cand) in candidates.iter().enumerate() {
                let w = project_out(&basis, cand);
                let norm = vnorm(&w);
                if best.as_ref().is_none_or(|(b, _, _)| norm > *b) {
                    best = Some((norm, idx, w));
                }
            }
            let (norm, idx, w) = best.ok_or(LinalgError::NoConvergence {
                stage: "jordan_chain_selection",
                sweeps: 0,
            })?;
            if norm < 1e-6 {
                return Err(LinalgError::NoConvergence {
                    stage: "jordan_chain_selection",
                    sweeps: 0,
                });
            }
            let unit: Vec<Complex64> = w.iter().map(|z| z / norm).collect();
            basis.push(unit.clone());
            new_tops.push(unit);
            candidates.remove(idx);
        }
        for u in &new_tops {
            tops.push((j, u.clone()));
        }
        if j > 1 {
            let mut next_carry = Vec::with_capacity(carry.len() + new_tops.len());
            for v in carry.iter().chain(new_tops.iter()) {
                next_carry.push(b.matvec(v)?);
            }
            carry = next_carry;
        }
    }

    // Longest chains first; within a height keep discovery order.
    tops.sort_by_key(|p| std::cmp::Reverse(p.0));
    let mut chains = Vec::with_capacity(tops.len());
    for (height, top) in tops {
        let mut vectors = vec![top];
        for _ in 1..height {
            let next = b.matvec(vectors.last().unwrap())?;
            vectors.push(next);
        }
        vectors.reverse();
        chains.push(JordanChain { vectors });
    }
    Ok(chains)
}

/// Orthonormal kernel basis of `p` at the band-checked tolerance; `power`
/// only labels error reports.
fn kernel_basis(
    p: &DenseMatrix,
    tol: f64,
    power: usize,
) -> Result<Vec<Vec<Complex64>>, LinalgError> {
    let (sigmas, v) = svd_right(p)?;
    let lo = tol / 10.0;
    let hi = tol * 10.0;
    for &s in &sigmas {
        if s >= lo && s <= hi {
            return Err(LinalgError::RankAmbiguous { sigma: s, power, lo, hi });
        }
    }
    let mut basis = Vec::new();
    for (i, &s) in sigmas.iter().enumerate() {
        if s < lo {
            basis.push(v.col(i));
        }
    }
    Ok(basis)
}

/// Twice-iterated Gram-Schmidt projection of `v` off the span of `basis`.
fn project_out(basis: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let coeff = vdot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= coeff * bi;
            }
        }
    }
    w
}

fn orthonormal_against(basis: &[Vec<Complex64>], v: &[Complex64]) -> Option<Vec<Complex64>> {
    let w = project_out(basis, v);
    let norm = vnorm(&w);
    if norm < 1e-10 {
        None
    } else {
        Some(w.iter().map(|z| z / norm).collect())
    }
}
