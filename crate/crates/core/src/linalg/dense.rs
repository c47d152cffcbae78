use num_complex::Complex64;

use super::LinalgError;

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data. Rejects non-finite entries and
    /// length mismatches; every other constructor funnels through here.
    pub fn new(n_rows: usize, n_cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != n_rows * n_cols {
            return Err(LinalgError::Dim("DenseMatrix::new"));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(DenseMatrix { n_rows, n_cols, data })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseMatrix { n_rows, n_cols, data: vec![Complex64::new(0.0, 0.0); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                data.push(f(r, c));
            }
        }
        Self::new(n_rows, n_cols, data)
    }

    /// Real matrix helper used all over the tests.
    pub fn from_real(n_rows: usize, n_cols: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(n_rows, n_cols, data)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn col(&self, c: usize) -> Vec<Complex64> {
        (0..self.n_rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[Complex64]) {
        debug_assert_eq!(v.len(), self.n_rows);
        for (r, &z) in v.iter().enumerate() {
            self[(r, c)] = z;
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Relative Frobenius distance to the adjoint; 0 for Hermitian input.
    pub fn hermitian_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut num = 0.0;
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                num += (self[(r, c)] - self[(c, r)].conj()).norm_sqr();
            }
        }
        let denom = self.frobenius_norm();
        if denom == 0.0 {
            0.0
        } else {
            num.sqrt() / denom
        }
    }

    /// Hermitian average (self + self^H) / 2.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for r in 0..self.n_rows {
            for c in 0..=r {
                let avg = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
                out[(r, c)] = avg;
                out[(c, r)] = avg.conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let data = self.data.iter().map(|&z| z * s).collect();
        DenseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(LinalgError::Dim("DenseMatrix::add"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(LinalgError::Dim("DenseMatrix::sub"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(DenseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n_cols != other.n_rows {
            return Err(LinalgError::Dim("DenseMatrix::matmul"));
        }
        let (m, k, n) = (self.n_rows, self.n_cols, other.n_cols);
        let mut out = Self::zeros(m, n);
        // ikj loop order keeps the inner traversal contiguous in both inputs.
        for i in 0..m {
            for p in 0..k {
                let a = self.data[i * k + p];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[p * n..(p + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    orow[j] += a * brow[j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if x.len() != self.n_cols {
            return Err(LinalgError::Dim("DenseMatrix::matvec"));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.n_rows];
        for r in 0..self.n_rows {
            let row = self.row(r);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Solves `L y = b` with `L` lower triangular (this matrix).
    pub fn solve_lower(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.n_rows;
        if !self.is_square() || b.len() != n {
            return Err(LinalgError::Dim("solve_lower"));
        }
        let mut y = b.to_vec();
        for i in 0..n {
            let mut acc = y[i];
            let row = self.row(i);
            for k in 0..i {
                acc -= row[k] * y[k];
            }
            let d = row[i];
            if d.norm() == 0.0 {
                return Err(LinalgError::Singular("solve_lower"));
            }
            y[i] = acc / d;
        }
        Ok(y)
    }

    /// Solves `L^H x = b` with `L` lower triangular (this matrix).
    pub fn solve_lower_adjoint(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.n_rows;
        if !self.is_square() || b.len() != n {
            return Err(LinalgError::Dim("solve_lower_adjoint"));
        }
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in i + 1..n {
                acc -= self[(k, i)].conj() * x[k];
            }
            let d = self[(i, i)].conj();
            if d.norm() == 0.0 {
                return Err(LinalgError::Singular("solve_lower_adjoint"));
            }
            x[i] = acc / d;
        }
        Ok(x)
    }

    /// Column-wise `L^{-1} B` for lower triangular `L` (this matrix).
    pub fn solve_lower_mat(&self, b: &Self) -> Result<Self, LinalgError> {
        if self.n_rows != b.n_rows {
            return Err(LinalgError::Dim("solve_lower_mat"));
        }
        let mut out = Self::zeros(b.n_rows, b.n_cols);
        for c in 0..b.n_cols {
            let col = self.solve_lower(&b.col(c))?;
            out.set_col(c, &col);
        }
        Ok(out)
    }

    /// Column-wise `L^{-H} B` for lower triangular `L` (this matrix).
    pub fn solve_lower_adjoint_mat(&self, b: &Self) -> Result<Self, LinalgError> {
        if self.n_rows != b.n_rows {
            return Err(LinalgError::Dim("solve_lower_adjoint_mat"));
        }
        let mut out = Self::zeros(b.n_rows, b.n_cols);
        for c in 0..b.n_cols {
            let col = self.solve_lower_adjoint(&b.col(c))?;
            out.set_col(c, &col);
        }
        Ok(out)
    }

    pub fn lu(&self) -> Result<Lu, LinalgError> {
        Lu::factor(self)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.n_rows && c < self.n_cols);
        &self.data[r * self.n_cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.n_rows && c < self.n_cols);
        &mut self.data[r * self.n_cols + c]
    }
}

/// Partial-pivot LU factorization `P A = L U`.
pub struct Lu {
    lu: DenseMatrix,
    piv: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::Dim("Lu::factor"));
        }
        let n = a.n_rows;
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let mut p = k;
            let mut pmax = lu[(k, k)].norm();
            for r in k + 1..n {
                let v = lu[(r, k)].norm();
                if v > pmax {
                    pmax = v;
                    p = r;
                }
            }
            if pmax == 0.0 {
                return Err(LinalgError::Singular("Lu::factor"));
            }
            if p != k {
                for c in 0..n {
                    let t = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = t;
                }
                piv.swap(k, p);
                swaps += 1;
            }
            let d = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / d;
                lu[(r, k)] = f;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for c in k + 1..n {
                    let sub = f * lu[(k, c)];
                    lu[(r, c)] -= sub;
                }
            }
        }
        Ok(Lu { lu, piv, swaps })
    }

    pub fn solve_vec(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.lu.n_rows;
        if b.len() != n {
            return Err(LinalgError::Dim("Lu::solve_vec"));
        }
        let mut y: Vec<Complex64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = y[i];
            for k in 0..i {
                acc -= self.lu[(i, k)] * y[k];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in i + 1..n {
                acc -= self.lu[(i, k)] * y[k];
            }
            y[i] = acc / self.lu[(i, i)];
        }
        Ok(y)
    }

    pub fn solve_mat(&self, b: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if b.n_rows != self.lu.n_rows {
            return Err(LinalgError::Dim("Lu::solve_mat"));
        }
        let mut out = DenseMatrix::zeros(b.n_rows, b.n_cols);
        for c in 0..b.n_cols {
            let col = self.solve_vec(&b.col(c))?;
            out.set_col(c, &col);
        }
        Ok(out)
    }

    pub fn det(&self) -> Complex64 {
        let mut d = Complex64::new(if self.swaps.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
        for i in 0..self.lu.n_rows {
            d *= self.lu[(i, i)];
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vdot, vnorm};
    use crate::rng::Counter64;

    fn random_matrix(n: usize, seed: u64) -> DenseMatrix {
        let mut g = Counter64::new(seed);
        DenseMatrix::from_fn(n, n, |_, _| g.gaussian_c64()).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_shapes_and_nan() {
        assert!(DenseMatrix::new(2, 2, vec![Complex64::new(1.0, 0.0); 3]).is_err());
        let mut d = vec![Complex64::new(1.0, 0.0); 4];
        d[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(DenseMatrix::new(2, 2, d), Err(LinalgError::NonFinite)));
    }

    #[test]
    fn matmul_matches_hand_product() {
        let a = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = DenseMatrix::from_real(2, 2, &[5.0, 6.0, 7.0, 8.0]).unwrap();
        let c = a.matmul(&b).unwrap();
        assert_eq!(c[(0, 0)].re, 19.0);
        assert_eq!(c[(0, 1)].re, 22.0);
        assert_eq!(c[(1, 0)].re, 43.0);
        assert_eq!(c[(1, 1)].re, 50.0);
    }

    #[test]
    fn lu_solve_reproduces_rhs() {
        let n = 30;
        let a = random_matrix(n, 11);
        let mut g = Counter64::new(12);
        let x: Vec<Complex64> = (0..n).map(|_| g.gaussian_c64()).collect();
        let b = a.matvec(&x).unwrap();
        let lu = a.lu().unwrap();
        let x2 = lu.solve_vec(&b).unwrap();
        let err: f64 = x.iter().zip(&x2).map(|(p, q)| (p - q).norm()).sum();
        assert!(err < 1e-9, "err {err}");
    }

    #[test]
    fn lu_det_of_triangular_is_diagonal_product() {
        let a = DenseMatrix::from_real(3, 3, &[2.0, 1.0, 0.0, 0.0, 3.0, 5.0, 0.0, 0.0, 4.0]).unwrap();
        let d = a.lu().unwrap().det();
        assert!((d - Complex64::new(24.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn triangular_solves_invert_each_other() {
        let n = 20;
        let mut g = Counter64::new(5);
        let mut l = DenseMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..r {
                l[(r, c)] = g.gaussian_c64() * 0.3;
            }
            l[(r, r)] = Complex64::new(1.0 + g.uniform(), 0.0);
        }
        let x: Vec<Complex64> = (0..n).map(|_| g.gaussian_c64()).collect();
        let y = l.solve_lower(&x).unwrap();
        let x2 = l.matvec(&y).unwrap();
        assert!(x.iter().zip(&x2).all(|(p, q)| (p - q).norm() < 1e-10));

        let z = l.solve_lower_adjoint(&x).unwrap();
        let x3 = l.adjoint().matvec(&z).unwrap();
        assert!(x.iter().zip(&x3).all(|(p, q)| (p - q).norm() < 1e-10));
    }

    #[test]
    fn vdot_conjugates_first_argument() {
        let x = vec![Complex64::new(0.0, 1.0)];
        let y = vec![Complex64::new(0.0, 1.0)];
        let d = vdot(&x, &y);
        assert!((d - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((vnorm(&x) - 1.0).abs() < 1e-15);
    }
}
