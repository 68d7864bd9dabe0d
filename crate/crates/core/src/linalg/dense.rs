//! Row-major dense matrices and the handful of vector kernels the solvers need.

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `selfᵀ · self`, accumulated row by row so that each entry sees the
    /// rows in the same order on every platform.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..n {
                let ri = row[i];
                if ri == 0.0 {
                    continue;
                }
                let gi = &mut g.data[i * n..(i + 1) * n];
                for j in i..n {
                    gi[j] += ri * row[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                g.data[i * n + j] = g.data[j * n + i];
            }
        }
        g
    }

    /// `selfᵀ · v`.
    pub fn transpose_matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.rows, v.len())?;
        let mut out = vec![0.0; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            for (o, &h) in out.iter_mut().zip(self.row(r)) {
                *o += h * vr;
            }
        }
        Ok(out)
    }

    pub fn add_diagonal(&mut self, shift: f64) {
        for i in 0..self.rows.min(self.cols) {
            self[(i, i)] += shift;
        }
    }

    /// Largest `|a_ij - a_ji|`, with its location.
    pub fn asymmetry(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let gap = (self[(i, j)] - self[(j, i)]).abs();
                if gap > worst.2 {
                    worst = (i, j, gap);
                }
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub fn dot(x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(x.len(), y.len())?;
    Ok(dot_unchecked(x, y))
}

pub(crate) fn dot_unchecked(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot_unchecked(x, x).sqrt()
}

pub fn matvec(a: &Matrix, x: &[f64]) -> Result<Vec<f64>> {
    let mut out = vec![0.0; a.rows()];
    matvec_into(a, x, &mut out)?;
    Ok(out)
}

pub fn matvec_into(a: &Matrix, x: &[f64], out: &mut [f64]) -> Result<()> {
    check_len(a.cols(), x.len())?;
    check_len(a.rows(), out.len())?;
    for (i, o) in out.iter_mut().enumerate() {
        *o = dot_unchecked(a.row(i), x);
    }
    Ok(())
}

/// Solves `a · x = b` for symmetric positive definite `a` via Cholesky.
pub fn cholesky_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "cholesky needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    check_len(n, b.len())?;
    let scale = a.max_abs();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > f64::EPSILON * scale * n as f64) {
            return Err(Error::SingularSystem);
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[(i, k)] * y[k];
        }
        y[i] /= l[(i, i)];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l[(k, i)] * y[k];
        }
        y[i] /= l[(i, i)];
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matvec_is_identity() {
        let x = vec![1.5, -2.0, 3.25];
        assert_eq!(matvec(&Matrix::identity(3), &x).unwrap(), x);
    }

    #[test]
    fn basis_vectors_are_orthogonal() {
        assert_eq!(dot(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn norm_of_ones() {
        let n = 49;
        assert!((norm2(&vec![1.0; n]) - 7.0).abs() < 1e-15);
        assert_eq!(norm2(&[0.0; 4]), 0.0);
    }

    #[test]
    fn mismatched_lengths() {
        assert!(matches!(
            dot(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        ));
        assert!(matvec(&Matrix::identity(2), &[1.0]).is_err());
    }

    #[test]
    fn gram_matches_explicit_product() {
        let h = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, -1.0], vec![0.5, 0.0]]).unwrap();
        let g = h.gram();
        let ht = h.transpose();
        for i in 0..2 {
            for j in 0..2 {
                let e: f64 = (0..3).map(|k| ht[(i, k)] * h[(k, j)]).sum();
                assert!((g[(i, j)] - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cholesky_solves_spd_system() {
        let a = Matrix::from_rows(&[vec![4.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let x = cholesky_solve(&a, &[1.0, 2.0]).unwrap();
        let r = matvec(&a, &x).unwrap();
        assert!((r[0] - 1.0).abs() < 1e-14 && (r[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            cholesky_solve(&a, &[1.0, 1.0]),
            Err(Error::SingularSystem)
        ));
    }
}
