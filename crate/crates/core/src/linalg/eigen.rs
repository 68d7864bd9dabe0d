use super::dense::Matrix;
use super::problem::QuadraticProblem;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of the full Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Ascending eigenvalues of a symmetric positive definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Sorts the values and checks they are finite and strictly positive.
    pub fn new(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidParams("spectrum must be nonempty".into()));
        }
        if let Some(&bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite eigenvalue {bad}")));
        }
        eigenvalues.sort_by(f64::total_cmp);
        if eigenvalues[0] <= 0.0 {
            return Err(Error::NotPositiveDefinite(eigenvalues[0]));
        }
        Ok(Self { eigenvalues })
    }

    /// Two-point spectrum `{lambda_min, lambda_max}`.
    pub fn from_bounds(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        Self::new(vec![lambda_min, lambda_max])
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn kappa(&self) -> f64 {
        self.lambda_max() / self.lambda_min()
    }
}

/// Eigenvalues in ascending order; `vectors` (when requested) holds the
/// matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Option<Matrix>,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        let v = self.vectors.as_ref()?;
        Some((0..v.rows()).map(|i| v[(i, k)]).collect())
    }
}

pub fn jacobi_eigenvalues(problem: &QuadraticProblem) -> Result<Spectrum> {
    let eig = jacobi_eigen(problem.matrix(), false, DEFAULT_MAX_SWEEPS)?;
    Spectrum::new(eig.values)
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
pub fn jacobi_eigen(
    a: &Matrix,
    want_vectors: bool,
    max_sweeps: usize,
) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigen-decomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let norm = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..=max_sweeps {
        if off_diagonal_norm(&m) <= OFF_DIAGONAL_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut m, v.as_mut(), p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            method: "jacobi",
            iterations: max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = v.map(|v| {
        let mut sorted = Matrix::zeros(n, n);
        for (k, &col) in order.iter().enumerate() {
            for i in 0..n {
                sorted[(i, k)] = v[(i, col)];
            }
        }
        sorted
    });
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for (j, x) in m.row(i).iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

/// Zeroes `m[p][q]` with the rotation `m ← Jᵀ m J`.
fn rotate(m: &mut Matrix, v: Option<&mut Matrix>, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = m.rows();
    let tau = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = c * vkp - s * vkq;
            v[(k, q)] = s * vkp + c * vkq;
        }
    }
}
