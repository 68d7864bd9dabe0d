use rand::Rng;

use super::dense::{matvec_into, Matrix};
use super::eigen::{jacobi_eigenvalues, Spectrum};
use crate::error::{Error, Result};
use crate::rng::{seeded, standard_normal};

/// Convex quadratic `f(x) = ½ xᵀAx − bᵀx` with symmetric positive definite `A`.
///
/// For least squares / ridge problems `A = HᵀH + ηI` and `b = Hᵀy`; the
/// canonical problem has `b = 0` and minimizer `x_opt = 0`.
#[derive(Debug, Clone)]
pub struct QuadraticProblem {
    matrix_a: Matrix,
    factor_h: Option<Matrix>,
    ridge_eta: f64,
    target: Vec<f64>,
}

impl QuadraticProblem {
    /// Wraps a symmetric matrix. Positive definiteness is checked lazily by
    /// [`Spectrum`] construction.
    pub fn from_matrix(a: Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "A must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let (row, col, gap) = a.asymmetry();
        if gap > 1e-12 * a.max_abs() {
            return Err(Error::NotSymmetric { row, col, gap });
        }
        let n = a.rows();
        Ok(Self {
            matrix_a: a,
            factor_h: None,
            ridge_eta: 0.0,
            target: vec![0.0; n],
        })
    }

    /// `A = HᵀH + ηI` with the factor retained.
    pub fn from_factor(h: Matrix, eta: f64) -> Result<Self> {
        if !(eta >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "ridge eta must be >= 0, got {eta}"
            )));
        }
        let mut a = h.gram();
        a.add_diagonal(eta);
        let n = a.rows();
        Ok(Self {
            matrix_a: a,
            factor_h: Some(h),
            ridge_eta: eta,
            target: vec![0.0; n],
        })
    }

    /// Ridge problem `min ½‖y − Hβ‖² + (η/2)‖β‖²`, i.e. `A = HᵀH + ηI`, `b = Hᵀy`.
    pub fn ridge(h: Matrix, y: &[f64], eta: f64) -> Result<Self> {
        let b = h.transpose_matvec(y)?;
        Self::from_factor(h, eta)?.with_target(b)
    }

    pub fn with_target(mut self, target: Vec<f64>) -> Result<Self> {
        if target.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: target.len(),
            });
        }
        self.target = target;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix_a.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix_a
    }

    pub fn factor(&self) -> Option<&Matrix> {
        self.factor_h.as_ref()
    }

    pub fn ridge_eta(&self) -> f64 {
        self.ridge_eta
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn has_zero_target(&self) -> bool {
        self.target.iter().all(|&b| b == 0.0)
    }

    /// `out = A·x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        matvec_into(&self.matrix_a, x, out)
    }

    /// `out = A·x − b`, the gradient of the objective at `x`.
    pub fn gradient(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.apply(x, out)?;
        for (o, b) in out.iter_mut().zip(&self.target) {
            *o -= b;
        }
        Ok(())
    }

    /// Exact spectrum via cyclic Jacobi.
    pub fn spectrum(&self) -> Result<Spectrum> {
        jacobi_eigenvalues(self)
    }
}

/// `A = HᵀH` where `H` is `m×n` with i.i.d. `N(0, 1/n)` entries.
///
/// As `n → ∞` with `m/n` fixed the spectrum of `A` follows the
/// Marchenko–Pastur law on `[(1 − √(m/n))², (1 + √(m/n))²]`.
pub fn generate_gaussian_problem(n: usize, m: usize, seed: u64) -> Result<QuadraticProblem> {
    let mut rng = seeded(seed);
    generate_gaussian_problem_with(n, m, &mut rng)
}

pub fn generate_gaussian_problem_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<QuadraticProblem> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams(format!(
            "n and m must be positive, got n={n}, m={m}"
        )));
    }
    let std = (1.0 / n as f64).sqrt();
    let data = (0..m * n).map(|_| std * standard_normal(rng)).collect();
    let h = Matrix::from_row_major(m, n, data)?;
    QuadraticProblem::from_factor(h, 0.0)
}

/// Asymptotic Marchenko–Pastur edges `((1 − √(m/n))², (1 + √(m/n))²)`.
pub fn marchenko_pastur_edges(n: usize, m: usize) -> (f64, f64) {
    let r = (m as f64 / n as f64).sqrt();
    ((1.0 - r).powi(2), (1.0 + r).powi(2))
}
