use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::standard_normal;

/// Distribution of the initial error `x^(0) − x_opt` of training samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitDistribution {
    /// i.i.d. `N(1, 1)` entries.
    #[default]
    GaussianUnitMeanUnitVar,
    /// i.i.d. `N(0, 1)` entries: the error seen when GD starts from the
    /// origin and the solution has standard Gaussian entries.
    ZeroStart,
}

impl InitDistribution {
    pub fn mean(self) -> f64 {
        match self {
            InitDistribution::GaussianUnitMeanUnitVar => 1.0,
            InitDistribution::ZeroStart => 0.0,
        }
    }
}

/// A batch of `size` vectors of length `dim`, stored component-major:
/// entry `i` of sample `k` is at `i * size + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    dim: usize,
    size: usize,
    data: Vec<f64>,
}

impl Batch {
    pub fn zeros(dim: usize, size: usize) -> Self {
        Self {
            dim,
            size,
            data: vec![0.0; dim * size],
        }
    }

    pub fn from_samples(samples: &[Vec<f64>]) -> Result<Self> {
        let dim = samples
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::ShapeMismatch("empty batch".into()))?;
        let size = samples.len();
        let mut batch = Self::zeros(dim, size);
        for (k, s) in samples.iter().enumerate() {
            if s.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "sample {k} has length {}, expected {dim}",
                    s.len()
                )));
            }
            for (i, &v) in s.iter().enumerate() {
                batch.data[i * size + k] = v;
            }
        }
        Ok(batch)
    }

    /// Draws `size` samples one after another, each as `dim` consecutive
    /// variates from `rng`.
    pub fn sample<R: Rng + ?Sized>(
        rng: &mut R,
        dim: usize,
        size: usize,
        init: InitDistribution,
    ) -> Self {
        let mean = init.mean();
        let mut batch = Self::zeros(dim, size);
        for k in 0..size {
            for i in 0..dim {
                batch.data[i * size + k] = mean + standard_normal(rng);
            }
        }
        batch
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, k: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.data[i * self.size + k])
            .collect()
    }

    pub fn to_samples(&self) -> Vec<Vec<f64>> {
        (0..self.size).map(|k| self.get(k)).collect()
    }

    pub fn sum_squares(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// `Σ_k ⟨self_k, other_k⟩`.
    pub(crate) fn inner(&self, other: &Batch) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// `self −= gamma · other`.
    pub(crate) fn sub_scaled(&mut self, gamma: f64, other: &Batch) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x -= gamma * y;
        }
    }

    /// `out = A·self` for every sample, four columns of `A` per pass.
    pub(crate) fn apply_into(&self, a: &Matrix, out: &mut Batch) {
        let (n, b) = (self.dim, self.size);
        let x = &self.data;
        out.data.fill(0.0);
        for i in 0..n {
            let row = &mut out.data[i * b..(i + 1) * b];
            let arow = a.row(i);
            let mut j = 0;
            while j + 4 <= n {
                let (a0, a1, a2, a3) = (arow[j], arow[j + 1], arow[j + 2], arow[j + 3]);
                let x0 = &x[j * b..(j + 1) * b];
                let x1 = &x[(j + 1) * b..(j + 2) * b];
                let x2 = &x[(j + 2) * b..(j + 3) * b];
                let x3 = &x[(j + 3) * b..(j + 4) * b];
                for k in 0..b {
                    row[k] += (a0 * x0[k] + a1 * x1[k]) + (a2 * x2[k] + a3 * x3[k]);
                }
                j += 4;
            }
            for (jj, &aij) in arow.iter().enumerate().skip(j) {
                for (o, v) in row.iter_mut().zip(&x[jj * b..(jj + 1) * b]) {
                    *o += aij * v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matvec;
    use crate::rng::{gaussian_vec, seeded};

    #[test]
    fn layout_round_trip() {
        let s = vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]];
        let b = Batch::from_samples(&s).unwrap();
        assert_eq!(b.data, vec![1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
        assert_eq!(b.to_samples(), s);
        assert!(Batch::from_samples(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(Batch::from_samples(&[]).is_err());
    }

    #[test]
    fn sampling_matches_per_sample_draws() {
        let b = Batch::sample(
            &mut seeded(9),
            5,
            3,
            InitDistribution::GaussianUnitMeanUnitVar,
        );
        let mut rng = seeded(9);
        for k in 0..3 {
            assert_eq!(b.get(k), gaussian_vec(&mut rng, 5, 1.0, 1.0));
        }
    }

    #[test]
    fn batched_product_matches_matvec() {
        let p = crate::linalg::generate_gaussian_problem(7, 10, 1).unwrap();
        let a = p.matrix();
        let s: Vec<Vec<f64>> = (0..3)
            .map(|k| gaussian_vec(&mut seeded(k), 7, 0.0, 1.0))
            .collect();
        let b = Batch::from_samples(&s).unwrap();
        let mut out = Batch::zeros(7, 3);
        b.apply_into(a, &mut out);
        for (k, x) in s.iter().enumerate() {
            for (u, v) in out.get(k).iter().zip(matvec(a, x).unwrap()) {
                assert!((u - v).abs() <= 1e-15 * v.abs().max(1.0));
            }
        }
    }
}
