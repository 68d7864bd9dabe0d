//! The unrolled map `x^(T) = ∏_{t=T−1..0} (I − γ_t A) x^(0)` and the exact
//! gradient of its batch MSE with respect to the steps.

use super::batch::Batch;
use crate::error::{Error, Result};
use crate::linalg::QuadraticProblem;

/// Forward pass of the unrolled GD over a batch.
#[derive(Debug, Clone)]
pub struct Unrolled {
    /// `x^(0), …, x^(T)`.
    states: Vec<Batch>,
    /// `A x^(0), …, A x^(T−1)`.
    applied: Vec<Batch>,
}

impl Unrolled {
    pub fn len(&self) -> usize {
        self.applied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.applied.is_empty()
    }

    pub fn output(&self) -> &Batch {
        self.states
            .last()
            .expect("forward pass keeps the initial batch")
    }

    pub fn intermediates(&self) -> &[Batch] {
        &self.states
    }
}

pub fn forward_unrolled(
    problem: &QuadraticProblem,
    gammas: &[f64],
    x0: &Batch,
) -> Result<Unrolled> {
    check(problem, gammas, x0)?;
    let mut states = Vec::with_capacity(gammas.len() + 1);
    let mut applied = Vec::with_capacity(gammas.len());
    states.push(x0.clone());
    for &g in gammas {
        let x = states.last().expect("nonempty");
        let mut ax = Batch::zeros(x.dim(), x.size());
        x.apply_into(problem.matrix(), &mut ax);
        let mut next = x.clone();
        next.sub_scaled(g, &ax);
        states.push(next);
        applied.push(ax);
    }
    Ok(Unrolled { states, applied })
}

/// Output of the unrolled map without keeping intermediates.
pub fn propagate(problem: &QuadraticProblem, gammas: &[f64], x0: &Batch) -> Result<Batch> {
    check(problem, gammas, x0)?;
    let mut x = x0.clone();
    let mut ax = Batch::zeros(x0.dim(), x0.size());
    for &g in gammas {
        x.apply_into(problem.matrix(), &mut ax);
        x.sub_scaled(g, &ax);
    }
    Ok(x)
}

/// Batch mean of `‖x‖²/n` (the reference point is the origin).
pub fn loss_mse(outputs: &Batch) -> f64 {
    let count = (outputs.dim() * outputs.size()).max(1) as f64;
    outputs.sum_squares() / count
}

/// `∂L/∂γ_t = −(2/n) · mean_k ⟨b^(t+1)_k, A x^(t)_k⟩`, where the adjoint
/// `b^(T) = x^(T)` is pulled back by `b^(t) = (I − γ_t A) b^(t+1)`.
pub fn grad_gammas(
    problem: &QuadraticProblem,
    gammas: &[f64],
    forward: &Unrolled,
) -> Result<Vec<f64>> {
    if gammas.len() != forward.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} steps for a forward pass of length {}",
            gammas.len(),
            forward.len()
        )));
    }
    let out = forward.output();
    let scale = -2.0 / (out.dim() * out.size()).max(1) as f64;
    let mut grad = vec![0.0; gammas.len()];
    let mut back = out.clone();
    let mut ab = Batch::zeros(out.dim(), out.size());
    for t in (0..gammas.len()).rev() {
        grad[t] = scale * back.inner(&forward.applied[t]);
        if t > 0 {
            back.apply_into(problem.matrix(), &mut ab);
            back.sub_scaled(gammas[t], &ab);
        }
    }
    Ok(grad)
}

pub fn loss_and_grad(
    problem: &QuadraticProblem,
    gammas: &[f64],
    x0: &Batch,
) -> Result<(f64, Vec<f64>)> {
    let fwd = forward_unrolled(problem, gammas, x0)?;
    let grad = grad_gammas(problem, gammas, &fwd)?;
    Ok((loss_mse(fwd.output()), grad))
}

fn check(problem: &QuadraticProblem, gammas: &[f64], x0: &Batch) -> Result<()> {
    if gammas.is_empty() {
        return Err(Error::ScheduleEmpty);
    }
    if x0.dim() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: x0.dim(),
        });
    }
    Ok(())
}
