use super::train::TrainState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamParams {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// One bias-corrected Adam update of `state.gammas`.
pub fn adam_step(state: &mut TrainState, grad: &[f64], lr: f64, params: &AdamParams) -> Result<()> {
    if grad.len() != state.gammas.len() {
        return Err(Error::DimensionMismatch {
            expected: state.gammas.len(),
            found: grad.len(),
        });
    }
    state.adam_step += 1;
    let k = state.adam_step as i32;
    let c1 = 1.0 - params.beta1.powi(k);
    let c2 = 1.0 - params.beta2.powi(k);
    for (i, &g) in grad.iter().enumerate() {
        let m = &mut state.adam_m[i];
        let v = &mut state.adam_v[i];
        *m = params.beta1 * *m + (1.0 - params.beta1) * g;
        *v = params.beta2 * *v + (1.0 - params.beta2) * g * g;
        let m_hat = *m / c1;
        let v_hat = *v / c2;
        state.gammas[i] -= lr * m_hat / (v_hat.sqrt() + params.eps);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(gammas: &[f64]) -> TrainState {
        let mut s = TrainState::new();
        for &g in gammas {
            s.grow(g);
        }
        s
    }

    #[test]
    fn zero_gradient_keeps_parameters() {
        let mut s = state(&[0.3, 0.5]);
        adam_step(&mut s, &[0.0, 0.0], 0.1, &AdamParams::default()).unwrap();
        assert_eq!(s.gammas, vec![0.3, 0.5]);
        assert_eq!(s.adam_step, 1);
    }

    #[test]
    fn first_step_moves_by_learning_rate() {
        let mut s = state(&[0.3, 0.3, 0.3]);
        adam_step(&mut s, &[2.0, -1e-3, 50.0], 0.01, &AdamParams::default()).unwrap();
        let moves: Vec<f64> = s.gammas.iter().map(|g| g - 0.3).collect();
        assert!((moves[0] + 0.01).abs() < 1e-9);
        assert!((moves[1] - 0.01).abs() < 1e-7);
        assert!((moves[2] + 0.01).abs() < 1e-9);
    }

    #[test]
    fn two_steps_on_a_quadratic() {
        // f(x) = x², x0 = 1, lr = 0.1. Hand computation:
        // step 1: g = 2, m = 0.2, v = 0.004, m̂ = 2, v̂ = 4, x = 1 − 0.1·2/(2 + 1e-8)
        // step 2: g = 2x, m = 0.18 + 0.1g, v = 0.003996 + 0.001g², bias corrections
        //         1 − 0.81 = 0.19 and 1 − 0.998001 = 0.001999.
        let p = AdamParams::default();
        let mut s = state(&[1.0]);
        adam_step(&mut s, &[2.0], 0.1, &p).unwrap();
        let x1 = 1.0 - 0.1 * 2.0 / (2.0 + 1e-8);
        assert!((s.gammas[0] - x1).abs() < 1e-15);
        let g2 = 2.0 * x1;
        adam_step(&mut s, &[g2], 0.1, &p).unwrap();
        let m2 = 0.9 * 0.2 + 0.1 * g2;
        let v2 = 0.999 * 0.004 + 0.001 * g2 * g2;
        let x2 = x1 - 0.1 * (m2 / 0.19) / ((v2 / 0.001_999).sqrt() + 1e-8);
        assert!((s.gammas[0] - x2).abs() < 1e-14, "{} vs {x2}", s.gammas[0]);
    }

    #[test]
    fn misaligned_gradient_rejected() {
        let mut s = state(&[0.3]);
        assert!(adam_step(&mut s, &[1.0, 2.0], 0.1, &AdamParams::default()).is_err());
    }
}
