use super::trace::{Algorithm, Recorder, RunOptions, SolverTrace};
use crate::error::{Error, Result};
use crate::linalg::QuadraticProblem;
use crate::sched::{Origin, StepSchedule};

impl Algorithm {
    /// Trace label for GD driven by a schedule of the given origin.
    pub fn for_origin(origin: Origin) -> Self {
        match origin {
            Origin::Chebyshev | Origin::Permuted => Algorithm::Chgd,
            Origin::Learned => Algorithm::Dugd,
            Origin::ConstantOptimal | Origin::Custom => Algorithm::GdConstant,
        }
    }
}

/// Gradient descent `x ← x − γ_t (A x − b)`.
///
/// With `cyclic` the schedule repeats, `γ_t = steps[t mod T]`; otherwise
/// `total_iters` may not exceed `T`.
pub fn run_gd(
    problem: &QuadraticProblem,
    schedule: &StepSchedule,
    x0: &[f64],
    total_iters: usize,
    cyclic: bool,
) -> Result<SolverTrace> {
    run_gd_with(
        problem,
        schedule,
        x0,
        total_iters,
        cyclic,
        RunOptions::default(),
    )
}

pub fn run_gd_with(
    problem: &QuadraticProblem,
    schedule: &StepSchedule,
    x0: &[f64],
    total_iters: usize,
    cyclic: bool,
    options: RunOptions,
) -> Result<SolverTrace> {
    if schedule.is_empty() {
        return Err(Error::ScheduleEmpty);
    }
    if !cyclic && total_iters > schedule.len() {
        return Err(Error::InvalidParams(format!(
            "{total_iters} iterations requested from a non-cyclic schedule of length {}",
            schedule.len()
        )));
    }
    check_dim(problem, x0)?;
    let mut rec = Recorder::new(
        Algorithm::for_origin(schedule.origin()),
        Some(schedule.len()),
        options,
        total_iters,
    );
    let mut x = x0.to_vec();
    let mut g = vec![0.0; x.len()];
    rec.record(0, &x);
    for t in 0..total_iters {
        problem.gradient(&x, &mut g)?;
        let gamma = schedule.cyclic(t);
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi -= gamma * gi;
        }
        rec.record(t + 1, &x);
    }
    Ok(rec.finish())
}

pub(crate) fn check_dim(problem: &QuadraticProblem, x0: &[f64]) -> Result<()> {
    if x0.len() == problem.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: x0.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{generate_gaussian_problem, norm2, Matrix};
    use crate::rng::{gaussian_vec, seeded};
    use crate::sched::{chebyshev_steps, Origin};

    #[test]
    fn zero_start_stays_at_zero() {
        let p = generate_gaussian_problem(6, 12, 0).unwrap();
        let s = chebyshev_steps(3, 0.5, 4.0).unwrap();
        let tr = run_gd(&p, &s, &[0.0; 6], 9, true).unwrap();
        assert_eq!(tr.records.len(), 10);
        assert!(tr.records.iter().all(|r| r.mse == 0.0));
    }

    #[test]
    fn scalar_recursion() {
        let p = QuadraticProblem::from_matrix(Matrix::from_diagonal(&[2.0])).unwrap();
        let s = StepSchedule::new(vec![0.25], 2.0, 2.0, Origin::Custom).unwrap();
        let tr = run_gd(&p, &s, &[1.0], 1, false).unwrap();
        assert_eq!(tr.mse_at(1), Some(0.25));
    }

    #[test]
    fn non_cyclic_overrun_rejected() {
        let p = QuadraticProblem::from_matrix(Matrix::identity(2)).unwrap();
        let s = StepSchedule::new(vec![0.5, 0.5], 1.0, 1.0, Origin::Custom).unwrap();
        assert!(run_gd(&p, &s, &[1.0, 1.0], 3, false).is_err());
        assert!(run_gd(&p, &s, &[1.0], 1, false).is_err());
    }

    #[test]
    fn stride_keeps_last_record() {
        let p = QuadraticProblem::from_matrix(Matrix::identity(2)).unwrap();
        let s = StepSchedule::new(vec![0.5], 1.0, 1.0, Origin::Custom).unwrap();
        let opts = RunOptions {
            stride: 4,
            keep_iterates: true,
        };
        let tr = run_gd_with(&p, &s, &[1.0, 1.0], 10, true, opts).unwrap();
        let ts: Vec<usize> = tr.records.iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0, 4, 8, 10]);
        assert_eq!(tr.iterates().unwrap().len(), 4);
    }

    #[test]
    fn chebyshev_period_contraction_on_gram_problem() {
        let p = generate_gaussian_problem(300, 1200, 11).unwrap();
        let spec = p.spectrum().unwrap();
        let s = chebyshev_steps(15, spec.lambda_min(), spec.lambda_max()).unwrap();
        let upp = s.rho_upper().unwrap();
        let x0 = gaussian_vec(&mut seeded(1), 300, 1.0, 1.0);
        let opts = RunOptions {
            stride: 1,
            keep_iterates: true,
        };
        let tr = run_gd_with(&p, &s, &x0, 30, true, opts).unwrap();
        let m0 = tr.mse_at(0).unwrap();
        assert!(tr.mse_at(30).unwrap() <= upp.powi(4) * m0);
        let its = tr.iterates().unwrap();
        assert!(norm2(&its[30]) <= upp * norm2(&its[15]) * (1.0 + 1e-12));
    }
}
