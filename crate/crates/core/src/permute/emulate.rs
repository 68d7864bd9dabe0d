use crate::error::{Error, Result};
use crate::sched::{chebyshev_steps, optimal_constant_step, Origin, StepSchedule};

/// Largest `T` accepted by [`emulate_incremental`].
pub const EMULATION_CAP: usize = 12;

/// Emulates the step order produced by incremental training.
///
/// Starting from the single optimal constant step, each generation appends
/// `init` to the previous ordered steps and reorders the Chebyshev steps of
/// the new length to be closest (Euclidean) to that point. Every permutation
/// is examined in lexicographic order, with branch-and-bound pruning; the
/// first minimizer wins.
pub fn emulate_incremental(
    lambda_min: f64,
    lambda_max: f64,
    len: usize,
    init: f64,
) -> Result<StepSchedule> {
    if len == 0 {
        return Err(Error::ScheduleEmpty);
    }
    if len > EMULATION_CAP {
        return Err(Error::SizeLimitExceeded {
            len,
            cap: EMULATION_CAP,
        });
    }
    let mut current = vec![optimal_constant_step(lambda_min, lambda_max)];
    for t in 2..=len {
        let mut target = current.clone();
        target.push(init);
        let cheb = chebyshev_steps(t, lambda_min, lambda_max)?;
        let order = closest_permutation(&target, cheb.steps());
        current = order.iter().map(|&i| cheb.steps()[i]).collect();
    }
    StepSchedule::new(current, lambda_min, lambda_max, Origin::Permuted)
}

/// `π` minimizing `Σ_i (target_i − values_{π(i)})²`, first in lexicographic
/// order among minimizers.
pub(crate) fn closest_permutation(target: &[f64], values: &[f64]) -> Vec<usize> {
    let mut search = Search {
        target,
        values,
        used: vec![false; values.len()],
        path: Vec::with_capacity(values.len()),
        best: f64::INFINITY,
        best_path: Vec::new(),
    };
    search.descend(0.0);
    search.best_path
}

struct Search<'a> {
    target: &'a [f64],
    values: &'a [f64],
    used: Vec<bool>,
    path: Vec<usize>,
    best: f64,
    best_path: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, partial: f64) {
        let depth = self.path.len();
        if depth == self.values.len() {
            if partial < self.best {
                self.best = partial;
                self.best_path = self.path.clone();
            }
            return;
        }
        if partial + self.remaining_bound(depth) > self.best * (1.0 + 1e-12) {
            return;
        }
        for i in 0..self.values.len() {
            if self.used[i] {
                continue;
            }
            let d = self.target[depth] - self.values[i];
            self.used[i] = true;
            self.path.push(i);
            self.descend(partial + d * d);
            self.path.pop();
            self.used[i] = false;
        }
    }

    /// Least possible cost of the unassigned positions: sorted matching of
    /// the remaining targets and values.
    fn remaining_bound(&self, depth: usize) -> f64 {
        let mut t: Vec<f64> = self.target[depth..].to_vec();
        let mut v: Vec<f64> = (0..self.values.len())
            .filter(|&i| !self.used[i])
            .map(|i| self.values[i])
            .collect();
        t.sort_by(f64::total_cmp);
        v.sort_by(f64::total_cmp);
        t.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum()
    }
}
