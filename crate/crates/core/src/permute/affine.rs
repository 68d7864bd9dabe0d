use crate::error::{Error, Result};
use crate::sched::{chebyshev_steps, prefix_interval_maxima, StepSchedule};

/// Index sequence `π(0) = c`, `π(t+1) ≡ a·π(t) + b (mod T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePermutation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    order: Vec<usize>,
}

impl AffinePermutation {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Builds the permutation for `T = 2^s` (`s ≥ 1`), `a ≡ 1 (mod 4)`, odd `b`,
/// `1 ≤ a, b ≤ T − 1` and `0 ≤ c ≤ T − 1`.
pub fn affine_permutation(a: usize, b: usize, c: usize, len: usize) -> Result<AffinePermutation> {
    check_power_of_two(len)?;
    if a % 4 != 1 || a >= len {
        return Err(Error::InvalidParams(format!(
            "a = {a} must satisfy a ≡ 1 (mod 4) and a < {len}"
        )));
    }
    if b % 2 != 1 || b >= len {
        return Err(Error::InvalidParams(format!(
            "b = {b} must be odd and below {len}"
        )));
    }
    if c >= len {
        return Err(Error::InvalidParams(format!("c = {c} must be below {len}")));
    }
    let mut order = Vec::with_capacity(len);
    let mut seen = vec![false; len];
    let mut p = c;
    for _ in 0..len {
        if seen[p] {
            return Err(Error::InvalidParams(format!(
                "({a}, {b}, {c}) revisits index {p}"
            )));
        }
        seen[p] = true;
        order.push(p);
        p = (a * p + b) % len;
    }
    Ok(AffinePermutation { a, b, c, order })
}

fn check_power_of_two(len: usize) -> Result<()> {
    if len >= 2 && len.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "length {len} is not a power of two ≥ 2"
        )))
    }
}

/// Largest interval bound over all prefixes of the ordered steps.
pub fn temporal_spectral_radius(steps: &[f64], lambda_min: f64, lambda_max: f64) -> Result<f64> {
    if steps.is_empty() {
        return Err(Error::ScheduleEmpty);
    }
    Ok(prefix_interval_maxima(steps, lambda_min, lambda_max)?
        .into_iter()
        .fold(0.0, f64::max))
}

impl StepSchedule {
    pub fn temporal_spectral_radius(&self) -> Result<f64> {
        temporal_spectral_radius(self.steps(), self.lambda_min(), self.lambda_max())
    }
}

#[derive(Debug, Clone)]
pub struct PermutationSearch {
    pub permutation: AffinePermutation,
    pub schedule: StepSchedule,
    pub objective: f64,
}

/// Objectives within this relative distance count as ties.
const TIE_TOLERANCE: f64 = 1e-12;

/// All admissible triples in lexicographic order.
pub fn admissible_triples(len: usize) -> Result<Vec<(usize, usize, usize)>> {
    check_power_of_two(len)?;
    let mut out = Vec::new();
    for a in (1..len).step_by(4) {
        for b in (1..len).step_by(2) {
            for c in 0..len {
                out.push((a, b, c));
            }
        }
    }
    Ok(out)
}

/// Exhaustive scan of the affine orderings of the Chebyshev steps for
/// `[lambda_min, lambda_max]`, minimizing the temporal spectral radius. Ties
/// go to the lexicographically smallest `(a, b, c)`.
pub fn permutation_search(
    lambda_min: f64,
    lambda_max: f64,
    len: usize,
) -> Result<PermutationSearch> {
    let triples = admissible_triples(len)?;
    let base = chebyshev_steps(len, lambda_min, lambda_max)?;
    let mut best: Option<PermutationSearch> = None;
    for (a, b, c) in triples {
        let permutation = affine_permutation(a, b, c, len)?;
        let schedule = base.permuted(permutation.order())?;
        let objective = schedule.temporal_spectral_radius()?;
        let better = match &best {
            None => true,
            Some(cur) => objective < cur.objective * (1.0 - TIE_TOLERANCE),
        };
        if better {
            best = Some(PermutationSearch {
                permutation,
                schedule,
                objective,
            });
        }
    }
    Ok(best.expect("at least one admissible triple"))
}

/// Temporal spectral radius of the length-`len` Chebyshev steps ordered by
/// `(a, b, c)`.
pub fn triple_objective(
    lambda_min: f64,
    lambda_max: f64,
    len: usize,
    triple: (usize, usize, usize),
) -> Result<f64> {
    let (a, b, c) = triple;
    let permutation = affine_permutation(a, b, c, len)?;
    chebyshev_steps(len, lambda_min, lambda_max)?
        .permuted(permutation.order())?
        .temporal_spectral_radius()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sched::rho_upper_interval;

    #[test]
    fn successor_map() {
        assert_eq!(
            affine_permutation(1, 1, 0, 4).unwrap().order(),
            &[0, 1, 2, 3]
        );
    }

    #[test]
    fn stride_nine_from_seven() {
        let p = affine_permutation(1, 9, 7, 16).unwrap();
        let expected: Vec<usize> = (0..16).map(|t| (7 + 9 * t) % 16).collect();
        assert_eq!(p.order(), expected.as_slice());
        let mut sorted = expected;
        sorted.sort_unstable();
        assert_eq!(sorted, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_parameters() {
        assert!(affine_permutation(2, 1, 0, 8).is_err());
        assert!(affine_permutation(3, 1, 0, 8).is_err());
        assert!(affine_permutation(1, 2, 0, 8).is_err());
        assert!(affine_permutation(1, 1, 8, 8).is_err());
        assert!(affine_permutation(1, 1, 0, 12).is_err());
        assert!(affine_permutation(9, 1, 0, 8).is_err());
        assert!(permutation_search(1.0, 9.0, 6).is_err());
    }

    #[test]
    fn single_step_temporal_radius() {
        let t = temporal_spectral_radius(&[0.2], 1.0, 9.0).unwrap();
        assert_eq!(t, rho_upper_interval(&[0.2], 1.0, 9.0).unwrap());
        assert!(temporal_spectral_radius(&[], 1.0, 9.0).is_err());
    }

    #[test]
    fn two_step_search_enumerates_both_orders() {
        assert_eq!(admissible_triples(2).unwrap(), vec![(1, 1, 0), (1, 1, 1)]);
        let s = permutation_search(1.0, 9.0, 2).unwrap();
        let cheb = chebyshev_steps(2, 1.0, 9.0).unwrap();
        let first = temporal_spectral_radius(cheb.steps(), 1.0, 9.0).unwrap();
        let swapped =
            temporal_spectral_radius(&[cheb.steps()[1], cheb.steps()[0]], 1.0, 9.0).unwrap();
        assert_eq!(s.objective, first.min(swapped));
    }

    #[test]
    fn large_steps_first_blow_up_at_large_kappa() {
        let s = chebyshev_steps(16, 1.0, 1000.0).unwrap();
        assert!(s.descending().temporal_spectral_radius().unwrap() > 1e3);
        assert!(s.ascending().temporal_spectral_radius().unwrap() <= 1.0);
    }

    #[test]
    fn search_beats_sorted_orders() {
        for (kappa, len) in [(4.0, 8), (16.0, 16), (100.0, 16)] {
            let s = permutation_search(1.0, kappa, len).unwrap();
            let cheb = chebyshev_steps(len, 1.0, kappa).unwrap();
            assert!(s.objective <= cheb.ascending().temporal_spectral_radius().unwrap());
            assert!(s.objective <= cheb.descending().temporal_spectral_radius().unwrap());
            assert!(s.objective >= cheb.rho_upper().unwrap() - 1e-12);
        }
    }
}
