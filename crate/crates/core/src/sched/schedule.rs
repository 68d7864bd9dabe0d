use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Where a schedule came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Chebyshev,
    ConstantOptimal,
    Learned,
    Permuted,
    Custom,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Chebyshev => "chebyshev",
            Origin::ConstantOptimal => "constant_optimal",
            Origin::Learned => "learned",
            Origin::Permuted => "permuted",
            Origin::Custom => "custom",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Origin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chebyshev" => Origin::Chebyshev,
            "constant_optimal" => Origin::ConstantOptimal,
            "learned" => Origin::Learned,
            "permuted" => Origin::Permuted,
            "custom" => Origin::Custom,
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown schedule origin {other:?}"
                )))
            }
        })
    }
}

/// Finite sequence of positive step sizes `γ_0, …, γ_{T−1}` together with the
/// eigenvalue bounds it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSchedule {
    steps: Vec<f64>,
    lambda_min: f64,
    lambda_max: f64,
    origin: Origin,
}

impl StepSchedule {
    pub fn new(steps: Vec<f64>, lambda_min: f64, lambda_max: f64, origin: Origin) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::ScheduleEmpty);
        }
        if let Some(bad) = steps.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::InvalidParams(format!(
                "step sizes must be positive, got {bad}"
            )));
        }
        Ok(Self {
            steps,
            lambda_min,
            lambda_max,
            origin,
        })
    }

    /// `T` copies of the optimal constant step `2/(λ_min + λ_max)`.
    pub fn constant_optimal(len: usize, lambda_min: f64, lambda_max: f64) -> Result<Self> {
        let gamma = optimal_constant_step(lambda_min, lambda_max);
        Self::new(
            vec![gamma; len],
            lambda_min,
            lambda_max,
            Origin::ConstantOptimal,
        )
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    /// Reciprocals `1/γ_t`; for Chebyshev steps these are the Chebyshev points.
    pub fn reciprocals(&self) -> Vec<f64> {
        self.steps.iter().map(|g| 1.0 / g).collect()
    }

    /// Reorders the steps: entry `t` of the result is `steps[order[t]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: order.len(),
            });
        }
        let mut seen = vec![false; self.len()];
        for &i in order {
            if i >= self.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParams(format!(
                    "{order:?} is not a permutation"
                )));
            }
        }
        let steps = order.iter().map(|&i| self.steps[i]).collect();
        Ok(Self {
            steps,
            origin: Origin::Permuted,
            ..*self
        })
    }

    pub fn ascending(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.sort_by(f64::total_cmp);
        Self { steps, ..*self }
    }

    pub fn descending(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.sort_by(|a, b| b.total_cmp(a));
        Self { steps, ..*self }
    }

    /// Step to use at iteration `t` when the schedule is repeated cyclically.
    pub fn cyclic(&self, t: usize) -> f64 {
        self.steps[t % self.steps.len()]
    }

    /// Writes the schedule file: a `T lambda_min lambda_max origin` header and
    /// one step per line, all reals as `{:.16e}`.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "{} {:.16e} {:.16e} {}",
            self.len(),
            self.lambda_min,
            self.lambda_max,
            self.origin
        )?;
        for g in &self.steps {
            writeln!(out, "{g:.16e}")?;
        }
        Ok(())
    }

    /// Reads a schedule file. Blank lines and `#` comment lines are skipped.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, f64, f64, Origin)> = None;
        let mut steps = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: lineno,
                message,
            };
            if header.is_none() {
                let parts: Vec<&str> = body.split_whitespace().collect();
                if parts.len() != 4 {
                    return Err(perr(
                        "header must be `T lambda_min lambda_max origin`".into(),
                    ));
                }
                let t = parts[0]
                    .parse()
                    .map_err(|_| perr(format!("bad length {:?}", parts[0])))?;
                let lo = parts[1]
                    .parse()
                    .map_err(|_| perr(format!("bad lambda_min {:?}", parts[1])))?;
                let hi = parts[2]
                    .parse()
                    .map_err(|_| perr(format!("bad lambda_max {:?}", parts[2])))?;
                let origin = parts[3].parse().map_err(|e: Error| perr(e.to_string()))?;
                header = Some((t, lo, hi, origin));
            } else {
                steps.push(
                    body.parse::<f64>()
                        .map_err(|_| perr(format!("bad step {body:?}")))?,
                );
            }
        }
        let (t, lo, hi, origin) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing schedule header".into(),
        })?;
        if steps.len() != t {
            return Err(Error::DimensionMismatch {
                expected: t,
                found: steps.len(),
            });
        }
        Self::new(steps, lo, hi, origin)
    }
}

/// `2/(λ_min + λ_max)`, the constant step minimizing the one-step spectral
/// radius.
pub fn optimal_constant_step(lambda_min: f64, lambda_max: f64) -> f64 {
    2.0 / (lambda_min + lambda_max)
}

/// Chebyshev steps of length `len` for the interval `[lambda_min, lambda_max]`:
///
/// `γ_t = [ (λ_max+λ_min)/2 + (λ_max−λ_min)/2 · cos((2t+1)π/(2T)) ]⁻¹`,
///
/// emitted in natural order `t = 0..T−1`, i.e. ascending. The reciprocals are
/// the zeros of the Chebyshev polynomial of degree `T` shifted to the
/// interval, so the schedule minimizes `max_λ |∏(1 − γ_t λ)|` over it.
pub fn chebyshev_steps(len: usize, lambda_min: f64, lambda_max: f64) -> Result<StepSchedule> {
    check_interval(lambda_min, lambda_max)?;
    if len == 0 {
        return Err(Error::ScheduleEmpty);
    }
    let mid = 0.5 * (lambda_max + lambda_min);
    let half = 0.5 * (lambda_max - lambda_min);
    let steps = (0..len)
        .map(|t| 1.0 / (mid + half * chebyshev_node(t, len)))
        .collect();
    StepSchedule::new(steps, lambda_min, lambda_max, Origin::Chebyshev)
}

/// `cos((2t+1)π/(2T))`, evaluated so that mirrored nodes are exact negatives
/// and the middle node of an odd-length set is exactly zero.
fn chebyshev_node(t: usize, len: usize) -> f64 {
    let k = 2 * t + 1;
    let angle = |k: usize| k as f64 * std::f64::consts::PI / (2 * len) as f64;
    match k.cmp(&len) {
        std::cmp::Ordering::Less => angle(k).cos(),
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Greater => -angle(2 * len - k).cos(),
    }
}

pub(crate) fn check_interval(lambda_min: f64, lambda_max: f64) -> Result<()> {
    if lambda_min > 0.0 && lambda_min < lambda_max && lambda_max.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateSpectrum {
            lambda_min,
            lambda_max,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step_is_optimal_constant() {
        let s = chebyshev_steps(1, 1.0, 9.0).unwrap();
        assert_eq!(s.steps(), &[0.2]);
    }

    #[test]
    fn seven_steps_for_fig_parameters() {
        let s = chebyshev_steps(7, 1.0, 9.0).unwrap();
        for (t, z) in s.reciprocals().iter().enumerate() {
            let expected = 5.0 + 4.0 * ((2 * t + 1) as f64 * std::f64::consts::PI / 14.0).cos();
            assert!((z - expected).abs() < 1e-13);
        }
        assert!(s.steps().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn two_steps_exact_radicals() {
        let s = chebyshev_steps(2, 1.0, 9.0).unwrap();
        let r2 = 2.0_f64.sqrt();
        assert!((s.steps()[0] - 1.0 / (5.0 + 2.0 * r2)).abs() < 1e-15);
        assert!((s.steps()[1] - 1.0 / (5.0 - 2.0 * r2)).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_symmetry_up_to_64() {
        for len in 1..=64 {
            let s = chebyshev_steps(len, 0.3, 17.0).unwrap();
            let z = s.reciprocals();
            for t in 0..len {
                assert!(
                    (z[t] + z[len - 1 - t] - 17.3).abs() < 1e-12,
                    "T={len} t={t}"
                );
                assert!(z[t] > 0.3 && z[t] < 17.0);
            }
        }
    }

    #[test]
    fn degenerate_interval() {
        assert!(matches!(
            chebyshev_steps(3, 2.0, 2.0),
            Err(Error::DegenerateSpectrum { .. })
        ));
        assert!(chebyshev_steps(3, 0.0, 2.0).is_err());
        assert!(matches!(
            chebyshev_steps(0, 1.0, 2.0),
            Err(Error::ScheduleEmpty)
        ));
    }

    #[test]
    fn constant_step_values() {
        assert_eq!(optimal_constant_step(1.0, 9.0), 0.2);
        assert_eq!(optimal_constant_step(4.0, 4.0), 0.25);
        assert_eq!(optimal_constant_step(1.0, 3.0), 0.5);
    }

    #[test]
    fn file_round_trip_with_comment() {
        let s = chebyshev_steps(5, 1.0, 9.0).unwrap();
        let mut buf = Vec::new();
        s.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("5 1.0000000000000000e0 9.0000000000000000e0 chebyshev\n"));
        buf.extend_from_slice(b"# permutation a=1 b=1 c=0 objective=1\n");
        assert_eq!(StepSchedule::read_from(buf.as_slice()).unwrap(), s);
    }

    #[test]
    fn file_length_mismatch() {
        let text = "2 1 9 custom\n0.1\n";
        assert!(matches!(
            StepSchedule::read_from(text.as_bytes()),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn permutation_validation() {
        let s = chebyshev_steps(3, 1.0, 9.0).unwrap();
        let p = s.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.steps()[0], s.steps()[2]);
        assert_eq!(p.origin(), Origin::Permuted);
        assert!(s.permuted(&[0, 0, 1]).is_err());
        assert!(s.permuted(&[0, 1]).is_err());
    }
}
