use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    GdConstant,
    Chgd,
    Dugd,
    Momentum,
    ChebSemi,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::GdConstant,
        Algorithm::Chgd,
        Algorithm::Dugd,
        Algorithm::Momentum,
        Algorithm::ChebSemi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::GdConstant => "GDConstant",
            Algorithm::Chgd => "CHGD",
            Algorithm::Dugd => "DUGD",
            Algorithm::Momentum => "Momentum",
            Algorithm::ChebSemi => "ChebSemi",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts the display names and the short CLI aliases
    /// `gd`, `chgd`, `dugd`, `mom`, `semi` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gd" | "gdconstant" => Algorithm::GdConstant,
            "chgd" => Algorithm::Chgd,
            "dugd" => Algorithm::Dugd,
            "mom" | "momentum" => Algorithm::Momentum,
            "semi" | "chebsemi" | "ch-semi" => Algorithm::ChebSemi,
            other => return Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: usize,
    pub mse: f64,
}

/// Per-iteration MSE of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace {
    pub algorithm: Algorithm,
    pub records: Vec<TraceRecord>,
    pub schedule_period: Option<usize>,
    iterates: Option<Vec<Vec<f64>>>,
}

/// Recording options shared by all solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Record every `stride`-th iteration (the final iteration is always kept).
    pub stride: usize,
    /// Keep the recorded iterates so the trace can be re-measured later with
    /// [`mse_against`].
    pub keep_iterates: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            stride: 1,
            keep_iterates: false,
        }
    }
}

impl SolverTrace {
    pub fn new(algorithm: Algorithm, schedule_period: Option<usize>) -> Self {
        Self {
            algorithm,
            records: Vec::new(),
            schedule_period,
            iterates: None,
        }
    }

    pub fn iterates(&self) -> Option<&[Vec<f64>]> {
        self.iterates.as_deref()
    }

    pub fn mse_at(&self, t: usize) -> Option<f64> {
        self.records
            .binary_search_by_key(&t, |r| r.t)
            .ok()
            .map(|i| self.records[i].mse)
    }

    pub fn last(&self) -> Option<TraceRecord> {
        self.records.last().copied()
    }

    /// First recorded iteration with `mse ≤ threshold`.
    pub fn first_below(&self, threshold: f64) -> Option<usize> {
        self.records
            .iter()
            .find(|r| r.mse <= threshold)
            .map(|r| r.t)
    }

    /// Least-squares slope of `ln(mse)` against `t` over the records with
    /// `from ≤ t ≤ to`, keeping only `t` divisible by `every`.
    pub fn log_slope(&self, from: usize, to: usize, every: usize) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .records
            .iter()
            .filter(|r| r.t >= from && r.t <= to && r.t % every.max(1) == 0 && r.mse > 0.0)
            .map(|r| (r.t as f64, r.mse.ln()))
            .collect();
        least_squares_slope(&pts)
    }

    /// Record-wise mean of traces sharing the same iteration grid, summed in
    /// the given order.
    pub fn mean(traces: &[SolverTrace]) -> Result<SolverTrace> {
        let first = traces
            .first()
            .ok_or_else(|| Error::InvalidParams("mean of zero traces".into()))?;
        let mut out = SolverTrace::new(first.algorithm, first.schedule_period);
        out.records = first.records.clone();
        for tr in &traces[1..] {
            if tr.records.len() != out.records.len() {
                return Err(Error::DimensionMismatch {
                    expected: out.records.len(),
                    found: tr.records.len(),
                });
            }
            for (acc, r) in out.records.iter_mut().zip(&tr.records) {
                acc.mse += r.mse;
            }
        }
        let k = traces.len() as f64;
        out.records.iter_mut().for_each(|r| r.mse /= k);
        Ok(out)
    }
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub(crate) struct Recorder {
    trace: SolverTrace,
    options: RunOptions,
    total: usize,
}

impl Recorder {
    pub(crate) fn new(
        algorithm: Algorithm,
        period: Option<usize>,
        options: RunOptions,
        total: usize,
    ) -> Self {
        let mut trace = SolverTrace::new(algorithm, period);
        if options.keep_iterates {
            trace.iterates = Some(Vec::new());
        }
        Self {
            trace,
            options,
            total,
        }
    }

    pub(crate) fn record(&mut self, t: usize, x: &[f64]) {
        if t % self.options.stride.max(1) != 0 && t != self.total {
            return;
        }
        self.trace.records.push(TraceRecord {
            t,
            mse: mse(x, None),
        });
        if let Some(its) = self.trace.iterates.as_mut() {
            its.push(x.to_vec());
        }
    }

    pub(crate) fn finish(self) -> SolverTrace {
        self.trace
    }
}

fn mse(x: &[f64], reference: Option<&[f64]>) -> f64 {
    let n = x.len().max(1) as f64;
    match reference {
        None => x.iter().map(|v| v * v).sum::<f64>() / n,
        Some(r) => x.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / n,
    }
}

/// Re-measures a trace against `reference` instead of the origin.
///
/// Needs the recorded iterates unless the trace is empty or the reference is
/// the zero vector, in which case the trace is returned unchanged.
pub fn mse_against(trace: &SolverTrace, reference: &[f64]) -> Result<SolverTrace> {
    let Some(iterates) = trace.iterates.as_ref() else {
        if trace.records.is_empty() || reference.iter().all(|&v| v == 0.0) {
            return Ok(trace.clone());
        }
        return Err(Error::IteratesNotRecorded);
    };
    let mut out = trace.clone();
    for (rec, x) in out.records.iter_mut().zip(iterates) {
        if x.len() != reference.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: reference.len(),
            });
        }
        rec.mse = mse(x, Some(reference));
    }
    Ok(out)
}

/// CSV with header `algorithm,t,mse`; MSE written as `{:.16e}`.
pub fn write_traces_csv<W: Write>(traces: &[SolverTrace], mut out: W) -> Result<()> {
    writeln!(out, "algorithm,t,mse")?;
    for tr in traces {
        for r in &tr.records {
            writeln!(out, "{},{},{:.16e}", tr.algorithm, r.t, r.mse)?;
        }
    }
    Ok(())
}
