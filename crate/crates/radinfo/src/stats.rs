//! Monte Carlo reduction helpers and log-log rate fitting.
//!
//! Reductions run in a fixed order independent of thread scheduling, so a
//! fixed seed gives bit-stable results.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use rayon::prelude::*;

/// Compensated (Kahan) sum, used for all fixed-order reductions.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Sample mean and standard error of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

impl McEstimate {
    /// Two-pass mean/SE in a fixed order.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n >= 2, "need at least two samples");
        let mean = kahan_sum(samples.iter().copied()) / n as f64;
        let ss = kahan_sum(samples.iter().map(|x| (x - mean) * (x - mean)));
        let var = ss / (n - 1) as f64;
        McEstimate {
            mean,
            std_error: (var / n as f64).sqrt(),
            trials: n,
        }
    }

    /// Sample variance implied by the stored standard error.
    pub fn sample_variance(&self) -> f64 {
        self.std_error * self.std_error * self.trials as f64
    }
}

/// Run `trials` independent evaluations of `f`, one stream per trial, in
/// parallel, and reduce in trial order.
pub fn mc_run<F>(base: RngStream, trials: usize, f: F) -> Vec<f64>
where
    F: Fn(RngStream) -> f64 + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(base.trial(t as u32)))
        .collect()
}

/// Like [`mc_run`] but each trial yields several statistics at once.
pub fn mc_run_multi<F>(base: RngStream, trials: usize, width: usize, f: F) -> Vec<Vec<f64>>
where
    F: Fn(RngStream) -> Vec<f64> + Sync,
{
    let rows: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| f(base.trial(t as u32)))
        .collect();
    // transpose into one sample vector per statistic
    let mut cols = vec![Vec::with_capacity(trials); width];
    for row in &rows {
        assert_eq!(row.len(), width);
        for (j, v) in row.iter().enumerate() {
            cols[j].push(*v);
        }
    }
    cols
}

pub fn mc_estimate<F>(base: RngStream, trials: usize, f: F) -> McEstimate
where
    F: Fn(RngStream) -> f64 + Sync,
{
    McEstimate::from_samples(&mc_run(base, trials, f))
}

/// Abscissa transform for rate fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XTransform {
    /// x = log n
    LogN,
    /// x = log(n / log n)
    LogNOverLogN,
}

impl XTransform {
    pub fn apply(&self, n: f64) -> f64 {
        match self {
            XTransform::LogN => n.ln(),
            XTransform::LogNOverLogN => (n / n.ln()).ln(),
        }
    }
}

/// Ordinary least squares fit of log(estimate) against a transformed log n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub x_transform: XTransform,
}

/// Fit `estimate ~ c * x^slope` on `(n, estimate)` rows.
///
/// Requires at least 4 rows and strictly positive estimates.
pub fn fit_rate(rows: &[(f64, f64)], x_transform: XTransform) -> Result<RateFit> {
    if rows.len() < 4 {
        return Err(Error::InvalidParam(format!(
            "rate fit needs at least 4 rows, got {}",
            rows.len()
        )));
    }
    if rows.iter().any(|&(n, e)| !(n > 1.0) || !(e > 0.0)) {
        return Err(Error::InvalidParam(
            "rate fit needs n > 1 and positive estimates".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(n, e)| (x_transform.apply(n), e.ln()))
        .collect();
    let m = pts.len() as f64;
    let sx = kahan_sum(pts.iter().map(|p| p.0));
    let sy = kahan_sum(pts.iter().map(|p| p.1));
    let xbar = sx / m;
    let ybar = sy / m;
    let sxx = kahan_sum(pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)));
    let sxy = kahan_sum(pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)));
    let syy = kahan_sum(pts.iter().map(|p| (p.1 - ybar) * (p.1 - ybar)));
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        x_transform,
    })
}
