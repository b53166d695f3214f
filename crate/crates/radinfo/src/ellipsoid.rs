//! Circumradius of a centered ellipsoid intersected with the kernel of
//! Gaussian linear information, with regime classification for polynomially
//! decaying semi-axes and the square-summability dichotomy experiment.
//!
//! The circumradius of `{x : sum x_k^2 / sigma_k^2 <= 1}` intersected with
//! `ker G` equals `lambda_min(B^T D^-2 B)^(-1/2)` for an orthonormal kernel
//! basis `B`, or equivalently the square root of the largest eigenvalue of
//! the diagonal operator `D^2` compressed to `ker(G D)`. Small kernels use a
//! dense symmetric eigensolve; large ones use Lanczos on the projected
//! operator, which never forms a large matrix.

use crate::error::{Error, Result};
use crate::estimate::RadiusEstimate;
use crate::linalg::{
    gaussian_matrix, kernel_basis, lanczos_max_eig, orthonormal_complement, orthonormal_range,
};
use crate::rng::RngStream;
use crate::stats::McEstimate;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// Kernel dimensions up to this size take the dense eigensolve path.
const DENSE_KERNEL_CAP: usize = 384;

/// Non-increasing positive semi-axes of a centered ellipsoid.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiAxes {
    sigma: Vec<f64>,
}

impl SemiAxes {
    pub fn new(sigma: Vec<f64>) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::InvalidParam("semi-axes must be nonempty".into()));
        }
        if sigma.iter().any(|s| !s.is_finite() || *s <= 0.0) {
            return Err(Error::InvalidParam("semi-axes must be positive".into()));
        }
        if sigma.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParam("semi-axes must be non-increasing".into()));
        }
        Ok(Self { sigma })
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.sigma
    }

    /// 1-based `sigma_k`, with `sigma_k = 0` for `k > m`.
    pub fn axis(&self, k: usize) -> f64 {
        assert!(k >= 1);
        self.sigma.get(k - 1).copied().unwrap_or(0.0)
    }
}

/// Semi-axis law `sigma_k = constant * k^-alpha * ln^-beta (k+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisLaw {
    pub alpha: f64,
    pub beta: f64,
    pub constant: f64,
}

impl AxisLaw {
    pub fn new(alpha: f64, beta: f64, constant: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(constant > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParam(
                "axis law needs alpha > 0, finite beta, constant > 0".into(),
            ));
        }
        Ok(Self {
            alpha,
            beta,
            constant,
        })
    }

    /// Truncate the law at dimension `m`; fails if the resulting sequence is
    /// not non-increasing (possible for strongly negative beta).
    pub fn semi_axes(&self, m: usize) -> Result<SemiAxes> {
        let sigma = (1..=m)
            .map(|k| {
                self.constant
                    * (k as f64).powf(-self.alpha)
                    * ((k + 1) as f64).ln().powf(-self.beta)
            })
            .collect();
        SemiAxes::new(sigma)
    }

    /// Square-summability of the infinite sequence.
    pub fn is_square_summable(&self) -> bool {
        2.0 * self.alpha > 1.0 || (2.0 * self.alpha == 1.0 && 2.0 * self.beta > 1.0)
    }
}

/// Behaviour of the expected radius of Gaussian information, by axis decay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Expected radius stays at `sigma_1`: random information is useless
    /// below a cutoff `c_m`.
    UselessBelowCm,
    /// Expected radius is `sigma_{n+1} sqrt(ln(n+1))`.
    SqrtLogPenalty,
    /// Expected radius is of the order `sigma_{n+1}`: random information is
    /// as good as optimal.
    OptimalOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimePrediction {
    pub regime: Regime,
    /// Range of measurement counts `n` for which the prediction is stated.
    pub validity_range: &'static str,
}

/// Classify an axis law by `(alpha, beta)`. The absolute constants inside
/// `c_m` are unobservable, so the returned range is symbolic.
pub fn classify_regime(law: &AxisLaw) -> RegimePrediction {
    if law.alpha > 0.5 {
        RegimePrediction {
            regime: Regime::OptimalOrder,
            validity_range: "n < m",
        }
    } else if law.alpha == 0.5 && law.beta > 0.5 {
        RegimePrediction {
            regime: Regime::SqrtLogPenalty,
            validity_range: "n < sqrt(m)",
        }
    } else {
        RegimePrediction {
            regime: Regime::UselessBelowCm,
            validity_range: "n < c_m",
        }
    }
}

/// Circumradius of the ellipsoid section spanned by the orthonormal kernel
/// basis `basis` (`m x k`). An empty basis gives 0.
pub fn circumradius(sigma: &SemiAxes, basis: &DMatrix<f64>) -> Result<f64> {
    let m = sigma.dim();
    if basis.nrows() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: basis.nrows(),
        });
    }
    let k = basis.ncols();
    if k == 0 {
        return Ok(0.0);
    }
    if k <= DENSE_KERNEL_CAP {
        circumradius_dense(sigma, basis)
    } else {
        // a large kernel has a small complement: rebuild the constraint side
        let complement = orthonormal_complement(basis)?;
        circumradius_projected(sigma, &complement)
    }
}

/// Dense route: smallest eigenvalue of `B^T D^-2 B`.
fn circumradius_dense(sigma: &SemiAxes, basis: &DMatrix<f64>) -> Result<f64> {
    let mut scaled = basis.clone();
    for (i, mut row) in scaled.row_iter_mut().enumerate() {
        let s = sigma.as_slice()[i];
        row /= s * s;
    }
    let m = basis.tr_mul(&scaled);
    let eigs = m.symmetric_eigen().eigenvalues;
    let lam_min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    if !(lam_min > 0.0) {
        return Err(Error::NonConvergence(format!(
            "section matrix is numerically non-positive-definite (lambda_min = {lam_min})"
        )));
    }
    Ok(lam_min.powf(-0.5))
}

/// Projected route: largest eigenvalue of `D^2` compressed to the orthogonal
/// complement of `range(D * constraints)`, where `constraints` spans the
/// orthogonal complement of the kernel. Never forms a `k x k` matrix.
fn circumradius_projected(sigma: &SemiAxes, constraints: &DMatrix<f64>) -> Result<f64> {
    let m = sigma.dim();
    let n = constraints.ncols();
    debug_assert_eq!(constraints.nrows(), m);
    if n == 0 {
        return Ok(sigma.axis(1));
    }
    // orthonormal basis of range(D * constraints)
    let mut dc = constraints.clone();
    for (i, mut row) in dc.row_iter_mut().enumerate() {
        row *= sigma.as_slice()[i];
    }
    let a = orthonormal_range(&dc)?;
    let d2: DVector<f64> = DVector::from_iterator(m, sigma.as_slice().iter().map(|s| s * s));
    let project = |v: &DVector<f64>| -> DVector<f64> {
        let mut w = v.clone();
        let coeff = a.tr_mul(&w);
        w.gemv(-1.0, &a, &coeff, 1.0);
        w
    };
    let apply = move |v: &DVector<f64>| -> DVector<f64> {
        let mut w = project(v);
        w.component_mul_assign(&d2);
        project(&w)
    };
    let lam = lanczos_max_eig(m, apply, 1e-13, m.min(2400))?;
    if !(lam > 0.0) {
        return Err(Error::NonConvergence(
            "projected operator returned a non-positive top eigenvalue".into(),
        ));
    }
    Ok(lam.sqrt())
}

/// Circumradius of the section cut by the kernel of the information matrix
/// `g` (`n x m`, full row rank). Chooses the dense or projected route by
/// kernel size without ever forming a large kernel basis.
pub fn circumradius_from_info(sigma: &SemiAxes, g: &DMatrix<f64>) -> Result<f64> {
    let m = sigma.dim();
    if g.ncols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: g.ncols(),
        });
    }
    let n = g.nrows();
    if n >= m {
        // square informaton is a.s. invertible: the section is {0}
        return Ok(0.0);
    }
    if m - n <= DENSE_KERNEL_CAP {
        let b = kernel_basis(g)?;
        circumradius_dense(sigma, &b)
    } else {
        let constraints = orthonormal_range(&g.transpose())?;
        circumradius_projected(sigma, &constraints)
    }
}

/// Assert the sandwich `sigma_{n+1} - 1e-10 <= r <= sigma_1 + 1e-10` for the
/// section spanned by `basis`; violations are reported as errors carrying
/// the triple.
pub fn sandwich_check(sigma: &SemiAxes, basis: &DMatrix<f64>) -> Result<(bool, f64)> {
    let r = circumradius(sigma, basis)?;
    let n = sigma.dim() - basis.ncols();
    let lower = sigma.axis(n + 1);
    let upper = sigma.axis(1);
    if r < lower - 1e-10 || r > upper + 1e-10 {
        return Err(Error::InvariantViolation(format!(
            "sandwich failed: sigma_(n+1)={lower}, r={r}, sigma_1={upper}"
        )));
    }
    Ok((true, r))
}

/// Monte Carlo mean of the circumradius over independent Gaussian
/// information matrices with `n` rows.
pub fn expected_radius_mc_ell(
    sigma: &SemiAxes,
    n: usize,
    trials: usize,
    base: RngStream,
) -> Result<RadiusEstimate> {
    if trials < 20 {
        return Err(Error::InvalidParam(
            "expected_radius_mc_ell needs trials >= 20".into(),
        ));
    }
    let m = sigma.dim();
    let samples: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = gaussian_matrix(n, m, base.trial(t as u32));
            circumradius_from_info(sigma, &g)
        })
        .collect();
    let est = McEstimate::from_samples(&samples?);
    Ok(RadiusEstimate::monte_carlo(est.mean, est.std_error))
}

/// One row of a dichotomy table: truncation dimension, mean radius, and its
/// ratio to the largest semi-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyRow {
    pub m: usize,
    pub mean_radius: f64,
    pub std_error: f64,
    pub sigma1: f64,
    pub ratio_to_sigma1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyTable {
    pub rows: Vec<DichotomyRow>,
    /// Modeling caveat for the finite truncation of an infinite-dimensional
    /// ellipsoid, when one applies.
    pub caveat: Option<String>,
}

/// Truncate the law at each `m` in the grid and estimate `E[r]/sigma_1` with
/// `n` fixed. For square-summable laws the truncation is adequate once the
/// tail `sum_{k>m} sigma_k^2` is below `1e-4 sigma_1^2`; otherwise the
/// truncation itself is the object under study and is flagged.
pub fn dichotomy_experiment(
    law: &AxisLaw,
    m_grid: &[usize],
    n: usize,
    trials: usize,
    base: RngStream,
) -> Result<DichotomyTable> {
    if m_grid.is_empty() || m_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam(
            "dichotomy needs a strictly increasing m grid".into(),
        ));
    }
    if n >= m_grid[0] {
        return Err(Error::InvalidParam("dichotomy needs n < every m".into()));
    }
    let mut rows = Vec::with_capacity(m_grid.len());
    for (row_idx, &m) in m_grid.iter().enumerate() {
        let sigma = law.semi_axes(m)?;
        let est = expected_radius_mc_ell(
            &sigma,
            n,
            trials,
            RngStream::new(base.master_seed, base.stream_index + row_idx as u64),
        )?;
        let sigma1 = sigma.axis(1);
        rows.push(DichotomyRow {
            m,
            mean_radius: est.value,
            std_error: est.std_error.unwrap_or(0.0),
            sigma1,
            ratio_to_sigma1: est.value / sigma1,
        });
    }
    let caveat = truncation_caveat(law, *m_grid.last().expect("nonempty grid"));
    Ok(DichotomyTable { rows, caveat })
}

fn truncation_caveat(law: &AxisLaw, m: usize) -> Option<String> {
    if !law.is_square_summable() {
        return Some(format!(
            "semi-axes are not square-summable; the truncation at m = {m} \
             understates the infinite-dimensional radius, where r = sigma_1 \
             almost surely"
        ));
    }
    // tail sum by direct summation plus an integral remainder
    let horizon = (10 * m).max(1_000_000);
    let mut tail = 0.0;
    for k in (m + 1)..=horizon {
        let s = law.constant
            * (k as f64).powf(-law.alpha)
            * ((k + 1) as f64).ln().powf(-law.beta);
        tail += s * s;
    }
    if 2.0 * law.alpha > 1.0 {
        let x = horizon as f64;
        let log_factor = (x + 1.0).ln().powf(-2.0 * law.beta);
        let remainder =
            2.0 * law.constant * law.constant * x.powf(1.0 - 2.0 * law.alpha)
                / (2.0 * law.alpha - 1.0)
                * log_factor.max(1.0);
        tail += remainder;
    }
    let sigma1 = law.constant * 2.0f64.ln().powf(-law.beta);
    if tail <= 1e-4 * sigma1 * sigma1 {
        None
    } else {
        Some(format!(
            "truncation tail sum {tail:.3e} exceeds 1e-4 sigma_1^2; increase m \
             for a faithful finite model"
        ))
    }
}
