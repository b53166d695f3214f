//! Spacing-functional surrogates for the radius of standard information in
//! L_q-approximation of univariate Sobolev functions of smoothness one.
//!
//! The surrogate equals the radius only up to unspecified equivalence
//! constants, so everything downstream verifies rates and windows, never
//! absolute constants. Infinite exponents are handled symbolically
//! (`1/inf := 0`) before any floating-point evaluation.

use crate::error::{Error, Result};
use crate::estimate::RadiusEstimate;
use crate::rng::RngStream;
use crate::spacings::{max_gap, power_sum, sample_uniform_sorted, spacings, SortedPointSet1D};
use crate::stats::{mc_run, McEstimate};

/// Integrability exponents `1 <= p, q <= inf` (`f64::INFINITY` for inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevParams1D {
    pub p: f64,
    pub q: f64,
}

impl SobolevParams1D {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if v.is_nan() || v < 1.0 {
                return Err(Error::InvalidParam(format!(
                    "{name} must lie in [1, inf], got {v}"
                )));
            }
        }
        Ok(Self { p, q })
    }

    /// The pair (1, inf) makes the surrogate exponent vanish: the functional
    /// is constant and says nothing about decay.
    pub fn is_degenerate(&self) -> bool {
        self.p == 1.0 && self.q.is_infinite()
    }
}

fn inv(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        1.0 / x
    }
}

/// The spacing functional characterizing the radius of the information
/// `f(x_1), .., f(x_n)`:
///
/// - `p <= q`: `(max gap)^(1 - 1/p + 1/q)`;
/// - `p > q`: `(sum_i gap_i^((pq+p-q)/(p-q)))^(1/q - 1/p)`, where the inner
///   exponent degrades to `q + 1` as `p -> inf`.
///
/// The returned estimate has kind `Surrogate`: it matches the radius only up
/// to the equivalence constants of the characterization. The degenerate pair
/// `(p, q) = (1, inf)` is flagged rather than interpreted.
pub fn radius_surrogate_1d(points: &SortedPointSet1D, params: SobolevParams1D) -> RadiusEstimate {
    let gaps = spacings(points);
    if params.is_degenerate() {
        return RadiusEstimate::surrogate(1.0).flag_degenerate();
    }
    let (p, q) = (params.p, params.q);
    let value = if p <= q {
        let e = 1.0 - inv(p) + inv(q);
        max_gap(&gaps).powf(e)
    } else {
        // p > q forces q < inf
        let inner = if p.is_infinite() {
            q + 1.0
        } else {
            (p * q + p - q) / (p - q)
        };
        let outer = inv(q) - inv(p);
        power_sum(&gaps, inner - 1.0).powf(outer)
    };
    RadiusEstimate::surrogate(value)
}

/// Equidistant midpoint nodes `(2i - 1) / (2n)`, `i = 1..n`.
pub fn optimal_nodes_1d(n: usize) -> SortedPointSet1D {
    assert!(n >= 1, "optimal_nodes_1d needs n >= 1");
    let pts = (1..=n)
        .map(|i| (2 * i - 1) as f64 / (2 * n) as f64)
        .collect();
    SortedPointSet1D::new(pts).expect("midpoints lie in [0,1]")
}

/// Monte Carlo mean of the surrogate over i.i.d. uniform point sets.
pub fn expected_radius_mc_1d(
    n: usize,
    params: SobolevParams1D,
    trials: usize,
    base: RngStream,
) -> Result<RadiusEstimate> {
    if trials < 100 {
        return Err(Error::InvalidParam(
            "expected_radius_mc_1d needs trials >= 100".into(),
        ));
    }
    if params.is_degenerate() {
        // the surrogate is identically 1
        return Ok(RadiusEstimate::monte_carlo(1.0, 0.0).flag_degenerate());
    }
    let samples = mc_run(base, trials, |s| {
        radius_surrogate_1d(&sample_uniform_sorted(n, s), params).value
    });
    let est = McEstimate::from_samples(&samples);
    Ok(RadiusEstimate::monte_carlo(est.mean, est.std_error))
}

/// Radius surrogate for the integration problem, which coincides with
/// L_1-approximation at smoothness one.
pub fn integration_radius_1d(points: &SortedPointSet1D, p: f64) -> Result<RadiusEstimate> {
    Ok(radius_surrogate_1d(points, SobolevParams1D::new(p, 1.0)?))
}

/// Monte Carlo integration-radius counterpart of [`expected_radius_mc_1d`].
pub fn expected_integration_radius_mc(
    n: usize,
    p: f64,
    trials: usize,
    base: RngStream,
) -> Result<RadiusEstimate> {
    expected_radius_mc_1d(n, SobolevParams1D::new(p, 1.0)?, trials, base)
}
