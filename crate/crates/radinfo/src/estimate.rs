//! Radius values with provenance.

/// How a radius value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateKind {
    /// Closed form, exact up to floating-point rounding.
    Exact,
    /// Explicit spacing functional equivalent to the radius only up to
    /// unspecified constants.
    Surrogate,
    /// Deterministic grid evaluation with a rigorous error bound.
    GridBounded,
    /// Monte Carlo mean with a standard error.
    MonteCarlo,
}

/// A radius value together with how it was computed.
///
/// `std_error` is present iff `kind == MonteCarlo`; `grid_error_bound` is
/// present iff `kind == GridBounded`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub std_error: Option<f64>,
    pub grid_error_bound: Option<f64>,
    /// Set when the requested parameters make the value meaningless
    /// (e.g. an exponent-zero surrogate that cannot decay).
    pub degenerate: bool,
}

impl RadiusEstimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            kind: EstimateKind::Exact,
            std_error: None,
            grid_error_bound: None,
            degenerate: false,
        }
    }

    pub fn surrogate(value: f64) -> Self {
        Self {
            value,
            kind: EstimateKind::Surrogate,
            std_error: None,
            grid_error_bound: None,
            degenerate: false,
        }
    }

    pub fn grid_bounded(value: f64, bound: f64) -> Self {
        Self {
            value,
            kind: EstimateKind::GridBounded,
            std_error: None,
            grid_error_bound: Some(bound),
            degenerate: false,
        }
    }

    pub fn monte_carlo(value: f64, std_error: f64) -> Self {
        Self {
            value,
            kind: EstimateKind::MonteCarlo,
            std_error: Some(std_error),
            grid_error_bound: None,
            degenerate: false,
        }
    }

    pub fn flag_degenerate(mut self) -> Self {
        self.degenerate = true;
        self
    }
}
