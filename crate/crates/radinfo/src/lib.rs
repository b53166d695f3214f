//! Numerical experiments comparing the quality of random information with
//! optimal information for approximation and recovery problems.
//!
//! The library computes the radius of information exactly where closed forms
//! exist and by seeded Monte Carlo where they do not:
//!
//! - [`spacings`] / [`coupon`]: uniform order statistics on [0,1], spacing
//!   functionals with exact beta-moment identities, and the coupon collector
//!   process.
//! - [`sobolev1d`]: spacing-functional surrogates for L_q-approximation of
//!   univariate Sobolev functions from point values.
//! - [`lipschitz`]: the radius of standard information for periodic Lipschitz
//!   classes, with exact grid formulas and exact moments under uniform nodes.
//! - [`sobolev_md`]: separation/covering statistics, quasi-uniform thinning of
//!   random point sets, and rate references for multivariate Sobolev classes.
//! - [`l1`]: Gaussian linear information for recovery of unit l1-ball vectors
//!   in l2: basis pursuit with certified optimality gaps and exact
//!   cross-polytope section radii at small sizes.
//! - [`ellipsoid`]: circumradius of an ellipsoid intersected with the kernel
//!   of Gaussian information, regime classification, and the l2 dichotomy.
//!
//! Everything is driven by explicit [`rng::RngStream`] values, so any
//! experiment is reproducible bit for bit from a master seed. The `radinfo`
//! binary (see [`cli`]) exposes each experiment family as a subcommand that
//! writes CSV or JSON tables; the `examples/` directory holds one runnable
//! demonstration per capability.

pub mod cli;
pub mod coupon;
pub mod ellipsoid;
pub mod error;
pub mod estimate;
pub mod grid;
pub mod l1;
pub mod linalg;
pub mod lipschitz;
pub mod points;
pub mod rng;
pub mod sobolev1d;
pub mod sobolev_md;
pub mod spacings;
pub mod stats;

pub use error::{Error, Result};
pub use estimate::{EstimateKind, RadiusEstimate};
pub use rng::RngStream;
