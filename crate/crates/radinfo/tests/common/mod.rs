//! Shared independent oracles for the integration suites.
//!
//! These deliberately avoid the library's solution paths: the l1 oracle
//! enumerates basic feasible solutions of the LP reformulation directly.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

#[allow(dead_code)] // each test crate compiles its own copy of this module
/// Exhaustive vertex oracle for `min |x|_1 s.t. G x = y`.
///
/// Reformulated as the standard-form LP `min 1^T (u, v)` subject to
/// `[G, -G] (u, v) = y`, `u, v >= 0`, whose optimum (when finite) is
/// attained at a basic feasible solution. Every choice of `n` basis columns
/// is enumerated; singular bases and infeasible solutions are discarded.
pub fn l1_lp_oracle(g: &DMatrix<f64>, y: &DVector<f64>) -> f64 {
    let n = g.nrows();
    let m = g.ncols();
    let ynorm = y.norm().max(1.0);
    let mut best = f64::INFINITY;
    for basis in (0..2 * m).combinations(n) {
        let mut bmat = DMatrix::<f64>::zeros(n, n);
        for (jj, &c) in basis.iter().enumerate() {
            let col = if c < m {
                g.column(c).into_owned()
            } else {
                -g.column(c - m)
            };
            bmat.set_column(jj, &col);
        }
        let lu = bmat.clone().lu();
        if let Some(xb) = lu.solve(y) {
            if (bmat * &xb - y).norm() <= 1e-8 * ynorm && xb.iter().all(|&v| v >= -1e-9) {
                best = best.min(xb.sum());
            }
        }
    }
    best
}

#[allow(dead_code)]
pub fn max_min_ratio(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}
