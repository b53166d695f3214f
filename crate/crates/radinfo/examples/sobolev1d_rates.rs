//! Expected radius surrogates for L_q-approximation on W^1_p([0,1]) from
//! random nodes: the n^-1 rate for p > q against the logarithmic loss for
//! p <= q.
//!
//! Run with: cargo run --release --example sobolev1d_rates

use radinfo::rng::RngStream;
use radinfo::sobolev1d::{expected_radius_mc_1d, SobolevParams1D};
use radinfo::stats::{fit_rate, XTransform};

fn main() {
    let n_grid: Vec<usize> = (4..=12).map(|k| 1usize << k).collect();
    let trials = 500;

    for (p, q) in [(2.0, 1.0), (f64::INFINITY, 1.0)] {
        let params = SobolevParams1D::new(p, q).unwrap();
        let mut points = Vec::new();
        println!("p = {p}, q = {q} (expect slope near -1):");
        for (i, &n) in n_grid.iter().enumerate() {
            let est =
                expected_radius_mc_1d(n, params, trials, RngStream::new(31, i as u64)).unwrap();
            println!("  n = {n:>5}   E[surrogate] = {:.6e}", est.value);
            points.push((n as f64, est.value));
        }
        let fit = fit_rate(&points, XTransform::LogN).unwrap();
        println!("  fitted slope {:.4}, r^2 {:.5}\n", fit.slope, fit.r_squared);
    }

    // p <= q: normalized by (n / log n)^(1 - 1/p + 1/q) the values flatten
    let params = SobolevParams1D::new(1.0, 1.0).unwrap();
    println!("p = 1, q = 1, normalized by n/log n (expect a flat window):");
    for (i, &n) in n_grid.iter().enumerate() {
        let est = expected_radius_mc_1d(n, params, trials, RngStream::new(32, i as u64)).unwrap();
        let nf = n as f64;
        println!("  n = {n:>5}   E * n/log n = {:.4}", est.value * nf / nf.ln());
    }
}
