//! The integration problem at smoothness one shares its radius with
//! L_1-approximation: n^-1 for p > 1, an extra log factor at p = 1.
//!
//! Run with: cargo run --release --example integration_1d

use radinfo::rng::RngStream;
use radinfo::sobolev1d::{expected_integration_radius_mc, integration_radius_1d, optimal_nodes_1d};
use radinfo::stats::{fit_rate, XTransform};

fn main() {
    // the alias contract: integration radius = L_1-approximation surrogate
    let nodes = optimal_nodes_1d(4);
    let est = integration_radius_1d(&nodes, 2.0).unwrap();
    println!("midpoint nodes n=4, p=2: surrogate {:.6} (= sqrt(13)/16)\n", est.value);

    let n_grid: Vec<usize> = (4..=12).map(|k| 1usize << k).collect();
    for p in [2.0, f64::INFINITY] {
        let mut points = Vec::new();
        for (i, &n) in n_grid.iter().enumerate() {
            let est =
                expected_integration_radius_mc(n, p, 500, RngStream::new(33, i as u64)).unwrap();
            points.push((n as f64, est.value));
        }
        let fit = fit_rate(&points, XTransform::LogN).unwrap();
        println!("p = {p:>3}: fitted slope {:.4} (expect -1)", fit.slope);
    }

    println!("\np = 1, normalized by n/log n (expect a flat window):");
    for (i, &n) in n_grid.iter().enumerate() {
        let est = expected_integration_radius_mc(n, 1.0, 500, RngStream::new(34, i as u64)).unwrap();
        let nf = n as f64;
        println!("  n = {n:>5}   E * n/log n = {:.4}", est.value * nf / nf.ln());
    }
}
