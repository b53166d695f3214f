//! Thinning a uniform random sample to a quasi-uniform subset: the
//! construction succeeds with probability at least 1 - l^-alpha and always
//! yields mesh ratio at most 1.
//!
//! Run with: cargo run --release --example quasi_uniform_thinning

use radinfo::points::PointSet;
use radinfo::rng::RngStream;
use radinfo::sobolev_md::{mesh_stats, thin_to_quasi_uniform};

fn main() {
    let trials = 500;
    for (d, alpha, n) in [(1usize, 1.0f64, 1000usize), (2, 0.5, 1000), (2, 1.0, 4000)] {
        let mut successes = 0;
        let mut worst_ratio = 0.0f64;
        let mut subset_size = 0;
        for t in 0..trials {
            let pset = PointSet::sample_uniform(d, n, RngStream::new(91, t).trial(d as u32));
            if let Some(thin) = thin_to_quasi_uniform(&pset, alpha, n).unwrap() {
                successes += 1;
                subset_size = thin.subset.len();
                let stats = mesh_stats(&thin.subset).unwrap();
                worst_ratio = worst_ratio.max(stats.mesh_ratio);
            }
        }
        let freq = successes as f64 / trials as f64;
        println!(
            "d={d} alpha={alpha} n={n}: success {freq:.3} | subset {subset_size} points | \
             worst mesh ratio {worst_ratio:.3}"
        );
    }
}
