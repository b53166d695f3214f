//! Uniform approximation (q = inf) of periodic Lipschitz functions: the
//! expected radius of random nodes sits inside the coupon-collector bracket
//! and decays like (n / log n)^(-1/d).
//!
//! Run with: cargo run --release --example lipschitz_uniform_bracket

use radinfo::lipschitz::{expected_radius_mc_lip, lipinfty_bracket};
use radinfo::rng::RngStream;

fn main() {
    println!("{:>3} {:>6} {:>12} {:>12} {:>12} {:>14}", "d", "n", "lower", "E[r]", "upper", "E*(n/ln n)^1/d");
    for d in [1usize, 2] {
        for (i, n) in [100usize, 400, 1600].into_iter().enumerate() {
            let (lower, upper) = lipinfty_bracket(n, d).unwrap();
            let est = expected_radius_mc_lip(
                n,
                d,
                f64::INFINITY,
                2000,
                RngStream::new(55, (d * 10 + i) as u64),
            )
            .unwrap();
            let nf = n as f64;
            let normalized = est.value * (nf / nf.ln()).powf(1.0 / d as f64);
            let inside = if est.value > lower && est.value < upper { "" } else { "  <-- OUTSIDE" };
            println!(
                "{d:>3} {n:>6} {lower:>12.6} {:>12.6} {upper:>12.6} {normalized:>14.4}{inside}",
                est.value
            );
        }
    }
}
