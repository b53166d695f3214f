//! Coupon-collector waiting times: simulated means against `l H_l`, the
//! variance bound, and the tail inequality.
//!
//! Run with: cargo run --release --example coupon_collector

use radinfo::coupon::{coupon_simulate, coupon_stats, coupon_tail_bound};
use radinfo::rng::RngStream;
use radinfo::stats::{mc_run, McEstimate};

fn main() {
    let trials = 100_000;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "ell", "mean", "l*H_l", "variance", "var bound");
    for (i, ell) in [2u64, 10, 100].into_iter().enumerate() {
        let samples = mc_run(RngStream::new(11, i as u64), trials, |s| {
            coupon_simulate(ell, s) as f64
        });
        let est = McEstimate::from_samples(&samples);
        let stats = coupon_stats(ell);
        println!(
            "{ell:>6} {:>12.3} {:>12.3} {:>12.1} {:>12.1}",
            est.mean,
            stats.mean,
            est.sample_variance(),
            stats.variance_bound
        );
        for c in [1.5, 2.0, 3.0] {
            let (threshold, bound) = coupon_tail_bound(ell, c);
            let freq =
                samples.iter().filter(|&&t| t > threshold as f64).count() as f64 / trials as f64;
            println!(
                "         tail c={c:<4} P[tau > {threshold:>4}] = {freq:<12.5} bound l^(1-c) = {bound:.5}"
            );
        }
    }
}
