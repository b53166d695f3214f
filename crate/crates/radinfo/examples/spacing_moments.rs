//! Power sums of uniform spacings: Monte Carlo against the exact factorial
//! identity and against numerical quadrature of the expectation integral.
//!
//! Run with: cargo run --release --example spacing_moments

use radinfo::rng::RngStream;
use radinfo::spacings::{
    expected_power_sum_exact, expected_spacing_functional, power_sum, sample_uniform_sorted,
    spacings,
};
use radinfo::stats::{mc_run, McEstimate};

fn main() {
    let trials = 50_000;
    println!("{:>5} {:>3} {:>14} {:>14} {:>14} {:>10}", "n", "s", "monte carlo", "exact", "quadrature", "z-score");
    for n in [1usize, 5, 10, 50, 200] {
        for s in [1u32, 2, 3] {
            let base = RngStream::new(2024, (n * 4 + s as usize) as u64);
            let samples = mc_run(base, trials, |stream| {
                power_sum(&spacings(&sample_uniform_sorted(n, stream)), s as f64)
            });
            let est = McEstimate::from_samples(&samples);
            let exact = expected_power_sum_exact(n, s);
            let quad = expected_spacing_functional(n, |r| r.powi(s as i32 + 1), 2048).unwrap();
            let z = (est.mean - exact) / est.std_error;
            println!(
                "{n:>5} {s:>3} {:>14.8} {exact:>14.8} {quad:>14.8} {z:>10.2}",
                est.mean
            );
        }
    }
}
