//! Moments of the Lipschitz radius under uniform random nodes: Monte Carlo
//! against the exact product formula, and the scaled limit constant.
//!
//! Run with: cargo run --release --example lipschitz_exact_moments

use radinfo::lipschitz::{expected_moment_exact, expected_moment_limit, lip_moment_mc};
use radinfo::rng::RngStream;

fn main() {
    println!("{:>3} {:>3} {:>3} {:>14} {:>14} {:>8}", "d", "q", "n", "monte carlo", "exact", "z");
    for (d, trials) in [(1usize, 50_000usize), (2, 2_000)] {
        for q in [1.0, 2.0] {
            for n in [1usize, 10, 40] {
                let base = RngStream::new(71, (d * 1000 + q as usize * 100 + n) as u64);
                let ests = lip_moment_mc(n, d, &[q], trials, base, 0.02).unwrap();
                let exact = expected_moment_exact(n, d, q).unwrap();
                let z = (ests[0].mean - exact) / ests[0].std_error;
                println!(
                    "{d:>3} {q:>3} {n:>3} {:>14.8} {exact:>14.8} {z:>8.2}",
                    ests[0].mean
                );
            }
        }
    }

    println!("\nscaled moments n^(q/d) E[r^q] approaching 2^-q Gamma(q/d + 1):");
    for (d, q) in [(1usize, 1.0f64), (1, 2.0), (2, 1.0)] {
        let limit = expected_moment_limit(d, q).unwrap();
        for n in [100usize, 10_000] {
            let scaled = (n as f64).powf(q / d as f64) * expected_moment_exact(n, d, q).unwrap();
            println!("  d={d} q={q} n={n:>6}: {scaled:.6} -> {limit:.6}");
        }
    }
}
