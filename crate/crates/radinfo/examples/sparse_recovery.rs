//! Basis-pursuit recovery of sparse vectors from Gaussian measurements:
//! the success rate climbs with the number of measurements.
//!
//! Run with: cargo run --release --example sparse_recovery

use radinfo::l1::sparse_recovery_experiment;
use radinfo::rng::RngStream;

fn main() {
    let m = 64;
    let trials = 100;
    for sparsity in [2usize, 4] {
        println!("m = {m}, sparsity = {sparsity}:");
        for (i, n) in [8usize, 12, 16, 24, 32, 48].into_iter().enumerate() {
            let rate = sparse_recovery_experiment(
                m,
                n,
                sparsity,
                trials,
                RngStream::new(81, (sparsity * 10 + i) as u64),
            )
            .unwrap();
            let bar = "#".repeat((rate * 40.0).round() as usize);
            println!("  n = {n:>2}: {rate:>5.2} {bar}");
        }
    }
}
