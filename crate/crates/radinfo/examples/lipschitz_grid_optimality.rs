//! The full lattice is optimal information for periodic Lipschitz classes:
//! its radius matches the closed form `(1/2)(d/(d+q))^(1/q) n^(-1/d)`.
//!
//! Run with: cargo run --release --example lipschitz_grid_optimality

use radinfo::lipschitz::{optimal_radius_exact, radius_lq, GridSpec};

fn main() {
    println!("{:>3} {:>3} {:>5} {:>6} {:>14} {:>14} {:>10}", "d", "m", "q", "n", "lattice", "closed form", "|diff|");
    for d in 1..=2usize {
        for m in [2usize, 4, 8] {
            let spec = GridSpec::new(d, m).unwrap();
            let lattice = spec.lattice();
            for q in [1.0, 2.0, f64::INFINITY] {
                let est = radius_lq(&lattice, q).unwrap();
                let exact = optimal_radius_exact(&spec, q).unwrap();
                println!(
                    "{d:>3} {m:>3} {q:>5} {:>6} {:>14.8} {exact:>14.8} {:>10.2e}",
                    spec.n(),
                    est.value,
                    (est.value - exact).abs()
                );
            }
        }
    }
    // d = 3 closed form at a glance
    let spec = GridSpec::new(3, 2).unwrap();
    println!(
        "\nd=3, m=2, q=1: closed form {:.6} (= 3/16)",
        optimal_radius_exact(&spec, 1.0).unwrap()
    );
}
