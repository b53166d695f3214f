//! The square-summability dichotomy: when the semi-axes are not square
//! summable the section radius approaches sigma_1 as the truncation grows;
//! when they are, sqrt(n) E[r] still vanishes.
//!
//! Run with: cargo run --release --example ellipsoid_dichotomy

use radinfo::ellipsoid::{dichotomy_experiment, expected_radius_mc_ell, AxisLaw};
use radinfo::rng::RngStream;

fn main() {
    // slow decay: not square summable
    let law = AxisLaw::new(0.25, 0.0, 1.0).unwrap();
    let table =
        dichotomy_experiment(&law, &[250, 500, 1000, 2000], 5, 20, RngStream::new(51, 0)).unwrap();
    println!("sigma_k = k^(-1/4) (not square summable), n = 5:");
    for row in &table.rows {
        println!("  m = {:>4}: E[r]/sigma_1 = {:.4}", row.m, row.ratio_to_sigma1);
    }
    if let Some(caveat) = &table.caveat {
        println!("  note: {caveat}");
    }

    // fast decay: square summable, sqrt(n) E[r] -> 0
    let law = AxisLaw::new(1.0, 0.0, 1.0).unwrap();
    let sigma = law.semi_axes(2000).unwrap();
    println!("\nsigma_k = 1/k (square summable), m = 2000:");
    for (i, n) in [10usize, 20, 40, 80].into_iter().enumerate() {
        let est =
            expected_radius_mc_ell(&sigma, n, 20, RngStream::new(52, i as u64)).unwrap();
        println!(
            "  n = {n:>2}: sqrt(n) E[r] = {:.5}",
            (n as f64).sqrt() * est.value
        );
    }
}
