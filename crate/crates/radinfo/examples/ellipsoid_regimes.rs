//! Circumradius of random ellipsoid sections across the three decay
//! regimes: fast decay tracks sigma_(n+1), the critical case pays a sqrt-log
//! factor, and slow decay pins the radius at sigma_1.
//!
//! Run with: cargo run --release --example ellipsoid_regimes

use radinfo::ellipsoid::{classify_regime, expected_radius_mc_ell, AxisLaw, Regime};
use radinfo::rng::RngStream;

fn main() {
    let m = 400;
    let trials = 20;
    for (alpha, beta) in [(1.0, 0.0), (0.5, 1.0), (0.25, 0.0)] {
        let law = AxisLaw::new(alpha, beta, 1.0).unwrap();
        let prediction = classify_regime(&law);
        let sigma = law.semi_axes(m).unwrap();
        println!(
            "sigma_k = k^-{alpha} ln^-{beta}(k+1): {:?} for {}",
            prediction.regime, prediction.validity_range
        );
        for (i, n) in [5usize, 10, 15].into_iter().enumerate() {
            let est = expected_radius_mc_ell(
                &sigma,
                n,
                trials,
                RngStream::new(41, (alpha * 100.0) as u64 + i as u64),
            )
            .unwrap();
            let reference = match prediction.regime {
                Regime::OptimalOrder => est.value / sigma.axis(n + 1),
                Regime::SqrtLogPenalty => {
                    est.value / (sigma.axis(n + 1) * ((n as f64 + 1.0).ln()).sqrt())
                }
                Regime::UselessBelowCm => est.value / sigma.axis(1),
            };
            println!("  n = {n:>2}: E[r] = {:.5}   E[r]/prediction = {reference:.3}", est.value);
        }
    }
}
