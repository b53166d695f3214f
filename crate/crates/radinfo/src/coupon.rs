//! The coupon collector process: exact moments, tail bound, and simulation.

use crate::rng::RngStream;
use rand::Rng;

/// Exact mean and variance bound for the time to collect `ell` coupons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouponStats {
    pub ell: u64,
    /// `ell * H_ell` where `H_ell` is the harmonic number.
    pub mean: f64,
    /// `ell^2 * sum_{k<=ell} 1/k^2`, an upper bound for the variance.
    pub variance_bound: f64,
}

pub fn coupon_stats(ell: u64) -> CouponStats {
    assert!(ell >= 1);
    let mut h = 0.0;
    let mut h2 = 0.0;
    for k in 1..=ell {
        let k = k as f64;
        h += 1.0 / k;
        h2 += 1.0 / (k * k);
    }
    let l = ell as f64;
    CouponStats {
        ell,
        mean: l * h,
        variance_bound: l * l * h2,
    }
}

/// One draw of the collection time: i.i.d. uniform labels from
/// `{0, .., ell-1}` until all labels have been seen.
pub fn coupon_simulate(ell: u64, rng: RngStream) -> u64 {
    assert!(ell >= 1);
    let mut r = rng.rng();
    let mut seen = vec![false; ell as usize];
    let mut remaining = ell;
    let mut draws = 0u64;
    while remaining > 0 {
        let label = r.random_range(0..ell) as usize;
        draws += 1;
        if !seen[label] {
            seen[label] = true;
            remaining -= 1;
        }
    }
    draws
}

/// Tail threshold and bound: `P[tau > ceil(c * ell * ln ell)] <= ell^(1-c)`.
pub fn coupon_tail_bound(ell: u64, c: f64) -> (u64, f64) {
    assert!(ell >= 2, "coupon_tail_bound needs ell >= 2");
    assert!(c > 0.0);
    let l = ell as f64;
    let threshold = (c * l * l.ln()).ceil() as u64;
    (threshold, l.powf(1.0 - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{mc_run, McEstimate};

    #[test]
    fn single_coupon_takes_one_draw() {
        for t in 0..10 {
            assert_eq!(coupon_simulate(1, RngStream::new(3, t)), 1);
        }
    }

    #[test]
    fn stats_small_cases() {
        let s = coupon_stats(2);
        assert!((s.mean - 3.0).abs() < 1e-15); // 2 * (1 + 1/2)
        let s = coupon_stats(3);
        assert!((s.mean - 5.5).abs() < 1e-15); // 3 * (1 + 1/2 + 1/3)
    }

    #[test]
    fn tail_bound_values() {
        let (t, b) = coupon_tail_bound(2, 1.0);
        assert_eq!(t, 2);
        assert!((b - 1.0).abs() < 1e-15);
        let (_, b) = coupon_tail_bound(100, 2.0);
        assert!((b - 0.01).abs() < 1e-15);
        let (_, b) = coupon_tail_bound(10, 3.0);
        assert!((b - 0.01).abs() < 1e-12);
    }

    #[test]
    fn simulated_mean_matches_ell_h_ell() {
        for (ell, trials) in [(2u64, 40_000usize), (3, 40_000)] {
            let samples = mc_run(RngStream::new(5, ell), trials, |s| {
                coupon_simulate(ell, s) as f64
            });
            let est = McEstimate::from_samples(&samples);
            let exact = coupon_stats(ell).mean;
            assert!(
                (est.mean - exact).abs() <= 3.0 * est.std_error,
                "ell={ell}: mean {} exact {exact} se {}",
                est.mean,
                est.std_error
            );
        }
    }

    #[test]
    fn empirical_variance_below_bound() {
        let ell = 10;
        let samples = mc_run(RngStream::new(6, 0), 40_000, |s| {
            coupon_simulate(ell, s) as f64
        });
        let est = McEstimate::from_samples(&samples);
        let bound = coupon_stats(ell).variance_bound;
        assert!(est.sample_variance() <= bound * 1.05);
    }
}
