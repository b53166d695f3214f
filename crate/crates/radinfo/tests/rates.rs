//! Rate and window properties: decay exponents of expected radii under
//! random information, normalized-window boundedness, and node-dominance
//! checks that back the surrogate formulas.

mod common;

use radinfo::ellipsoid::{dichotomy_experiment, AxisLaw};
use radinfo::l1;
use radinfo::lipschitz::{self, GridSpec};
use radinfo::rng::RngStream;
use radinfo::sobolev1d::{optimal_nodes_1d, radius_surrogate_1d, SobolevParams1D};
use radinfo::sobolev_md;
use radinfo::spacings::{max_gap, sample_uniform_sorted, spacings};
use radinfo::stats::{fit_rate, XTransform};

#[test]
fn lipschitz_radius_rate_is_reciprocal_for_finite_q() {
    // d = 1, q = 2: fitted slope -1.0 +- 0.1
    let mut points = Vec::new();
    for (i, k) in (4..=12).enumerate() {
        let n = 1usize << k;
        let est =
            lipschitz::expected_radius_mc_lip(n, 1, 2.0, 400, RngStream::new(301, i as u64))
                .unwrap();
        points.push((n as f64, est.value));
    }
    let fit = fit_rate(&points, XTransform::LogN).unwrap();
    assert!((fit.slope + 1.0).abs() <= 0.1, "slope {}", fit.slope);
}

#[test]
fn lipschitz_uniform_rate_pays_a_log_factor() {
    // d = 2, q = inf: E[r] * (n / ln n)^(1/2) bounded in a factor-3 window
    let mut ratios = Vec::new();
    for (i, k) in (6..=12).enumerate() {
        let n = 1usize << k;
        let est = lipschitz::expected_radius_mc_lip(
            n,
            2,
            f64::INFINITY,
            200,
            RngStream::new(302, i as u64),
        )
        .unwrap();
        let nf = n as f64;
        ratios.push(est.value * (nf / nf.ln()).sqrt());
    }
    let window = common::max_min_ratio(&ratios);
    assert!(window <= 3.0, "window {window}: {ratios:?}");
}

#[test]
fn covering_radius_of_uniform_sets_tracks_log_n_over_n() {
    for d in [1usize, 2] {
        let mut ratios = Vec::new();
        for (i, k) in (6..=10).enumerate() {
            let n = 1usize << k;
            let est = sobolev_md::empirical_gap_witness(
                n,
                d,
                200,
                RngStream::new(303, (d * 100 + i) as u64),
            )
            .unwrap();
            let nf = n as f64;
            ratios.push(est.value / (nf.ln() / nf).powf(1.0 / d as f64));
        }
        let window = common::max_min_ratio(&ratios);
        assert!(window <= 3.0, "d={d}: window {window}: {ratios:?}");
    }
}

#[test]
fn lattice_radius_matches_closed_form_in_3d() {
    // coarser relative bound keeps the 3-d grids small; the containment
    // against the reported bound is what matters
    for m in [2usize, 3, 4, 8] {
        let spec = GridSpec::new(3, m).unwrap();
        let lattice = spec.lattice();
        for q in [1.0, f64::INFINITY] {
            let est = lipschitz::radius_lq_with_bound(&lattice, q, 0.2).unwrap();
            let exact = lipschitz::optimal_radius_exact(&spec, q).unwrap();
            let bound = est.grid_error_bound.unwrap() + 1e-12;
            assert!(
                (est.value - exact).abs() <= bound,
                "m={m} q={q}: {} vs {exact} (bound {bound})",
                est.value
            );
        }
    }
}

#[test]
fn midpoint_nodes_dominate_random_sets_at_moderate_sizes() {
    // for p <= q the surrogate is a power of the max gap, so dominance is a
    // max-gap comparison; random sets can beat the midpoints at tiny n
    // (about 25% of pairs do at n = 2), but from n = 8 on they do not
    let params = SobolevParams1D::new(1.0, 2.0).unwrap();
    for n in [1usize, 8, 16, 32, 64] {
        let optimal = radius_surrogate_1d(&optimal_nodes_1d(n), params).value;
        let optimal_gap = if n == 1 { 0.5 } else { 1.0 / n as f64 };
        for t in 0..1000u32 {
            let sampled = sample_uniform_sorted(n, RngStream::new(304, n as u64).trial(t));
            let gap = max_gap(&spacings(&sampled));
            assert!(
                gap >= optimal_gap - 1e-15,
                "n={n} trial {t}: random max gap {gap} beats midpoints"
            );
            let value = radius_surrogate_1d(&sampled, params).value;
            assert!(value >= optimal - 1e-15);
        }
    }
}

#[test]
fn one_sparse_recovery_rate_at_m16_n10() {
    let rate = l1::sparse_recovery_experiment(16, 10, 1, 1000, RngStream::new(305, 0)).unwrap();
    assert!(rate >= 0.99, "recovery rate {rate} below 0.99");
}

#[test]
fn sparse_recovery_rate_is_monotone_in_measurements() {
    // success rates along an n-grid may only increase, up to 3 combined SE
    let m = 64;
    let trials = 60;
    let mut prev: Option<f64> = None;
    for (i, n) in [8usize, 16, 24, 32, 48].into_iter().enumerate() {
        let rate =
            l1::sparse_recovery_experiment(m, n, 2, trials, RngStream::new(306, i as u64))
                .unwrap();
        if let Some(p) = prev {
            let se = |r: f64| (r * (1.0 - r) / trials as f64).sqrt();
            assert!(
                rate >= p - 3.0 * (se(rate) + se(p)),
                "rate dropped from {p} to {rate} at n={n}"
            );
        }
        prev = Some(rate);
    }
    assert!(prev.unwrap() >= 0.95, "rate at n=48: {:?}", prev);
}

#[test]
fn slow_decay_sections_swell_with_truncation() {
    // sigma_k = k^(-1/4), n = 5: E[r]/sigma_1 increases along the m grid
    let law = AxisLaw::new(0.25, 0.0, 1.0).unwrap();
    let table = dichotomy_experiment(&law, &[250, 500, 1000, 2000], 5, 24, RngStream::new(307, 0))
        .unwrap();
    assert!(table.caveat.is_some(), "non-l2 law must carry a caveat");
    for pair in table.rows.windows(2) {
        let slack = pair[0].std_error + pair[1].std_error;
        assert!(
            pair[1].ratio_to_sigma1 >= pair[0].ratio_to_sigma1 - slack,
            "ratio fell from {} (m={}) to {} (m={})",
            pair[0].ratio_to_sigma1,
            pair[0].m,
            pair[1].ratio_to_sigma1,
            pair[1].m
        );
    }
    let first = table.rows.first().unwrap().ratio_to_sigma1;
    let last = table.rows.last().unwrap().ratio_to_sigma1;
    assert!(last > first, "no overall growth: {first} vs {last}");
}

#[test]
fn uniform_radius_lies_in_bracket_2d() {
    let n = 400;
    let (lo, hi) = lipschitz::lipinfty_bracket(n, 2).unwrap();
    let est =
        lipschitz::expected_radius_mc_lip(n, 2, f64::INFINITY, 400, RngStream::new(308, 0))
            .unwrap();
    assert!(
        est.value > lo && est.value < hi,
        "E[r] = {} outside ({lo}, {hi})",
        est.value
    );
}

#[test]
fn critical_decay_pays_a_sqrt_log_penalty() {
    // sigma_k = k^(-1/2) ln^(-1)(k+1): E[r] tracks sigma_(n+1) sqrt(ln(n+1))
    // for n below sqrt(m)
    let law = AxisLaw::new(0.5, 1.0, 1.0).unwrap();
    let m = 900;
    let sigma = law.semi_axes(m).unwrap();
    let mut ratios = Vec::new();
    for (i, n) in [4usize, 8, 16, 25].into_iter().enumerate() {
        let est = radinfo::ellipsoid::expected_radius_mc_ell(
            &sigma,
            n,
            20,
            RngStream::new(309, i as u64),
        )
        .unwrap();
        let prediction = sigma.axis(n + 1) * ((n as f64 + 1.0).ln()).sqrt();
        ratios.push(est.value / prediction);
    }
    let window = common::max_min_ratio(&ratios);
    assert!(window <= 3.0, "window {window}: {ratios:?}");
}

#[test]
fn kgg_table_carries_exact_column_when_enumeration_is_cheap() {
    let rows = l1::kgg_rate_check(10, &[6, 9], 10, 40, RngStream::new(310, 0)).unwrap();
    for r in &rows {
        let exact = r.mean_exact.expect("m - n <= 12 admits enumeration");
        assert!(r.mean_lower <= exact + 1e-9);
        assert!(exact - r.mean_lower <= 1e-6, "n={}: {} vs {exact}", r.n, r.mean_lower);
        assert!(r.ratio > 0.0 && r.mean_lower <= 1.0 + 1e-9);
    }
}
