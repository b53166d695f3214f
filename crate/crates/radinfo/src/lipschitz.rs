//! Radius of standard information for L_q-approximation of periodic
//! Lipschitz functions on the d-torus.
//!
//! The radius of the information `f(x_1), .., f(x_n)` equals the L_q norm of
//! the distance function to the node set under the torus maximum metric. In
//! d = 1 that norm is exact from the cyclic gaps; in d >= 2 it is evaluated
//! on a regular grid with a rigorous error bound from 1-Lipschitzness.

use crate::error::{Error, Result};
use crate::estimate::RadiusEstimate;
use crate::grid::{self, eval_dist_grid_with, CELL_CAP};
use crate::points::PointSet;
use crate::rng::RngStream;
use crate::stats::{kahan_sum, McEstimate};
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

/// Node sets live in [0,1]^d with periodic (wraparound) distances.
pub type TorusPointSet = PointSet;

/// Maximum metric on the d-torus: per-coordinate wrapped distance, then the
/// maximum over coordinates. The result lies in [0, 1/2].
pub fn dist_torus(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(grid::dist_max(x, y, true))
}

/// Distance from `x` to the nearest node. The empty set is assigned the
/// torus diameter 1/2 by convention.
pub fn dist_to_set(x: &[f64], pset: &TorusPointSet) -> f64 {
    if pset.is_empty() {
        return 0.5;
    }
    pset.iter_points()
        .map(|p| grid::dist_max(x, p, true))
        .fold(f64::INFINITY, f64::min)
}

/// Cyclic gaps of a 1-d node set: consecutive differences plus the
/// wraparound gap. A single node has one gap of length 1.
fn cyclic_gaps(pset: &TorusPointSet) -> Vec<f64> {
    debug_assert_eq!(pset.d(), 1);
    let mut xs: Vec<f64> = pset.coords().to_vec();
    xs.sort_unstable_by(f64::total_cmp);
    if xs.is_empty() {
        return vec![];
    }
    let n = xs.len();
    let mut gaps = Vec::with_capacity(n);
    for i in 1..n {
        gaps.push(xs[i] - xs[i - 1]);
    }
    gaps.push(1.0 - xs[n - 1] + xs[0]);
    gaps
}

/// `int dist(., P)^q` over the circle, exactly: each cyclic gap contributes
/// a tent of height gap/2, so the integral is `sum gap^(q+1) / (2^q (q+1))`.
fn moment_1d_exact(gaps: &[f64], q: f64) -> f64 {
    let e = q + 1.0;
    let s = if e == e.trunc() && e <= 16.0 {
        let k = e as i32;
        kahan_sum(gaps.iter().map(|l| l.powi(k)))
    } else {
        kahan_sum(gaps.iter().map(|l| l.powf(e)))
    };
    s / (2.0f64.powf(q) * (q + 1.0))
}

fn validate_q(q: f64) -> Result<()> {
    if q.is_nan() || q < 1.0 {
        return Err(Error::InvalidParam(format!(
            "q must lie in [1, inf], got {q}"
        )));
    }
    Ok(())
}

/// L_q radius of the node set: exact in d = 1, grid-bounded in d >= 2 with
/// a default relative error target of 5%.
pub fn radius_lq(pset: &TorusPointSet, q: f64) -> Result<RadiusEstimate> {
    radius_lq_with_bound(pset, q, 0.05)
}

/// Like [`radius_lq`], with an explicit relative bound target for the grid
/// path. The reported `grid_error_bound` is `h/2` for finite q (the L_q
/// perturbation of a 1-Lipschitz function sampled at cell centers) and `h`
/// for `q = inf`.
pub fn radius_lq_with_bound(
    pset: &TorusPointSet,
    q: f64,
    rel_bound: f64,
) -> Result<RadiusEstimate> {
    validate_q(q)?;
    if pset.is_empty() {
        return Ok(RadiusEstimate::exact(0.5));
    }
    if pset.d() == 1 {
        let gaps = cyclic_gaps(pset);
        let value = if q.is_infinite() {
            gaps.iter().copied().fold(0.0, f64::max) / 2.0
        } else {
            moment_1d_exact(&gaps, q).powf(1.0 / q)
        };
        return Ok(RadiusEstimate::exact(value));
    }

    let mut scratch = Vec::new();
    let mut resolution = 48usize;
    for _ in 0..8 {
        let est = radius_lq_at_resolution(pset, q, resolution, &mut scratch)?;
        let bound = est.grid_error_bound.expect("grid path returns a bound");
        if bound <= rel_bound * est.value {
            return Ok(est);
        }
        // aim directly at the target resolution implied by this estimate
        let factor = if q.is_infinite() { 1.0 } else { 0.5 };
        let target_h = rel_bound * est.value / factor;
        let next = ((1.0 / target_h).ceil() as usize).max(resolution * 2);
        if next.pow(pset.d() as u32) > CELL_CAP {
            return Err(Error::ResourceGuard(format!(
                "cannot reach relative grid bound {rel_bound} within {CELL_CAP} cells"
            )));
        }
        resolution = next;
    }
    Err(Error::NonConvergence(
        "grid refinement failed to reach the requested bound".into(),
    ))
}

/// One grid evaluation at a fixed resolution.
fn radius_lq_at_resolution(
    pset: &TorusPointSet,
    q: f64,
    resolution: usize,
    scratch: &mut Vec<f64>,
) -> Result<RadiusEstimate> {
    let powers: &[f64] = if q.is_infinite() { &[] } else { &[q] };
    let m = eval_dist_grid_with(pset, true, resolution, powers, scratch)?;
    if q.is_infinite() {
        Ok(RadiusEstimate::grid_bounded(m.max_dist, m.h))
    } else {
        Ok(RadiusEstimate::grid_bounded(
            m.moments[0].powf(1.0 / q),
            0.5 * m.h,
        ))
    }
}

/// The full lattice `{i/m : 0 <= i < m}^d` with `n = m^d` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub d: usize,
    pub m: usize,
}

impl GridSpec {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d == 0 || m == 0 {
            return Err(Error::InvalidParam("GridSpec needs d >= 1 and m >= 1".into()));
        }
        if m.checked_pow(d as u32).is_none_or(|n| n > CELL_CAP) {
            return Err(Error::ResourceGuard(format!(
                "lattice of {m}^{d} nodes exceeds the cap"
            )));
        }
        Ok(Self { d, m })
    }

    pub fn n(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    pub fn lattice(&self) -> TorusPointSet {
        let (d, m) = (self.d, self.m);
        let n = self.n();
        let mut coords = Vec::with_capacity(n * d);
        let mut index = vec![0usize; d];
        for _ in 0..n {
            for &i in index.iter() {
                coords.push(i as f64 / m as f64);
            }
            for k in 0..d {
                index[k] += 1;
                if index[k] < m {
                    break;
                }
                index[k] = 0;
            }
        }
        PointSet::new(d, coords).expect("lattice nodes lie in [0,1]")
    }
}

/// Exact radius of the full lattice:
/// `(1/2) (d/(d+q))^(1/q) n^(-1/d)` for finite q, `(1/2) n^(-1/d)` for inf.
pub fn optimal_radius_exact(g: &GridSpec, q: f64) -> Result<f64> {
    validate_q(q)?;
    let n = g.n() as f64;
    let d = g.d as f64;
    let scale = 0.5 * n.powf(-1.0 / d);
    if q.is_infinite() {
        Ok(scale)
    } else {
        Ok(scale * (d / (d + q)).powf(1.0 / q))
    }
}

/// Exact q-th moment of the radius under n i.i.d. uniform nodes:
/// `2^-q n! / ((q/d + 1) .. (q/d + n))`, evaluated in log space.
pub fn expected_moment_exact(n: usize, d: usize, q: f64) -> Result<f64> {
    validate_q(q)?;
    if q.is_infinite() {
        return Err(Error::InvalidParam(
            "expected_moment_exact needs finite q".into(),
        ));
    }
    if n == 0 || d == 0 {
        return Err(Error::InvalidParam(
            "expected_moment_exact needs n >= 1 and d >= 1".into(),
        ));
    }
    let a = q / d as f64;
    let mut ln = -q * std::f64::consts::LN_2;
    for k in 1..=n {
        let k = k as f64;
        ln += (k / (a + k)).ln();
    }
    Ok(ln.exp())
}

/// Limit constant of the scaled moments: `2^-q Gamma(q/d + 1)`.
pub fn expected_moment_limit(d: usize, q: f64) -> Result<f64> {
    validate_q(q)?;
    if q.is_infinite() || d == 0 {
        return Err(Error::InvalidParam(
            "expected_moment_limit needs finite q and d >= 1".into(),
        ));
    }
    Ok((-q * std::f64::consts::LN_2 + ln_gamma(q / d as f64 + 1.0)).exp())
}

/// Monte Carlo means of the moments `int dist^q` for several finite `q` at
/// once, over i.i.d. uniform node sets. In d = 1 each trial is exact; in
/// d >= 2 each trial uses one grid pass whose relative radius bound is kept
/// at or below `rel_bound` (refining per trial when needed).
pub fn lip_moment_mc(
    n: usize,
    d: usize,
    qs: &[f64],
    trials: usize,
    base: RngStream,
    rel_bound: f64,
) -> Result<Vec<McEstimate>> {
    if trials < 100 {
        return Err(Error::InvalidParam("lip_moment_mc needs trials >= 100".into()));
    }
    for &q in qs {
        validate_q(q)?;
        if q.is_infinite() {
            return Err(Error::InvalidParam("lip_moment_mc needs finite q".into()));
        }
    }
    if d == 0 || qs.is_empty() {
        return Err(Error::InvalidParam("lip_moment_mc needs d >= 1 and some q".into()));
    }
    if n <= 1 {
        // the torus metric is translation invariant, so the integral of
        // dist^q against zero or one node does not depend on the sample:
        // d 2^-q / (q + d) for one node, 2^-q for none
        return Ok(qs
            .iter()
            .map(|&q| {
                let value = if n == 0 {
                    0.5f64.powf(q)
                } else {
                    d as f64 * 2.0f64.powf(-q) / (q + d as f64)
                };
                McEstimate {
                    mean: value,
                    std_error: 0.0,
                    trials,
                }
            })
            .collect());
    }

    let rows: Vec<Vec<f64>> = if d == 1 {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let pset = PointSet::sample_uniform(1, n, base.trial(t as u32));
                let gaps = cyclic_gaps(&pset);
                qs.iter().map(|&q| moment_1d_exact(&gaps, q)).collect()
            })
            .collect()
    } else {
        // the radius under the smallest q is the smallest, so its relative
        // bound is the binding one
        let q_min = qs.iter().copied().fold(f64::INFINITY, f64::min);
        let q_min_idx = qs.iter().position(|&q| q == q_min).expect("nonempty qs");
        let r_anchor = expected_moment_exact(n, d, q_min)?.powf(1.0 / q_min);
        // cheap coarse pass sizes the final grid to each trial's own radius
        let coarse_rel = 0.12;
        let coarse_res = ((1.0 / (2.0 * coarse_rel * 0.6 * r_anchor)).ceil() as usize).max(8);
        let final_res_for = |r_safe: f64| -> usize {
            let h = 2.0 * rel_bound * r_safe / (1.0 + rel_bound) * 0.995;
            ((1.0 / h).ceil() as usize).max(8)
        };
        if final_res_for(0.5 * r_anchor).pow(d as u32) > CELL_CAP {
            return Err(Error::ResourceGuard(format!(
                "moment grid at n={n}, d={d} exceeds the cell cap"
            )));
        }
        let coarse_powers = [q_min];
        (0..trials)
            .into_par_iter()
            .map_init(Vec::new, |scratch, t| {
                let pset = PointSet::sample_uniform(d, n, base.trial(t as u32));
                let mut res = coarse_res;
                let r_safe = loop {
                    let m = eval_dist_grid_with(&pset, true, res, &coarse_powers, scratch)
                        .expect("coarse resolution is far below the cap");
                    let r_hat = m.moments[0].powf(1.0 / q_min);
                    if 0.5 * m.h <= coarse_rel * r_hat {
                        break r_hat - 0.5 * m.h;
                    }
                    res *= 2; // unusually small radius for this sample
                };
                let mut res = final_res_for(r_safe);
                loop {
                    let m = eval_dist_grid_with(&pset, true, res, qs, scratch)
                        .expect("guarded above up to rare refinements");
                    let r_min = m.moments[q_min_idx].powf(1.0 / q_min);
                    if 0.5 * m.h <= rel_bound * r_min {
                        return m.moments;
                    }
                    res = res * 3 / 2;
                }
            })
            .collect()
    };

    let mut cols = vec![Vec::with_capacity(trials); qs.len()];
    for row in &rows {
        for (j, v) in row.iter().enumerate() {
            cols[j].push(*v);
        }
    }
    Ok(cols.iter().map(|c| McEstimate::from_samples(c)).collect())
}

/// Monte Carlo mean of the radius itself (any `q`, including inf).
pub fn expected_radius_mc_lip(
    n: usize,
    d: usize,
    q: f64,
    trials: usize,
    base: RngStream,
) -> Result<RadiusEstimate> {
    validate_q(q)?;
    if trials < 100 {
        return Err(Error::InvalidParam(
            "expected_radius_mc_lip needs trials >= 100".into(),
        ));
    }
    let samples: Result<Vec<f64>> = if d == 1 {
        Ok((0..trials)
            .into_par_iter()
            .map(|t| {
                let pset = PointSet::sample_uniform(1, n, base.trial(t as u32));
                let gaps = cyclic_gaps(&pset);
                if q.is_infinite() {
                    gaps.iter().copied().fold(0.0, f64::max) / 2.0
                } else {
                    moment_1d_exact(&gaps, q).powf(1.0 / q)
                }
            })
            .collect())
    } else {
        let pilot = if q.is_infinite() {
            // covering radius scale for uniform points
            0.5 * (((n.max(2)) as f64).ln() / n.max(1) as f64).powf(1.0 / d as f64)
        } else {
            expected_moment_exact(n, d, q)?.powf(1.0 / q)
        };
        let factor = if q.is_infinite() { 1.0 } else { 0.5 };
        let h_target = 0.05 * 0.85 * pilot / factor;
        let resolution = ((1.0 / h_target).ceil() as usize).max(8);
        if resolution.pow(d as u32) > CELL_CAP {
            return Err(Error::ResourceGuard(format!(
                "radius grid at n={n}, d={d} exceeds the cell cap"
            )));
        }
        let powers: Vec<f64> = if q.is_infinite() { vec![] } else { vec![q] };
        Ok((0..trials)
            .into_par_iter()
            .map_init(Vec::new, |scratch, t| {
                let pset = PointSet::sample_uniform(d, n, base.trial(t as u32));
                let m = eval_dist_grid_with(&pset, true, resolution, &powers, scratch)
                    .expect("resolution already guarded");
                if q.is_infinite() {
                    m.max_dist
                } else {
                    m.moments[0].powf(1.0 / q)
                }
            })
            .collect())
    };
    let est = McEstimate::from_samples(&samples?);
    Ok(RadiusEstimate::monte_carlo(est.mean, est.std_error))
}

/// Bracket for the expected radius of uniform approximation (`q = inf`):
/// `1/(4 m1) <= E[r] <= 2/m2` with
/// `m1 = min { m : m^d (H_{m^d} - 2) >= n }` and
/// `m2 = max { m : 2 m^d ln(m^d) <= n }` (natural logarithm).
pub fn lipinfty_bracket(n: usize, d: usize) -> Result<(f64, f64)> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParam(
            "lipinfty_bracket needs n >= 1 and d >= 1".into(),
        ));
    }
    let nf = n as f64;

    let mut harmonic = 0.0f64;
    let mut upto = 0usize;
    let extend = |k: usize, h: &mut f64, upto: &mut usize| {
        while *upto < k {
            *upto += 1;
            *h += 1.0 / *upto as f64;
        }
        *h
    };

    let mut m1 = None;
    for m in 1..=(4 * n + 4) {
        let ell = match m.checked_pow(d as u32) {
            Some(e) => e,
            None => break,
        };
        let h = extend(ell, &mut harmonic, &mut upto);
        if ell as f64 * (h - 2.0) >= nf {
            m1 = Some(m);
            break;
        }
    }
    let m1 = m1.ok_or_else(|| {
        Error::InvalidParam(format!("no m1 found for n={n}, d={d}"))
    })?;

    let mut m2 = None;
    for m in 1usize.. {
        let ell = m.pow(d as u32) as f64;
        if 2.0 * ell * ell.ln() <= nf {
            m2 = Some(m);
        } else {
            break;
        }
    }
    let m2 = m2.ok_or_else(|| {
        Error::InvalidParam(format!("no valid m2 exists for n={n} (n too small)"))
    })?;

    let lower = 1.0 / (4.0 * m1 as f64);
    let upper = 2.0 / m2 as f64;
    if lower >= upper {
        return Err(Error::InvariantViolation(format!(
            "bracket ordering failed at n={n}, d={d}: ({lower}, {upper})"
        )));
    }
    Ok((lower, upper))
}
