//! Point-set machinery for multivariate Sobolev approximation: separation
//! and covering statistics on the cube, quasi-uniform thinning of random
//! samples, empty-ball witnesses, and theoretical reference rates.
//!
//! No computable norm equivalent exists for these classes in d > 1, so this
//! module verifies the mechanisms that drive the rates (mesh ratios, the
//! thinning construction, covering radii) rather than a radius functional.

use crate::error::{Error, Result};
use crate::estimate::RadiusEstimate;
use crate::grid::{dist_max, eval_dist_grid_with, CELL_CAP};
use crate::lipschitz;
use crate::points::PointSet;
use crate::rng::RngStream;

/// Parameters of the approximation problem: smoothness `s`, dimension `d`,
/// and integrability exponents `p`, `q`. Requires `s > d/p` so that the
/// functions are continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevParamsMD {
    pub s: u32,
    pub d: u32,
    pub p: f64,
    pub q: f64,
}

impl SobolevParamsMD {
    pub fn new(s: u32, d: u32, p: f64, q: f64) -> Result<Self> {
        if s == 0 || d == 0 {
            return Err(Error::InvalidParam("need s >= 1 and d >= 1".into()));
        }
        for (name, v) in [("p", p), ("q", q)] {
            if v.is_nan() || v < 1.0 {
                return Err(Error::InvalidParam(format!(
                    "{name} must lie in [1, inf], got {v}"
                )));
            }
        }
        let d_over_p = if p.is_infinite() { 0.0 } else { d as f64 / p };
        if s as f64 <= d_over_p {
            return Err(Error::InvalidParam(format!(
                "continuity requires s > d/p (s={s}, d={d}, p={p})"
            )));
        }
        Ok(Self { s, d, p, q })
    }

    fn inv(x: f64) -> f64 {
        if x.is_infinite() {
            0.0
        } else {
            1.0 / x
        }
    }

    /// `alpha = s/d - 1/p + 1/q`.
    pub fn alpha(&self) -> f64 {
        self.s as f64 / self.d as f64 - Self::inv(self.p) + Self::inv(self.q)
    }
}

/// Separation distance, covering radius and their ratio, in the
/// non-periodic maximum metric on the cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshStats {
    pub separation: f64,
    pub covering: f64,
    /// The covering radius comes from a grid search in d >= 2; the grid
    /// value underestimates the truth by at most this amount (0 in d = 1).
    pub covering_error_bound: f64,
    pub mesh_ratio: f64,
    /// Set when duplicate points force separation 0.
    pub degenerate: bool,
}

/// Exact separation by pairwise scan; covering radius exact in d = 1 and by
/// grid search with a Lipschitz bound otherwise.
pub fn mesh_stats(pset: &PointSet) -> Result<MeshStats> {
    let n = pset.len();
    if n < 2 {
        return Err(Error::InvalidParam(
            "mesh_stats needs at least 2 points".into(),
        ));
    }
    let mut separation = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist_max(pset.point(i), pset.point(j), false);
            if d < separation {
                separation = d;
            }
        }
    }

    let (covering, bound) = covering_radius_cube(pset)?;
    let degenerate = separation == 0.0;
    Ok(MeshStats {
        separation,
        covering,
        covering_error_bound: bound,
        mesh_ratio: if degenerate {
            f64::INFINITY
        } else {
            covering / separation
        },
        degenerate,
    })
}

/// Covering radius on the cube: `max_y min_i |y - x_i|_inf`.
fn covering_radius_cube(pset: &PointSet) -> Result<(f64, f64)> {
    if pset.d() == 1 {
        let mut xs: Vec<f64> = pset.coords().to_vec();
        xs.sort_unstable_by(f64::total_cmp);
        let mut cov = xs[0].max(1.0 - xs[xs.len() - 1]);
        for w in xs.windows(2) {
            cov = cov.max((w[1] - w[0]) / 2.0);
        }
        return Ok((cov, 0.0));
    }
    let mut scratch = Vec::new();
    let mut resolution = 64usize;
    for _ in 0..6 {
        let m = eval_dist_grid_with(pset, false, resolution, &[], &mut scratch)?;
        if 0.5 * m.h <= 0.02 * m.max_dist {
            return Ok((m.max_dist, 0.5 * m.h));
        }
        let next = ((2.0 / (0.04 * m.max_dist)).ceil() as usize).max(resolution * 2);
        if next.pow(pset.d() as u32) > CELL_CAP {
            // return the best available estimate with its honest bound
            return Ok((m.max_dist, 0.5 * m.h));
        }
        resolution = next;
    }
    let m = eval_dist_grid_with(pset, false, resolution, &[], &mut scratch)?;
    Ok((m.max_dist, 0.5 * m.h))
}

/// A quasi-uniform subset extracted from a larger point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Thinning {
    pub subset: PointSet,
    /// Number of boxes per axis; the subset has `m^d` points with
    /// covering <= 2/(3m) <= separation.
    pub m: usize,
}

/// Split the cube into `m^d` boxes and each box into 3^d cells, with `m`
/// maximal such that `l = (3m)^d` satisfies `(alpha + 1) l ln l <= n`.
/// If the central cell of every box contains a point, select the first such
/// point per box (lowest index) and return the subset; otherwise `None`.
pub fn thin_to_quasi_uniform(pset: &PointSet, alpha: f64, n: usize) -> Result<Option<Thinning>> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParam("thinning needs alpha > 0".into()));
    }
    let d = pset.d();
    let mut m = 0usize;
    loop {
        let next = m + 1;
        let ell = match (3 * next).checked_pow(d as u32) {
            Some(e) => e as f64,
            None => break,
        };
        if (alpha + 1.0) * ell * ell.ln() <= n as f64 {
            m = next;
        } else {
            break;
        }
    }
    if m == 0 {
        return Ok(None);
    }

    let boxes = m.pow(d as u32);
    let mut selected: Vec<Option<usize>> = vec![None; boxes];
    let mf = m as f64;
    let tf = (3 * m) as f64;
    for (idx, p) in pset.iter_points().enumerate() {
        let mut central = true;
        let mut flat = 0usize;
        let mut stride = 1usize;
        for &x in p {
            let c = ((x * mf) as usize).min(m - 1);
            let cell = ((x * tf) as usize).min(3 * m - 1);
            if cell != 3 * c + 1 {
                central = false;
                break;
            }
            flat += c * stride;
            stride *= m;
        }
        if central && selected[flat].is_none() {
            selected[flat] = Some(idx);
        }
    }
    if selected.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut coords = Vec::with_capacity(boxes * d);
    for s in selected {
        coords.extend_from_slice(pset.point(s.expect("checked above")));
    }
    let subset = PointSet::new(d, coords)?;
    Ok(Some(Thinning { subset, m }))
}

/// Theoretical rate value for plotting and normalization: the optimal-node
/// rate `n^(-s/d + (1/p - 1/q)_+)`, or the random-node rate
/// `(n / ln n)^(-alpha)` which is only established for `p <= q`.
pub fn rate_surrogate_md(n: usize, params: &SobolevParamsMD, random: bool) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParam("rate_surrogate_md needs n >= 2".into()));
    }
    let nf = n as f64;
    let inv = SobolevParamsMD::inv;
    if random {
        if params.p > params.q {
            return Err(Error::ConjectureOnly(
                "the random-information rate for p > q is conjectured, not proven".into(),
            ));
        }
        Ok((nf / nf.ln()).powf(-params.alpha()))
    } else {
        let gain = (inv(params.p) - inv(params.q)).max(0.0);
        Ok(nf.powf(-(params.s as f64) / params.d as f64 + gain))
    }
}

/// Monte Carlo mean of the largest empty-ball radius of a uniform sample,
/// measured as the covering radius on the torus (in d = 1 this is exactly
/// half the largest cyclic gap).
pub fn empirical_gap_witness(
    n: usize,
    d: usize,
    trials: usize,
    base: RngStream,
) -> Result<RadiusEstimate> {
    if trials < 100 {
        return Err(Error::InvalidParam(
            "empirical_gap_witness needs trials >= 100".into(),
        ));
    }
    lipschitz::expected_radius_mc_lip(n, d, f64::INFINITY, trials, base)
}
