//! Experiment harness: configuration, execution, and machine-readable
//! output.
//!
//! Each experiment family is a subcommand of the `radinfo` binary. A run
//! writes one table row per (parameter tuple, statistic) with a fixed
//! column schema, as CSV (RFC-4180-style, header mandatory, floats with 17
//! significant digits) or as a JSON array mirroring the same schema. Rows
//! echo the full parameter tuple and master seed, and all randomness flows
//! through indexed streams, so re-running a config reproduces the output
//! byte for byte.
//!
//! Exit codes: 0 success, 1 usage error, 2 invariant violation,
//! 3 resource guard.

use crate::coupon;
use crate::ellipsoid::{self, AxisLaw, Regime};
use crate::error::{Error, Result};
use crate::l1;
use crate::lipschitz;
use crate::rng::RngStream;
use crate::sobolev1d::{self, SobolevParams1D};
use crate::sobolev_md::{self, SobolevParamsMD};
use crate::spacings::{power_sum, sample_uniform_sorted, spacings};
use crate::stats::{fit_rate, mc_run_multi, McEstimate, XTransform};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "RADINFO_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitTransform {
    /// x = log n
    LogN,
    /// x = log(n / log n)
    LogNOverLogN,
}

impl From<FitTransform> for XTransform {
    fn from(f: FitTransform) -> Self {
        match f {
            FitTransform::LogN => XTransform::LogN,
            FitTransform::LogNOverLogN => XTransform::LogNOverLogN,
        }
    }
}

/// A fully validated experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub master_seed: u64,
    pub trials: usize,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
    pub fit: Option<XTransform>,
}

#[derive(Debug, Clone)]
pub enum Experiment {
    Spacings {
        n_grid: Vec<u64>,
        s_values: Vec<u32>,
    },
    Coupon {
        ell_grid: Vec<u64>,
        c_values: Vec<f64>,
    },
    Sobolev1d {
        params: SobolevParams1D,
        n_grid: Vec<u64>,
        integration: bool,
    },
    Lipschitz {
        d: usize,
        q: f64,
        n_grid: Vec<u64>,
    },
    SobolevMd {
        d: usize,
        alpha: f64,
        n_grid: Vec<u64>,
        rate_params: Option<SobolevParamsMD>,
    },
    L1 {
        m: usize,
        n_grid: Vec<u64>,
        restarts: usize,
        sparsity: Option<usize>,
    },
    Ellipsoid {
        law: AxisLaw,
        m: usize,
        n_grid: Vec<u64>,
        m_grid: Option<Vec<u64>>,
    },
}

impl Experiment {
    fn name(&self) -> &'static str {
        match self {
            Experiment::Spacings { .. } => "spacings",
            Experiment::Coupon { .. } => "coupon",
            Experiment::Sobolev1d { .. } => "sobolev1d",
            Experiment::Lipschitz { .. } => "lipschitz",
            Experiment::SobolevMd { .. } => "sobolev-md",
            Experiment::L1 { .. } => "l1",
            Experiment::Ellipsoid { .. } => "ellipsoid",
        }
    }
}

/// One output row. Optional fields print as empty CSV cells / JSON nulls.
#[derive(Debug, Clone, Default)]
pub struct Row {
    pub experiment: String,
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub s: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub m: Option<u64>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: Option<f64>,
    pub exact_value: Option<f64>,
    pub theory_rate: Option<f64>,
    pub ratio: Option<f64>,
}

const HEADER: [&str; 16] = [
    "experiment",
    "n",
    "d",
    "p",
    "q",
    "s",
    "alpha",
    "beta",
    "m",
    "trials",
    "seed",
    "estimate",
    "std_error",
    "exact_value",
    "theory_rate",
    "ratio",
];

fn fmt_float(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn fmt_opt_int(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn json_float(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "\"inf\"".into()
        } else {
            "\"-inf\"".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

fn json_opt_float(v: Option<f64>) -> String {
    v.map(json_float).unwrap_or_else(|| "null".into())
}

fn json_opt_int(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "null".into())
}

impl Row {
    fn csv_line(&self) -> String {
        [
            self.experiment.clone(),
            fmt_opt_int(self.n),
            fmt_opt_int(self.d),
            fmt_opt_float(self.p),
            fmt_opt_float(self.q),
            fmt_opt_float(self.s),
            fmt_opt_float(self.alpha),
            fmt_opt_float(self.beta),
            fmt_opt_int(self.m),
            fmt_opt_int(self.trials),
            self.seed.to_string(),
            fmt_float(self.estimate),
            fmt_opt_float(self.std_error),
            fmt_opt_float(self.exact_value),
            fmt_opt_float(self.theory_rate),
            fmt_opt_float(self.ratio),
        ]
        .join(",")
    }

    fn json_object(&self) -> String {
        format!(
            "{{\"experiment\":\"{}\",\"n\":{},\"d\":{},\"p\":{},\"q\":{},\"s\":{},\
             \"alpha\":{},\"beta\":{},\"m\":{},\"trials\":{},\"seed\":{},\
             \"estimate\":{},\"std_error\":{},\"exact_value\":{},\
             \"theory_rate\":{},\"ratio\":{}}}",
            self.experiment,
            json_opt_int(self.n),
            json_opt_int(self.d),
            json_opt_float(self.p),
            json_opt_float(self.q),
            json_opt_float(self.s),
            json_opt_float(self.alpha),
            json_opt_float(self.beta),
            json_opt_int(self.m),
            json_opt_int(self.trials),
            self.seed,
            json_float(self.estimate),
            json_opt_float(self.std_error),
            json_opt_float(self.exact_value),
            json_opt_float(self.theory_rate),
            json_opt_float(self.ratio),
        )
    }
}

/// Streaming writer so that a resource-guard abort still leaves the rows
/// produced so far on disk (and valid JSON framing).
struct Sink {
    w: BufWriter<File>,
    format: OutputFormat,
    rows: usize,
}

impl Sink {
    fn create(path: &Path, format: OutputFormat) -> Result<Self> {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        match format {
            OutputFormat::Csv => writeln!(w, "{}", HEADER.join(","))?,
            OutputFormat::Json => write!(w, "[")?,
        }
        Ok(Self { w, format, rows: 0 })
    }

    fn write(&mut self, row: &Row) -> Result<()> {
        match self.format {
            OutputFormat::Csv => writeln!(self.w, "{}", row.csv_line())?,
            OutputFormat::Json => {
                if self.rows > 0 {
                    write!(self.w, ",")?;
                }
                write!(self.w, "\n{}", row.json_object())?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        if self.format == OutputFormat::Json {
            writeln!(self.w, "\n]")?;
        }
        self.w.flush()?;
        Ok(())
    }
}

/// Execute a validated configuration, writing its table to the configured
/// path. Returns the number of rows written.
pub fn run(config: &ExperimentConfig) -> Result<usize> {
    let mut sink = Sink::create(&config.output_path, config.output_format)?;
    let result = dispatch(config, &mut sink);
    // flush whatever was produced, even on failure
    sink.finish()?;
    let fit_points = result?;
    if let Some(transform) = config.fit {
        let fit = fit_rate(&fit_points, transform)?;
        println!(
            "fit: slope={:.6} intercept={:.6} r_squared={:.6}",
            fit.slope, fit.intercept, fit.r_squared
        );
    }
    Ok(sink.rows)
}

fn dispatch(config: &ExperimentConfig, sink: &mut Sink) -> Result<Vec<(f64, f64)>> {
    match &config.experiment {
        Experiment::Spacings { n_grid, s_values } => {
            run_spacings(config, n_grid, s_values, sink)
        }
        Experiment::Coupon { ell_grid, c_values } => {
            run_coupon(config, ell_grid, c_values, sink)
        }
        Experiment::Sobolev1d {
            params,
            n_grid,
            integration,
        } => run_sobolev1d(config, *params, n_grid, *integration, sink),
        Experiment::Lipschitz { d, q, n_grid } => run_lipschitz(config, *d, *q, n_grid, sink),
        Experiment::SobolevMd {
            d,
            alpha,
            n_grid,
            rate_params,
        } => run_sobolev_md(config, *d, *alpha, n_grid, rate_params.as_ref(), sink),
        Experiment::L1 {
            m,
            n_grid,
            restarts,
            sparsity,
        } => run_l1(config, *m, n_grid, *restarts, *sparsity, sink),
        Experiment::Ellipsoid {
            law,
            m,
            n_grid,
            m_grid,
        } => run_ellipsoid(config, law, *m, n_grid, m_grid.as_deref(), sink),
    }
}

fn base_row(config: &ExperimentConfig, label: String) -> Row {
    Row {
        experiment: label,
        seed: config.master_seed,
        trials: Some(config.trials as u64),
        ..Row::default()
    }
}

fn run_spacings(
    config: &ExperimentConfig,
    n_grid: &[u64],
    s_values: &[u32],
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let mut fit_points = Vec::new();
    for (row_id, &n) in n_grid.iter().enumerate() {
        let n = n as usize;
        let base = RngStream::new(config.master_seed, row_id as u64);
        let cols = mc_run_multi(base, config.trials, s_values.len(), |stream| {
            let gaps = spacings(&sample_uniform_sorted(n, stream));
            s_values.iter().map(|&s| power_sum(&gaps, s as f64)).collect()
        });
        for (j, &s) in s_values.iter().enumerate() {
            let est = McEstimate::from_samples(&cols[j]);
            let exact = crate::spacings::expected_power_sum_exact(n, s);
            let theory = (n as f64).powi(-(s as i32));
            let mut row = base_row(config, "spacings".into());
            row.n = Some(n as u64);
            row.s = Some(s as f64);
            row.estimate = est.mean;
            row.std_error = Some(est.std_error);
            row.exact_value = Some(exact);
            row.theory_rate = Some(theory);
            row.ratio = Some(est.mean / theory);
            sink.write(&row)?;
            if j == 0 {
                fit_points.push((n as f64, est.mean));
            }
        }
    }
    Ok(fit_points)
}

fn run_coupon(
    config: &ExperimentConfig,
    ell_grid: &[u64],
    c_values: &[f64],
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let mut fit_points = Vec::new();
    for (row_id, &ell) in ell_grid.iter().enumerate() {
        if ell < 1 {
            return Err(Error::InvalidParam("coupon needs ell >= 1".into()));
        }
        let base = RngStream::new(config.master_seed, row_id as u64);
        let samples = crate::stats::mc_run(base, config.trials, |s| {
            coupon::coupon_simulate(ell, s) as f64
        });
        let est = McEstimate::from_samples(&samples);
        let stats = coupon::coupon_stats(ell);
        // the variance bound is an invariant at serious trial counts
        if config.trials >= 10_000 && est.sample_variance() > stats.variance_bound * 1.05 {
            return Err(Error::InvariantViolation(format!(
                "coupon variance {} exceeds bound {} at ell={ell}",
                est.sample_variance(),
                stats.variance_bound
            )));
        }
        let theory = ell as f64 * (ell as f64).ln();
        let mut row = base_row(config, "coupon:mean".into());
        row.n = Some(ell);
        row.estimate = est.mean;
        row.std_error = Some(est.std_error);
        row.exact_value = Some(stats.mean);
        row.theory_rate = (ell >= 2).then_some(theory);
        row.ratio = (ell >= 2).then(|| est.mean / theory);
        sink.write(&row)?;
        fit_points.push((ell as f64, est.mean));

        if ell >= 2 {
            for &c in c_values {
                let (threshold, bound) = coupon::coupon_tail_bound(ell, c);
                let exceed = samples.iter().filter(|&&t| t > threshold as f64).count();
                let freq = exceed as f64 / samples.len() as f64;
                let mut row = base_row(config, format!("coupon:tail:c={c}"));
                row.n = Some(ell);
                row.estimate = freq;
                row.std_error =
                    Some((freq * (1.0 - freq) / samples.len() as f64).sqrt());
                row.theory_rate = Some(bound);
                row.ratio = (bound > 0.0).then(|| freq / bound);
                sink.write(&row)?;
            }
        }
    }
    Ok(fit_points)
}

fn run_sobolev1d(
    config: &ExperimentConfig,
    params: SobolevParams1D,
    n_grid: &[u64],
    integration: bool,
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let label = if integration {
        "sobolev1d:integration"
    } else {
        "sobolev1d"
    };
    let mut fit_points = Vec::new();
    for (row_id, &n) in n_grid.iter().enumerate() {
        let n = n as usize;
        let base = RngStream::new(config.master_seed, row_id as u64);
        let est = sobolev1d::expected_radius_mc_1d(n, params, config.trials, base)?;
        let theory = sobolev1d_theory(n, params);
        let mut row = base_row(config, label.into());
        row.n = Some(n as u64);
        row.p = Some(params.p);
        row.q = Some(params.q);
        row.estimate = est.value;
        row.std_error = est.std_error;
        row.theory_rate = theory;
        row.ratio = theory.map(|t| est.value / t);
        sink.write(&row)?;
        fit_points.push((n as f64, est.value));
    }
    Ok(fit_points)
}

fn sobolev1d_theory(n: usize, params: SobolevParams1D) -> Option<f64> {
    let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
    let nf = n as f64;
    if params.p > params.q {
        Some(1.0 / nf)
    } else if n >= 2 {
        let e = 1.0 - inv(params.p) + inv(params.q);
        Some((nf / nf.ln()).powf(-e))
    } else {
        None
    }
}

fn run_lipschitz(
    config: &ExperimentConfig,
    d: usize,
    q: f64,
    n_grid: &[u64],
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let mut fit_points = Vec::new();
    for (row_id, &n) in n_grid.iter().enumerate() {
        let n = n as usize;
        let base = RngStream::new(config.master_seed, 2 * row_id as u64);
        let est = lipschitz::expected_radius_mc_lip(n, d, q, config.trials, base)?;
        let nf = n as f64;
        let theory = if q.is_infinite() {
            (n >= 2).then(|| (nf / nf.ln()).powf(-1.0 / d as f64))
        } else {
            Some(nf.powf(-1.0 / d as f64))
        };
        let mut row = base_row(config, "lipschitz".into());
        row.n = Some(n as u64);
        row.d = Some(d as u64);
        row.q = Some(q);
        row.estimate = est.value;
        row.std_error = est.std_error;
        // E[r] has a closed form exactly when q = 1 (the radius is the moment)
        row.exact_value = (q == 1.0).then(|| {
            lipschitz::expected_moment_exact(n, d, q).expect("validated parameters")
        });
        row.theory_rate = theory;
        row.ratio = theory.map(|t| est.value / t);
        sink.write(&row)?;
        fit_points.push((nf, est.value));

        if !q.is_infinite() {
            let base = RngStream::new(config.master_seed, 2 * row_id as u64 + 1);
            let moments = lipschitz::lip_moment_mc(n, d, &[q], config.trials, base, 0.05)?;
            let exact = lipschitz::expected_moment_exact(n, d, q)?;
            let limit = lipschitz::expected_moment_limit(d, q)?;
            let theory = limit * nf.powf(-q / d as f64);
            let mut row = base_row(config, "lipschitz:moment".into());
            row.n = Some(n as u64);
            row.d = Some(d as u64);
            row.q = Some(q);
            row.estimate = moments[0].mean;
            row.std_error = Some(moments[0].std_error);
            row.exact_value = Some(exact);
            row.theory_rate = Some(theory);
            row.ratio = Some(moments[0].mean / theory);
            sink.write(&row)?;
        } else {
            // bracket rows for uniform approximation
            if let Ok((lower, upper)) = lipschitz::lipinfty_bracket(n, d) {
                for (tag, bound) in [("lower", lower), ("upper", upper)] {
                    let mut row = base_row(config, format!("lipschitz:bracket_{tag}"));
                    row.n = Some(n as u64);
                    row.d = Some(d as u64);
                    row.q = Some(q);
                    row.estimate = bound;
                    row.exact_value = Some(bound);
                    sink.write(&row)?;
                }
            }
        }
    }
    Ok(fit_points)
}

fn run_sobolev_md(
    config: &ExperimentConfig,
    d: usize,
    alpha: f64,
    n_grid: &[u64],
    rate_params: Option<&SobolevParamsMD>,
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let mut fit_points = Vec::new();
    for (row_id, &n) in n_grid.iter().enumerate() {
        let n = n as usize;
        let nf = n as f64;
        let base = RngStream::new(config.master_seed, 3 * row_id as u64);
        let witness = sobolev_md::empirical_gap_witness(n, d, config.trials, base)?;
        let theory = (n >= 2).then(|| (nf.ln() / nf).powf(1.0 / d as f64));
        let mut row = base_row(config, "sobolev-md:witness".into());
        row.n = Some(n as u64);
        row.d = Some(d as u64);
        row.alpha = Some(alpha);
        row.estimate = witness.value;
        row.std_error = witness.std_error;
        row.theory_rate = theory;
        row.ratio = theory.map(|t| witness.value / t);
        sink.write(&row)?;
        fit_points.push((nf, witness.value));

        // thinning success frequency and worst mesh ratio across trials
        let base = RngStream::new(config.master_seed, 3 * row_id as u64 + 1);
        let results: Vec<(bool, f64)> = (0..config.trials)
            .map(|t| {
                let pset =
                    crate::points::PointSet::sample_uniform(d, n, base.trial(t as u32));
                match sobolev_md::thin_to_quasi_uniform(&pset, alpha, n)? {
                    Some(thin) => {
                        let stats = sobolev_md::mesh_stats(&thin.subset)?;
                        if stats.mesh_ratio > 1.0 {
                            return Err(Error::InvariantViolation(format!(
                                "thinning produced mesh ratio {} > 1",
                                stats.mesh_ratio
                            )));
                        }
                        Ok((true, stats.mesh_ratio))
                    }
                    None => Ok((false, f64::NAN)),
                }
            })
            .collect::<Result<_>>()?;
        let successes = results.iter().filter(|r| r.0).count();
        let freq = successes as f64 / config.trials as f64;
        let guarantee = thinning_guarantee(d, alpha, n);
        let mut row = base_row(config, "sobolev-md:thinning".into());
        row.n = Some(n as u64);
        row.d = Some(d as u64);
        row.alpha = Some(alpha);
        row.estimate = freq;
        row.std_error = Some((freq * (1.0 - freq) / config.trials as f64).sqrt());
        row.theory_rate = guarantee;
        row.ratio = guarantee.map(|g| if g > 0.0 { freq / g } else { f64::NAN });
        sink.write(&row)?;

        if successes > 0 {
            let worst = results
                .iter()
                .filter(|r| r.0)
                .map(|r| r.1)
                .fold(0.0, f64::max);
            let mut row = base_row(config, "sobolev-md:mesh_ratio_max".into());
            row.n = Some(n as u64);
            row.d = Some(d as u64);
            row.alpha = Some(alpha);
            row.estimate = worst;
            row.theory_rate = Some(1.0);
            row.ratio = Some(worst);
            sink.write(&row)?;
        }

        if let Some(prm) = rate_params {
            if let Ok(rate) = sobolev_md::rate_surrogate_md(n.max(2), prm, true) {
                let mut row = base_row(config, "sobolev-md:rate".into());
                row.n = Some(n as u64);
                row.d = Some(prm.d as u64);
                row.p = Some(prm.p);
                row.q = Some(prm.q);
                row.s = Some(prm.s as f64);
                row.estimate = rate;
                row.theory_rate = Some(rate);
                row.ratio = Some(1.0);
                sink.write(&row)?;
            }
        }
    }
    Ok(fit_points)
}

/// Success-probability floor `1 - l^(-alpha)` of the thinning construction,
/// when a subdivision exists.
fn thinning_guarantee(d: usize, alpha: f64, n: usize) -> Option<f64> {
    let mut m = 0usize;
    loop {
        let next = m + 1;
        let ell = (3 * next).checked_pow(d as u32)? as f64;
        if (alpha + 1.0) * ell * ell.ln() <= n as f64 {
            m = next;
        } else {
            break;
        }
    }
    if m == 0 {
        return None;
    }
    let ell = (3 * m).pow(d as u32) as f64;
    Some(1.0 - ell.powf(-alpha))
}

fn run_l1(
    config: &ExperimentConfig,
    m: usize,
    n_grid: &[u64],
    restarts: usize,
    sparsity: Option<usize>,
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let n_grid_usize: Vec<usize> = n_grid.iter().map(|&n| n as usize).collect();
    let base = RngStream::new(config.master_seed, 1 << 20);
    let rows = l1::kgg_rate_check(m, &n_grid_usize, config.trials, restarts, base)?;
    let mut fit_points = Vec::new();
    for r in &rows {
        let mut row = base_row(config, "l1:section".into());
        row.n = Some(r.n as u64);
        row.m = Some(m as u64);
        row.estimate = r.mean_lower;
        row.std_error = Some(r.std_error);
        row.exact_value = r.mean_exact;
        row.theory_rate = Some(r.rate);
        row.ratio = Some(r.ratio);
        sink.write(&row)?;
        fit_points.push((r.n as f64, r.mean_lower));
    }
    if let Some(s) = sparsity {
        for (row_id, &n) in n_grid_usize.iter().enumerate() {
            let base = RngStream::new(config.master_seed, (2 << 20) + row_id as u64);
            let rate = l1::sparse_recovery_experiment(m, n, s, config.trials, base)?;
            let mut row = base_row(config, "l1:recovery".into());
            row.n = Some(n as u64);
            row.m = Some(m as u64);
            row.s = Some(s as f64);
            row.estimate = rate;
            row.std_error = Some((rate * (1.0 - rate) / config.trials as f64).sqrt());
            sink.write(&row)?;
        }
    }
    Ok(fit_points)
}

fn run_ellipsoid(
    config: &ExperimentConfig,
    law: &AxisLaw,
    m: usize,
    n_grid: &[u64],
    m_grid: Option<&[u64]>,
    sink: &mut Sink,
) -> Result<Vec<(f64, f64)>> {
    let prediction = ellipsoid::classify_regime(law);
    eprintln!(
        "regime: {:?} (valid for {})",
        prediction.regime, prediction.validity_range
    );
    let sigma = law.semi_axes(m)?;
    let mut fit_points = Vec::new();
    for (row_id, &n) in n_grid.iter().enumerate() {
        let n = n as usize;
        if n >= m {
            return Err(Error::InvalidParam(format!(
                "ellipsoid experiment needs n < m, got n={n}, m={m}"
            )));
        }
        let base = RngStream::new(config.master_seed, row_id as u64);
        let est = ellipsoid::expected_radius_mc_ell(&sigma, n, config.trials, base)?;
        // the mean of per-trial radii must respect the sandwich itself
        if est.value > sigma.axis(1) + 1e-10 || est.value < sigma.axis(n + 1) - 1e-10 {
            return Err(Error::InvariantViolation(format!(
                "mean radius {} escapes [sigma_(n+1), sigma_1] = [{}, {}]",
                est.value,
                sigma.axis(n + 1),
                sigma.axis(1)
            )));
        }
        let theory = match prediction.regime {
            Regime::OptimalOrder => sigma.axis(n + 1),
            Regime::SqrtLogPenalty => sigma.axis(n + 1) * ((n as f64 + 1.0).ln()).sqrt(),
            Regime::UselessBelowCm => sigma.axis(1),
        };
        let mut row = base_row(config, "ellipsoid".into());
        row.n = Some(n as u64);
        row.m = Some(m as u64);
        row.alpha = Some(law.alpha);
        row.beta = Some(law.beta);
        row.estimate = est.value;
        row.std_error = est.std_error;
        row.theory_rate = Some(theory);
        row.ratio = Some(est.value / theory);
        sink.write(&row)?;
        fit_points.push((n as f64, est.value));
    }

    if let Some(m_grid) = m_grid {
        let n = n_grid.first().map(|&n| n as usize).unwrap_or(1);
        let grid: Vec<usize> = m_grid.iter().map(|&v| v as usize).collect();
        let base = RngStream::new(config.master_seed, 1 << 16);
        let table = ellipsoid::dichotomy_experiment(law, &grid, n, config.trials, base)?;
        if let Some(caveat) = &table.caveat {
            eprintln!("caveat: {caveat}");
        }
        for r in &table.rows {
            let mut row = base_row(config, "ellipsoid:dichotomy".into());
            row.n = Some(n as u64);
            row.m = Some(r.m as u64);
            row.alpha = Some(law.alpha);
            row.beta = Some(law.beta);
            row.estimate = r.mean_radius;
            row.std_error = Some(r.std_error);
            row.theory_rate = Some(r.sigma1);
            row.ratio = Some(r.ratio_to_sigma1);
            sink.write(&row)?;
        }
    }
    Ok(fit_points)
}

// ---------------------------------------------------------------------------
// command-line front end
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "radinfo",
    version,
    about = "Experiments comparing random information with optimal information"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Master seed; all randomness derives from it through indexed streams
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo trials per grid point
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Output file (default: $RADINFO_OUT_DIR or the working directory)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Fit a log-log rate across the grid and print the slope
    #[arg(long, value_enum)]
    fit: Option<FitTransform>,
}

#[derive(Subcommand)]
enum Command {
    /// Spacing power sums of uniform order statistics vs the exact moments
    Spacings {
        #[command(flatten)]
        common: CommonArgs,
        /// grid of point counts: "a..b", "a..b:geometric:k", or a comma list
        #[arg(long)]
        n: String,
        /// power-sum exponents
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
        s: Vec<u32>,
    },
    /// Coupon-collector waiting times: exact mean and tail bounds
    Coupon {
        #[command(flatten)]
        common: CommonArgs,
        /// grid of label counts
        #[arg(long)]
        ell: String,
        /// tail constants
        #[arg(long, value_delimiter = ',', default_values_t = [1.5f64, 2.0, 3.0])]
        c: Vec<f64>,
    },
    /// Radius surrogates for L_q-approximation on W^1_p([0,1])
    Sobolev1d {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_parser = parse_exponent)]
        p: f64,
        #[arg(long, value_parser = parse_exponent)]
        q: f64,
        #[arg(long)]
        n: String,
        /// run the integration variant (forces q = 1)
        #[arg(long)]
        integration: bool,
    },
    /// Radius of standard information for periodic Lipschitz classes
    Lipschitz {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_parser = parse_exponent)]
        q: f64,
        #[arg(long)]
        n: String,
    },
    /// Covering-radius witnesses and quasi-uniform thinning
    SobolevMd {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// thinning exponent
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        n: String,
        /// optional smoothness for a reference rate row
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, value_parser = parse_exponent)]
        p: Option<f64>,
        #[arg(long, value_parser = parse_exponent)]
        q: Option<f64>,
    },
    /// Section radii of the l1 ball under Gaussian information
    L1 {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 30)]
        restarts: usize,
        /// also run the sparse-recovery success experiment
        #[arg(long)]
        sparsity: Option<usize>,
    },
    /// Circumradius of random ellipsoid sections
    Ellipsoid {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: String,
        /// truncation grid for the dichotomy table (uses the first n)
        #[arg(long)]
        m_grid: Option<String>,
    },
}

fn parse_exponent(s: &str) -> std::result::Result<f64, String> {
    let v = match s.to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "oo" => f64::INFINITY,
        other => other
            .parse::<f64>()
            .map_err(|e| format!("not a number: {e}"))?,
    };
    if v.is_nan() || v < 1.0 {
        return Err(format!("exponent must lie in [1, inf], got {s}"));
    }
    Ok(v)
}

/// Parse an integer grid: `a..b` (inclusive), `a..b:geometric:k`, or a
/// comma-separated list.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    let bad = |msg: &str| Error::InvalidParam(format!("bad grid '{spec}': {msg}"));
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((range, tail)) = spec.split_once(":geometric:") {
        let (a, b) = parse_range(range).ok_or_else(|| bad("expected a..b before :geometric:"))?;
        let k: usize = tail.parse().map_err(|_| bad("bad point count"))?;
        if k < 2 || a == 0 || b <= a {
            return Err(bad("geometric grids need a >= 1, b > a, k >= 2"));
        }
        let (la, lb) = ((a as f64).ln(), (b as f64).ln());
        let mut grid: Vec<u64> = (0..k)
            .map(|i| {
                let t = i as f64 / (k - 1) as f64;
                (la + t * (lb - la)).exp().round() as u64
            })
            .collect();
        grid.dedup();
        return Ok(grid);
    }
    if let Some((a, b)) = parse_range(spec) {
        if b < a {
            return Err(bad("range is empty"));
        }
        return Ok((a..=b).collect());
    }
    let grid: std::result::Result<Vec<u64>, _> =
        spec.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let grid = grid.map_err(|_| bad("expected integers"))?;
    if grid.is_empty() {
        return Err(bad("empty"));
    }
    Ok(grid)
}

fn parse_range(s: &str) -> Option<(u64, u64)> {
    let (a, b) = s.split_once("..")?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn default_output(name: &str, format: OutputFormat) -> PathBuf {
    let dir = std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    dir.join(format!("{name}.{}", format.extension()))
}

fn build_config(cmd: Command) -> Result<ExperimentConfig> {
    let (experiment, common) = match cmd {
        Command::Spacings { common, n, s } => {
            if s.is_empty() || s.iter().any(|&v| v < 1) {
                return Err(Error::InvalidParam("spacings needs s >= 1".into()));
            }
            (
                Experiment::Spacings {
                    n_grid: parse_grid(&n)?,
                    s_values: s,
                },
                common,
            )
        }
        Command::Coupon { common, ell, c } => {
            if c.iter().any(|&v| v <= 0.0) {
                return Err(Error::InvalidParam("coupon needs c > 0".into()));
            }
            (
                Experiment::Coupon {
                    ell_grid: parse_grid(&ell)?,
                    c_values: c,
                },
                common,
            )
        }
        Command::Sobolev1d {
            common,
            p,
            q,
            n,
            integration,
        } => {
            let q = if integration { 1.0 } else { q };
            let params = SobolevParams1D::new(p, q)?;
            if params.is_degenerate() {
                return Err(Error::InvalidParam(
                    "the pair (p, q) = (1, inf) has a constant surrogate; \
                     nothing to measure"
                        .into(),
                ));
            }
            (
                Experiment::Sobolev1d {
                    params,
                    n_grid: parse_grid(&n)?,
                    integration,
                },
                common,
            )
        }
        Command::Lipschitz { common, d, q, n } => {
            if d == 0 {
                return Err(Error::InvalidParam("lipschitz needs d >= 1".into()));
            }
            (
                Experiment::Lipschitz {
                    d,
                    q,
                    n_grid: parse_grid(&n)?,
                },
                common,
            )
        }
        Command::SobolevMd {
            common,
            d,
            alpha,
            n,
            s,
            p,
            q,
        } => {
            if d == 0 || !(alpha > 0.0) {
                return Err(Error::InvalidParam(
                    "sobolev-md needs d >= 1 and alpha > 0".into(),
                ));
            }
            let rate_params = match (s, p, q) {
                (Some(s), Some(p), Some(q)) => Some(SobolevParamsMD::new(s, d as u32, p, q)?),
                (None, None, None) => None,
                _ => {
                    return Err(Error::InvalidParam(
                        "give all of --s/--p/--q or none".into(),
                    ))
                }
            };
            (
                Experiment::SobolevMd {
                    d,
                    alpha,
                    n_grid: parse_grid(&n)?,
                    rate_params,
                },
                common,
            )
        }
        Command::L1 {
            common,
            m,
            n,
            restarts,
            sparsity,
        } => {
            let n_grid = parse_grid(&n)?;
            if n_grid.iter().any(|&v| v == 0 || v as usize > m) {
                return Err(Error::InvalidParam("l1 needs 1 <= n <= m".into()));
            }
            if restarts == 0 {
                return Err(Error::InvalidParam("l1 needs restarts >= 1".into()));
            }
            (
                Experiment::L1 {
                    m,
                    n_grid,
                    restarts,
                    sparsity,
                },
                common,
            )
        }
        Command::Ellipsoid {
            common,
            alpha,
            beta,
            constant,
            m,
            n,
            m_grid,
        } => {
            let law = AxisLaw::new(alpha, beta, constant)?;
            law.semi_axes(m)?; // validate monotonicity up front
            (
                Experiment::Ellipsoid {
                    law,
                    m,
                    n_grid: parse_grid(&n)?,
                    m_grid: m_grid.map(|g| parse_grid(&g)).transpose()?,
                },
                common,
            )
        }
    };

    // matrix experiments are far heavier per trial than the sampling ones
    let min_trials = match &experiment {
        Experiment::L1 { .. } | Experiment::Ellipsoid { .. } => 20,
        _ => 100,
    };
    if common.trials < min_trials {
        return Err(Error::InvalidParam(format!(
            "trials must be at least {min_trials} for this experiment"
        )));
    }
    let output_path = common
        .output
        .clone()
        .unwrap_or_else(|| default_output(experiment.name(), common.format));
    Ok(ExperimentConfig {
        experiment,
        master_seed: common.seed,
        trials: common.trials,
        output_path,
        output_format: common.format,
        fit: common.fit.map(Into::into),
    })
}

/// Binary entry point: parse, validate, run, map errors to exit codes.
pub fn run_main() -> ! {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let config = match build_config(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    match run(&config) {
        Ok(rows) => {
            eprintln!("wrote {rows} rows to {}", config.output_path.display());
            std::process::exit(0);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_grid("4,9,25").unwrap(), vec![4, 9, 25]);
        assert_eq!(
            parse_grid("16..4096:geometric:9").unwrap(),
            vec![16, 32, 64, 128, 256, 512, 1024, 2048, 4096]
        );
        assert!(parse_grid("").is_err());
        assert!(parse_grid("5..1").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn float_formatting_has_17_significant_digits() {
        assert_eq!(fmt_float(0.125), "1.2500000000000000e-1");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        assert_eq!(fmt_opt_float(None), "");
    }

    #[test]
    fn exponent_parser_accepts_inf() {
        assert_eq!(parse_exponent("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_exponent("2").unwrap(), 2.0);
        assert!(parse_exponent("0.5").is_err());
    }
}
