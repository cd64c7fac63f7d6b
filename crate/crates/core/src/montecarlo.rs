//! Reproducible Monte Carlo sampling of internodal distances.
//!
//! Sample `i` draws from [`crate::rng::stream`]`(seed, i)` only, so results
//! do not depend on how samples are spread over threads.

use rand_chacha::rand_core::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::beta::fit_beta_scenario;
use crate::analysis::distribution::cdf_at_sorted;
use crate::analysis::ks::{ks_critical_value, ks_from_cdf_values};
use crate::closedform::ClosedForm;
use crate::config::{check_radius, validate_config, Dimension, NetworkConfig, PlacementKind};
use crate::error::{Error, Result};
use crate::rng::stream;
use crate::spatial::{waypoint_process_sample, RadialDensity};

/// Draws independent node pairs for one configuration.
#[derive(Debug, Clone, Copy)]
pub struct PairSampler {
    inner: RadialDensity,
    outer: RadialDensity,
}

impl PairSampler {
    pub fn new(cfg: NetworkConfig) -> Result<Self> {
        let cfg = validate_config(cfg)?;
        Ok(PairSampler {
            inner: RadialDensity::new(cfg.scenario.inner_node_model(), cfg.dim, cfg.r1)?,
            outer: RadialDensity::new(cfg.scenario.outer_node_model(), cfg.dim, cfg.r2)?,
        })
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.inner.sample_point(rng);
        let b = self.outer.sample_point(rng);
        a.distance(&b)
    }
}

pub fn sample_pair_distance<R: RngCore + ?Sized>(cfg: NetworkConfig, rng: &mut R) -> Result<f64> {
    Ok(PairSampler::new(cfg)?.sample(rng))
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Distances for samples `0..n`, in index order.
pub fn sample_distances(cfg: NetworkConfig, n: usize, seed: u64, threads: Option<usize>) -> Result<Vec<f64>> {
    let sampler = PairSampler::new(cfg)?;
    with_threads(threads, || (0..n as u64).into_par_iter().map(|i| sampler.sample(&mut stream(seed, i))).collect())
}

/// Equal-width histogram over `[lo, hi]`; bins are half-open except the last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        Histogram { lo, hi, counts: vec![0; bins] }
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn add(&mut self, x: f64) {
        let last = self.counts.len() - 1;
        let k = ((x - self.lo) / self.width()).floor();
        let k = if k < 0.0 { 0 } else { (k as usize).min(last) };
        self.counts[k] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn edges(&self, k: usize) -> (f64, f64) {
        let w = self.width();
        let hi = if k + 1 == self.counts.len() { self.hi } else { self.lo + w * (k + 1) as f64 };
        (self.lo + w * k as f64, hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub config: NetworkConfig,
    pub seed: u64,
    pub n: usize,
    pub mean: f64,
    pub second_moment: f64,
    /// KS distance to the closed-form CDF.
    pub ks_statistic: f64,
    pub histogram: Histogram,
}

/// A summary plus the sorted samples it was computed from.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub summary: McSummary,
    pub sorted: Vec<f64>,
}

pub fn simulate_detailed(
    cfg: NetworkConfig,
    n: usize,
    seed: u64,
    bins: usize,
    threads: Option<usize>,
) -> Result<Simulation> {
    if n == 0 {
        return Err(Error::Precondition("sample count must be at least 1".into()));
    }
    if bins == 0 {
        return Err(Error::Precondition("bin count must be at least 1".into()));
    }
    let samples = sample_distances(cfg, n, seed, threads)?;
    let mut histogram = Histogram::new(0.0, cfg.r_plus(), bins);
    let (mut s1, mut s2) = (0.0, 0.0);
    for &r in &samples {
        histogram.add(r);
        s1 += r;
        s2 += r * r;
    }
    let mut sorted = samples;
    sorted.sort_unstable_by(f64::total_cmp);
    let model = ClosedForm::new(cfg)?;
    let ks_statistic = ks_from_cdf_values(&cdf_at_sorted(&model, &sorted)?)?;
    let summary =
        McSummary { config: cfg, seed, n, mean: s1 / n as f64, second_moment: s2 / n as f64, ks_statistic, histogram };
    Ok(Simulation { summary, sorted })
}

pub fn simulate(cfg: NetworkConfig, n: usize, seed: u64, bins: usize) -> Result<McSummary> {
    Ok(simulate_detailed(cfg, n, seed, bins, None)?.summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McValidation {
    pub config: NetworkConfig,
    pub seed: u64,
    pub n: usize,
    pub ks_closed_form: f64,
    pub ks_threshold: f64,
    pub passed: bool,
    /// KS distance of the normalized samples to the fitted beta CDF.
    /// Reported only; the beta law is an approximation.
    pub ks_beta: f64,
}

/// Minimum sample count accepted by [`validate`].
pub const MIN_VALIDATION_SAMPLES: usize = 10_000;

pub fn validate(cfg: NetworkConfig, n: usize, seed: u64, threads: Option<usize>) -> Result<McValidation> {
    if n < MIN_VALIDATION_SAMPLES {
        return Err(Error::Precondition(format!(
            "validation needs at least {MIN_VALIDATION_SAMPLES} samples, got {n}"
        )));
    }
    let sim = simulate_detailed(cfg, n, seed, 100, threads)?;
    let fit = fit_beta_scenario(cfg)?.params();
    let norm = cfg.r_plus();
    let beta_values: Vec<f64> = sim.sorted.iter().map(|&r| fit.cdf(r / norm)).collect();
    let ks_beta = ks_from_cdf_values(&beta_values)?;
    let threshold = ks_critical_value(n);
    Ok(McValidation {
        config: cfg,
        seed,
        n,
        ks_closed_form: sim.summary.ks_statistic,
        ks_threshold: threshold,
        passed: sim.summary.ks_statistic < threshold,
        ks_beta,
    })
}

/// Number of radial bins of the waypoint cross-check.
pub const TV_BINS: usize = 50;
/// Soft bound on the waypoint cross-check distance.
pub const TV_THRESHOLD: f64 = 0.03;
/// Minimum sample count accepted by [`rwp_density_crosscheck`].
pub const MIN_TV_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TvReport {
    pub dim: Dimension,
    pub radius: f64,
    pub n: usize,
    pub seed: u64,
    pub bins: usize,
    pub tv_distance: f64,
    pub threshold: f64,
    pub within_threshold: bool,
}

/// Total-variation distance between the radial histogram of simulated
/// waypoint positions and the polynomial RWP radial density.
pub fn rwp_density_crosscheck(
    dim: Dimension,
    radius: f64,
    n: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<TvReport> {
    check_radius(radius)?;
    if n < MIN_TV_SAMPLES {
        return Err(Error::Precondition(format!(
            "waypoint cross-check needs at least {MIN_TV_SAMPLES} samples, got {n}"
        )));
    }
    let radii: Vec<f64> = with_threads(threads, || {
        (0..n as u64)
            .into_par_iter()
            .map(|i| waypoint_process_sample(dim, radius, &mut stream(seed, i)).map(|p| p.norm()).unwrap_or(f64::NAN))
            .collect()
    })?;
    let mut hist = Histogram::new(0.0, radius, TV_BINS);
    for r in radii {
        hist.add(r);
    }
    let model = RadialDensity::new(PlacementKind::Rwp, dim, radius)?;
    let tv = 0.5
        * (0..TV_BINS)
            .map(|k| {
                let (a, b) = hist.edges(k);
                let expected = model.cdf(b) - model.cdf(a);
                (hist.counts[k] as f64 / n as f64 - expected).abs()
            })
            .sum::<f64>();
    Ok(TvReport {
        dim,
        radius,
        n,
        seed,
        bins: TV_BINS,
        tv_distance: tv,
        threshold: TV_THRESHOLD,
        within_threshold: tv < TV_THRESHOLD,
    })
}
