//! CDFs, moments and quantiles by breakpoint-aware quadrature of a density.

use crate::closedform::{curve_grid, ClosedForm, DistanceDensity};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};

use super::curves::CdfCurve;
use super::quadrature::integrate_piecewise;

/// Absolute tolerance of CDF integrals. Moments of order `n` use
/// `INTEGRAL_TOLERANCE · (r1 + r2)^n`, since they carry units of length^n.
pub const INTEGRAL_TOLERANCE: f64 = 1e-12;

/// Largest supported moment order.
pub const MAX_MOMENT_ORDER: u32 = 8;

fn integrate_density<D, F>(density: &D, a: f64, b: f64, tol: f64, weight: F) -> Result<f64>
where
    D: DistanceDensity + ?Sized,
    F: Fn(f64) -> f64,
{
    let breaks = density.config().breakpoints();
    integrate_piecewise(|r| weight(r) * density.pdf(r), a, b, &breaks, tol)
}

pub fn cdf_of<D: DistanceDensity + ?Sized>(density: &D, r: f64) -> Result<f64> {
    let rp = density.config().r_plus();
    if r.is_nan() {
        return Err(Error::NonFiniteInput("r"));
    }
    if r <= 0.0 {
        return Ok(0.0);
    }
    let v = integrate_density(density, 0.0, r.min(rp), INTEGRAL_TOLERANCE, |_| 1.0)?;
    Ok(v.clamp(0.0, 1.0))
}

pub fn moment_of<D: DistanceDensity + ?Sized>(density: &D, n: u32) -> Result<f64> {
    if n > MAX_MOMENT_ORDER {
        return Err(Error::Precondition(format!("moment order {n} exceeds {MAX_MOMENT_ORDER}")));
    }
    let rp = density.config().r_plus();
    let tol = INTEGRAL_TOLERANCE * rp.powi(n as i32).max(1.0);
    integrate_density(density, 0.0, rp, tol, |r| r.powi(n as i32))
}

pub fn cdf(cfg: NetworkConfig, r: f64) -> Result<f64> {
    cdf_of(&ClosedForm::new(cfg)?, r)
}

pub fn moment(cfg: NetworkConfig, n: u32) -> Result<f64> {
    moment_of(&ClosedForm::new(cfg)?, n)
}

/// Smallest `r` with `cdf(r) ≥ p`, by bisection to `1e-12 · (r1 + r2)`.
pub fn quantile(cfg: NetworkConfig, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    let density = ClosedForm::new(cfg)?;
    let (mut lo, mut hi) = (0.0, cfg.r_plus());
    while hi - lo > 1e-12 * cfg.r_plus() {
        let mid = 0.5 * (lo + hi);
        if cdf_of(&density, mid)? < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Cumulative probabilities at ascending points, integrating piece by piece
/// from each point to the next. Points outside the support are clamped.
pub fn cdf_at_sorted<D: DistanceDensity + ?Sized>(density: &D, sorted: &[f64]) -> Result<Vec<f64>> {
    let rp = density.config().r_plus();
    let breaks = density.config().breakpoints();
    let mut out = Vec::with_capacity(sorted.len());
    let (mut at, mut acc) = (0.0_f64, 0.0_f64);
    for &x in sorted {
        let x = x.clamp(0.0, rp);
        if x < at {
            return Err(Error::Precondition("points must be sorted ascending".into()));
        }
        if x > at {
            acc += integrate_piecewise(|r| density.pdf(r), at, x, &breaks, INTEGRAL_TOLERANCE)?;
            at = x;
        }
        out.push(acc.clamp(0.0, 1.0));
    }
    Ok(out)
}

pub fn cdf_curve(cfg: NetworkConfig, n_points: usize) -> Result<CdfCurve> {
    let density = ClosedForm::new(cfg)?;
    let grid = curve_grid(&cfg, n_points)?;
    let mut values = cdf_at_sorted(&density, &grid)?;
    let mut running = 0.0_f64;
    for v in &mut values {
        running = running.max(*v);
        *v = running;
    }
    Ok(CdfCurve { config: cfg, grid, values })
}
