//! Beta-distribution approximation of the normalized distance `r / (r1 + r2)`
//! by matching its first two moments.

use serde::Serialize;
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use crate::closedform::{ClosedForm, DistanceDensity};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};

use super::distribution::moment_of;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaParams {
    pub alpha: f64,
    pub beta: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(alpha) && ok(beta) {
            Ok(BetaParams { alpha, beta })
        } else {
            Err(Error::InvalidParams { alpha, beta })
        }
    }

    pub fn ln_beta_function(&self) -> f64 {
        ln_gamma(self.alpha) + ln_gamma(self.beta) - ln_gamma(self.alpha + self.beta)
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    pub fn variance(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * self.beta / (s * s * (s + 1.0))
    }

    /// `E[x²] = μ (α + 1) / (α + β + 1)`.
    pub fn second_moment(&self) -> f64 {
        self.mean() * (self.alpha + 1.0) / (self.alpha + self.beta + 1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else {
            beta_reg(self.alpha, self.beta, x)
        }
    }
}

/// Beta density at `x ∈ [0, 1]`. At an endpoint whose exponent is negative
/// the result is `+∞`.
pub fn beta_pdf(params: BetaParams, x: f64) -> Result<f64> {
    let params = BetaParams::new(params.alpha, params.beta)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    let ln_b = params.ln_beta_function();
    let endpoint = |exponent: f64, other_exponent_term: f64| {
        if exponent > 0.0 {
            0.0
        } else if exponent < 0.0 {
            f64::INFINITY
        } else {
            (other_exponent_term - ln_b).exp()
        }
    };
    // (1 - x)^(β-1) at x = 0 and x^(α-1) at x = 1 are both 1.
    if x == 0.0 {
        return Ok(endpoint(params.alpha - 1.0, 0.0));
    }
    if x == 1.0 {
        return Ok(endpoint(params.beta - 1.0, 0.0));
    }
    let ln = (params.alpha - 1.0) * x.ln() + (params.beta - 1.0) * (-x).ln_1p() - ln_b;
    Ok(ln.exp())
}

pub fn fit_beta_moments(mean: f64, variance: f64) -> Result<BetaParams> {
    if !(mean.is_finite() && variance.is_finite()) {
        return Err(Error::NonFiniteInput("moments"));
    }
    if mean <= 0.0 || mean >= 1.0 {
        return Err(Error::Domain(format!("mean {mean} outside (0, 1)")));
    }
    let bound = mean * (1.0 - mean);
    if variance <= 0.0 || variance >= bound {
        return Err(Error::InfeasibleMoments { variance, bound });
    }
    let common = bound / variance - 1.0;
    BetaParams::new(mean * common, (1.0 - mean) * common)
}

/// Fitted parameters together with the moments they reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaFit {
    pub alpha: f64,
    pub beta: f64,
    /// Mean of `r / normalization`.
    pub mean: f64,
    /// Variance of `r / normalization`.
    pub variance: f64,
    /// `r1 + r2`.
    pub normalization: f64,
}

impl BetaFit {
    pub fn params(&self) -> BetaParams {
        BetaParams { alpha: self.alpha, beta: self.beta }
    }
}

pub fn fit_beta_density<D: DistanceDensity + ?Sized>(density: &D) -> Result<BetaFit> {
    let norm = density.config().r_plus();
    let mean = moment_of(density, 1)? / norm;
    let variance = moment_of(density, 2)? / (norm * norm) - mean * mean;
    let p = fit_beta_moments(mean, variance)?;
    Ok(BetaFit { alpha: p.alpha, beta: p.beta, mean, variance, normalization: norm })
}

pub fn fit_beta_scenario(cfg: NetworkConfig) -> Result<BetaFit> {
    fit_beta_density(&ClosedForm::new(cfg)?)
}
