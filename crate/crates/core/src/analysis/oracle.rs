//! The defining mixture integral `f(r) = ∫ f(r | ρ) f_ρ(ρ) dρ`, evaluated by
//! adaptive quadrature. Independent of the closed forms; used to audit them.

use crate::closedform::DistanceDensity;
use crate::conditional::GFunctions;
use crate::config::{validate_config, NetworkConfig};
use crate::error::Result;
use crate::spatial::RadialDensity;

use super::quadrature::integrate_adaptive;

/// Absolute tolerance of each oracle evaluation.
pub const ORACLE_TOLERANCE: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureOracle {
    config: NetworkConfig,
    inner: RadialDensity,
    outer: GFunctions,
}

impl MixtureOracle {
    pub fn new(cfg: NetworkConfig) -> Result<Self> {
        let cfg = validate_config(cfg)?;
        Ok(MixtureOracle {
            config: cfg,
            inner: RadialDensity::new(cfg.scenario.inner_node_model(), cfg.dim, cfg.r1)?,
            outer: GFunctions::new(cfg.dim, cfg.scenario.outer_node_model(), cfg.r2)?,
        })
    }

    /// Mixture density at `r`, with the integration limits of the distance
    /// interval containing `r`:
    ///
    /// * `r < R2 - R1`: the circle is always inside, `∫_0^{R1} g1`.
    /// * `R2 - R1 ≤ r < R2`: `∫_0^{R2-r} g1 + ∫_{R2-r}^{R1} g2`.
    /// * `R2 ≤ r ≤ R1 + R2`: `∫_{r-R2}^{R1} g2`.
    pub fn try_pdf(&self, r: f64) -> Result<f64> {
        let (r1, r2) = (self.config.r1, self.config.r2);
        if r.is_nan() || r <= 0.0 || r >= r1 + r2 {
            return Ok(if r.is_nan() { f64::NAN } else { 0.0 });
        }
        let inner = |rho: f64| self.inner.pdf(rho);
        let fully = |rho: f64| self.outer.g1(rho, r) * inner(rho);
        let partial = |rho: f64| self.outer.g2(rho, r).max(0.0) * inner(rho);
        let value = if r < r2 - r1 {
            integrate_adaptive(fully, 0.0, r1, ORACLE_TOLERANCE)?
        } else if r < r2 {
            let split = r2 - r;
            integrate_adaptive(fully, 0.0, split, 0.5 * ORACLE_TOLERANCE)?
                + integrate_adaptive(partial, split, r1, 0.5 * ORACLE_TOLERANCE)?
        } else {
            integrate_adaptive(partial, r - r2, r1, ORACLE_TOLERANCE)?
        };
        Ok(value.max(0.0))
    }
}

impl DistanceDensity for MixtureOracle {
    fn config(&self) -> &NetworkConfig {
        &self.config
    }

    /// NaN when the quadrature fails; use [`MixtureOracle::try_pdf`] to see why.
    fn pdf(&self, r: f64) -> f64 {
        self.try_pdf(r).unwrap_or(f64::NAN)
    }
}

pub fn mixture_pdf_oracle(cfg: NetworkConfig, r: f64) -> Result<f64> {
    MixtureOracle::new(cfg)?.try_pdf(r)
}
