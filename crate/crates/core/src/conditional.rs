//! Density of the internodal distance given the inner node's radius.
//!
//! With the inner node at radius `ρ`, the outer node lies on a circle
//! (sphere) of radius `r` around it. That circle is either fully inside the
//! outer region (`g1`), partially inside (`g2`), or entirely outside (zero).
//!
//! The fully-inside planar RWP branch is `-4r(ρ² + r² - R2²)/R2⁴`; see
//! `ERRATA.md` for why the denominator is `R2⁴`.

use std::f64::consts::PI;

use crate::analysis::quadrature::integrate_piecewise;
use crate::config::{check_radius, Dimension, PlacementKind};
use crate::error::{Error, Result};

/// Tolerance for inverse-trig and square-root arguments at tangency points.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Position of the distance circle relative to the outer region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalCase {
    FullyInside,
    PartialOverlap,
    Outside,
}

impl IntervalCase {
    pub fn classify(r: f64, rho: f64, r2: f64) -> IntervalCase {
        if r < r2 - rho {
            IntervalCase::FullyInside
        } else if r <= r2 + rho {
            IntervalCase::PartialOverlap
        } else {
            IntervalCase::Outside
        }
    }
}

pub(crate) fn clamped_acos(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

pub(crate) fn clamped_sqrt(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// `arccos(x)` from separately computed `1 - x` and `1 + x`. Near `x = ±1`
/// this keeps full accuracy when the two factors are formed without
/// cancellation.
pub(crate) fn acos_split(one_minus: f64, one_plus: f64) -> f64 {
    2.0 * clamped_sqrt(one_minus).atan2(clamped_sqrt(one_plus))
}

/// The `g` functions for one dimension, outer-node model and outer radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GFunctions {
    pub dim: Dimension,
    pub outer_kind: PlacementKind,
    pub r2: f64,
}

impl GFunctions {
    pub fn new(dim: Dimension, outer_kind: PlacementKind, r2: f64) -> Result<Self> {
        check_radius(r2)?;
        Ok(GFunctions { dim, outer_kind, r2 })
    }

    /// `(1 - c, 1 + c)` for `c = (ρ² + r² - R2²) / (2ρr)`, the cosine of the
    /// angle at the inner node, in factored form.
    fn cos_complements(&self, rho: f64, r: f64) -> (f64, f64) {
        let r2 = self.r2;
        let den = 2.0 * rho * r;
        let one_minus = ((r2 + rho) - r) * (r + r2 - rho) / den;
        let one_plus = (r - (r2 - rho)) * (r + rho + r2) / den;
        (one_minus, one_plus)
    }

    /// Planar: `sqrt((r² - (R2-ρ)²)((R2+ρ)² - r²))`. Spatial: `ρ² + r² - R2²`.
    pub fn g3(&self, rho: f64, r: f64) -> f64 {
        let r2 = self.r2;
        match self.dim {
            Dimension::Planar2D => clamped_sqrt((r - (r2 - rho)) * (r + r2 - rho) * ((r2 + rho) - r) * (r2 + rho + r)),
            Dimension::Spatial3D => rho * rho + r * r - r2 * r2,
        }
    }

    /// Planar: `ρ² + r² - R2²`. Spatial: `13r² - 21R2² + 13ρ²`.
    pub fn g4(&self, rho: f64, r: f64) -> f64 {
        let r2 = self.r2;
        match self.dim {
            Dimension::Planar2D => rho * rho + r * r - r2 * r2,
            Dimension::Spatial3D => 13.0 * r * r - 21.0 * r2 * r2 + 13.0 * rho * rho,
        }
    }

    /// `(r - ρ + R2)²(ρ - r + R2)²`; only the spatial RWP branch uses it.
    pub fn g5(&self, rho: f64, r: f64) -> f64 {
        let a = r - rho + self.r2;
        let b = (self.r2 + rho) - r;
        a * a * b * b
    }

    /// Fully-inside branch.
    pub fn g1(&self, rho: f64, r: f64) -> f64 {
        let r2 = self.r2;
        match (self.dim, self.outer_kind) {
            (Dimension::Planar2D, PlacementKind::Uniform) => 2.0 * r / (r2 * r2),
            (Dimension::Planar2D, PlacementKind::Rwp) => -4.0 * r * self.g4(rho, r) / r2.powi(4),
            (Dimension::Spatial3D, PlacementKind::Uniform) => 3.0 * r * r / r2.powi(3),
            (Dimension::Spatial3D, PlacementKind::Rwp) => {
                35.0 * r * r * (104.0 * rho * rho * r * r + 6.0 * self.g3(rho, r) * self.g4(rho, r))
                    / (432.0 * r2.powi(7))
            }
        }
    }

    /// Partial-overlap branch. Requires `ρ > 0` and `r > 0`.
    pub fn g2(&self, rho: f64, r: f64) -> f64 {
        let r2 = self.r2;
        match (self.dim, self.outer_kind) {
            (Dimension::Planar2D, PlacementKind::Uniform) => {
                let (m, p) = self.cos_complements(rho, r);
                2.0 * r * acos_split(m, p) / (PI * r2 * r2)
            }
            (Dimension::Planar2D, PlacementKind::Rwp) => {
                let (m, p) = self.cos_complements(rho, r);
                let g4 = self.g4(rho, r);
                4.0 * r * (self.g3(rho, r) - g4 * acos_split(m, p)) / (PI * r2.powi(4))
            }
            (Dimension::Spatial3D, PlacementKind::Uniform) => {
                let (m, _) = self.cos_complements(rho, r);
                3.0 * r * r / (2.0 * r2.powi(3)) * m.clamp(0.0, 2.0)
            }
            (Dimension::Spatial3D, PlacementKind::Rwp) => {
                let d = r - rho;
                35.0 * r * (25.0 * r2 * r2 - 13.0 * d * d) * self.g5(rho, r) / (864.0 * r2.powi(7) * rho)
            }
        }
    }

    /// `f(r | ρ)`, total in `r`.
    pub fn density(&self, rho: f64, r: f64) -> Result<f64> {
        if !(rho.is_finite() && r.is_finite()) {
            return Err(Error::NonFiniteInput("conditional density argument"));
        }
        if rho < 0.0 || rho > self.r2 {
            return Err(Error::Domain(format!("rho = {rho} outside [0, {}]", self.r2)));
        }
        if r <= 0.0 {
            return Ok(0.0);
        }
        // ρ = 0: the overlap band shrinks to r = R2.
        if rho == 0.0 {
            return Ok(if r < self.r2 { self.g1(0.0, r) } else { 0.0 });
        }
        Ok(match IntervalCase::classify(r, rho, self.r2) {
            IntervalCase::FullyInside => self.g1(rho, r),
            IntervalCase::PartialOverlap => self.g2(rho, r).max(0.0),
            IntervalCase::Outside => 0.0,
        })
    }
}

pub fn conditional_pdf(dim: Dimension, outer_kind: PlacementKind, r2: f64, rho: f64, r: f64) -> Result<f64> {
    GFunctions::new(dim, outer_kind, r2)?.density(rho, r)
}

/// Angle subtended at the inner node between the centre direction and the
/// point where the distance circle meets the outer boundary.
pub fn angle_theta(r2: f64, rho: f64, r: f64) -> Result<f64> {
    let arg = (r * r - r2 * r2 + rho * rho) / (2.0 * r * rho);
    if !(-1.0 - CLAMP_TOLERANCE..=1.0 + CLAMP_TOLERANCE).contains(&arg) {
        return Err(Error::Domain(format!("arccos argument {arg} for r2={r2}, rho={rho}, r={r}")));
    }
    Ok(clamped_acos(arg))
}

/// `|∫ f(r | ρ) dr - 1|` over `[0, R2 + ρ]`.
pub fn conditional_cdf_check(dim: Dimension, outer_kind: PlacementKind, r2: f64, rho: f64) -> Result<f64> {
    let g = GFunctions::new(dim, outer_kind, r2)?;
    if !(0.0..r2).contains(&rho) {
        return Err(Error::Domain(format!("rho = {rho} outside [0, {r2})")));
    }
    let f = |r: f64| g.density(rho, r).unwrap_or(f64::NAN);
    let total = integrate_piecewise(f, 0.0, r2 + rho, &[r2 - rho], 1e-12)?;
    Ok((total - 1.0).abs())
}
