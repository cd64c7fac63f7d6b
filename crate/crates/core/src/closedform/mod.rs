//! Exact piecewise densities of the internodal distance.
//!
//! [`ClosedForm`] picks the general or equal-radius form once, from the
//! configuration, and then evaluates without further checks.

mod planar;
mod spatial;

pub use planar::{pdf_2d_equal, pdf_2d_general, Pdf2DEqualCoeffs, Pdf2DGeneralCoeffs};
pub use spatial::{pdf_3d_equal, pdf_3d_general, Pdf3DEqualCoeffs, Pdf3DGeneralCoeffs};

use crate::analysis::curves::{CurveSource, PdfCurve};
use crate::config::{validate_config, Dimension, NetworkConfig};
use crate::error::{Error, Result};

/// A distance density over the support of a configuration.
pub trait DistanceDensity: Sync {
    fn config(&self) -> &NetworkConfig;

    /// Density at `r`; zero outside `[0, r1 + r2]`.
    fn pdf(&self, r: f64) -> f64;
}

/// Coefficient record behind a [`ClosedForm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Form {
    Planar(Pdf2DGeneralCoeffs),
    PlanarEqual(Pdf2DEqualCoeffs),
    Spatial(Pdf3DGeneralCoeffs),
    SpatialEqual(Pdf3DEqualCoeffs),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    config: NetworkConfig,
    form: Form,
}

impl ClosedForm {
    pub fn new(cfg: NetworkConfig) -> Result<Self> {
        let cfg = validate_config(cfg)?;
        let s = cfg.scenario;
        let form = match (cfg.dim, cfg.equal_radius()) {
            (Dimension::Planar2D, false) => Form::Planar(Pdf2DGeneralCoeffs::new(s, cfg.r1, cfg.r2)?),
            (Dimension::Planar2D, true) => Form::PlanarEqual(Pdf2DEqualCoeffs::new(s, cfg.r1)?),
            (Dimension::Spatial3D, false) => Form::Spatial(Pdf3DGeneralCoeffs::new(s, cfg.r1, cfg.r2)?),
            (Dimension::Spatial3D, true) => Form::SpatialEqual(Pdf3DEqualCoeffs::new(s, cfg.r1)?),
        };
        Ok(ClosedForm { config: cfg, form })
    }

    /// Wraps an explicit coefficient record, which must describe `cfg`.
    pub fn from_form(cfg: NetworkConfig, form: Form) -> Result<Self> {
        let cfg = validate_config(cfg)?;
        let expected = ClosedForm::new(cfg)?.form;
        let matches = match (&form, &expected) {
            (Form::Planar(a), Form::Planar(b)) => (a.r1, a.r2) == (b.r1, b.r2),
            (Form::PlanarEqual(a), Form::PlanarEqual(b)) => a.radius == b.radius,
            (Form::Spatial(a), Form::Spatial(b)) => (a.r1(), a.r2()) == (b.r1(), b.r2()),
            (Form::SpatialEqual(a), Form::SpatialEqual(b)) => a.radius == b.radius,
            _ => false,
        };
        if !matches {
            return Err(Error::InvalidConfig(format!("coefficient record does not describe {cfg}")));
        }
        Ok(ClosedForm { config: cfg, form })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Raw branch formulas at `r`, without support cut-off or clamping:
    /// `(inner, outer)`. Equal-radius forms have no inner branch.
    pub fn branch_values(&self, r: f64) -> (Option<f64>, f64) {
        match &self.form {
            Form::Planar(c) => (Some(c.inner_branch(r)), c.outer_branch(r)),
            Form::PlanarEqual(c) => (None, c.formula(r)),
            Form::Spatial(c) => (Some(c.inner_branch(r)), c.outer_branch(r)),
            Form::SpatialEqual(c) => (None, c.formula(r)),
        }
    }
}

impl DistanceDensity for ClosedForm {
    fn config(&self) -> &NetworkConfig {
        &self.config
    }

    fn pdf(&self, r: f64) -> f64 {
        if r.is_nan() {
            return f64::NAN;
        }
        match &self.form {
            Form::Planar(c) => c.pdf(r),
            Form::PlanarEqual(c) => c.pdf(r),
            Form::Spatial(c) => c.pdf(r),
            Form::SpatialEqual(c) => c.pdf(r),
        }
    }
}

/// Closed-form density for `cfg` at `r`.
pub fn pdf(cfg: NetworkConfig, r: f64) -> Result<f64> {
    Ok(ClosedForm::new(cfg)?.pdf(r))
}

/// Uniform grid of `n_points` over `[0, r1 + r2]` with the breakpoints
/// `r2 - r1` and `r2` inserted when not already on it.
pub fn curve_grid(cfg: &NetworkConfig, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 {
        return Err(Error::Precondition(format!("need at least 2 grid points, got {n_points}")));
    }
    let rp = cfg.r_plus();
    let last = (n_points - 1) as f64;
    let mut grid: Vec<f64> = (0..n_points).map(|i| rp * i as f64 / last).collect();
    grid[n_points - 1] = rp;
    for b in [cfg.r_minus(), cfg.r2] {
        if let Err(pos) = grid.binary_search_by(|x| x.total_cmp(&b)) {
            grid.insert(pos, b);
        }
    }
    Ok(grid)
}

/// Density curve of any model on the standard grid.
pub fn density_curve<D: DistanceDensity + ?Sized>(
    density: &D,
    n_points: usize,
    source: CurveSource,
) -> Result<PdfCurve> {
    let grid = curve_grid(density.config(), n_points)?;
    let values = grid.iter().map(|&r| density.pdf(r)).collect();
    Ok(PdfCurve { config: *density.config(), source, grid, values })
}

pub fn pdf_curve(cfg: NetworkConfig, n_points: usize) -> Result<PdfCurve> {
    density_curve(&ClosedForm::new(cfg)?, n_points, CurveSource::Closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scenario;

    fn cfg(dim: Dimension, s: Scenario, r1: f64, r2: f64) -> NetworkConfig {
        NetworkConfig::new(dim, s, r1, r2).unwrap()
    }

    #[test]
    fn dispatch() {
        let equal = pdf(cfg(Dimension::Planar2D, Scenario::S4, 1.0, 1.0), 1.0).unwrap();
        assert_eq!(equal, pdf_2d_equal(Scenario::S4, 1.0, 1.0).unwrap());
        assert_eq!(pdf(cfg(Dimension::Spatial3D, Scenario::S2, 1.0, 2.0), -1.0).unwrap(), 0.0);
        assert_eq!(pdf(cfg(Dimension::Planar2D, Scenario::S1, 1.0, 2.0), 3.5).unwrap(), 0.0);
        let raw = NetworkConfig { dim: Dimension::Planar2D, scenario: Scenario::S1, r1: 2.0, r2: 1.0 };
        assert!(pdf(raw, 1.0).is_err());
    }

    #[test]
    fn grid_inserts_breakpoints() {
        let g = curve_grid(&cfg(Dimension::Planar2D, Scenario::S4, 1.0, 2.0), 3).unwrap();
        assert_eq!(g, vec![0.0, 1.0, 1.5, 2.0, 3.0]);
        let g = curve_grid(&cfg(Dimension::Planar2D, Scenario::S4, 1.0, 2.0), 4097).unwrap();
        assert_eq!(g.len(), 4099);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        // breakpoints already on the grid are not duplicated
        let g = curve_grid(&cfg(Dimension::Planar2D, Scenario::S4, 1.0, 2.0), 4).unwrap();
        assert_eq!(g, vec![0.0, 1.0, 2.0, 3.0]);
        let g = curve_grid(&cfg(Dimension::Planar2D, Scenario::S4, 1.0, 1.0), 2).unwrap();
        assert_eq!(g, vec![0.0, 1.0, 2.0]);
        assert!(curve_grid(&cfg(Dimension::Planar2D, Scenario::S4, 1.0, 1.0), 1).is_err());
    }

    #[test]
    fn curve_is_nonnegative_and_normalized() {
        for c in NetworkConfig::reference_set() {
            let curve = pdf_curve(c, 4097).unwrap();
            assert!(curve.values.iter().all(|&v| v >= 0.0));
            assert_eq!(curve.values[0], 0.0);
            let area: f64 = curve
                .grid
                .windows(2)
                .zip(curve.values.windows(2))
                .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
                .sum();
            assert!((area - 1.0).abs() < 1e-5, "{c}: {area}");
        }
    }
}
