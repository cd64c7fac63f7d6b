//! Radial placement densities for one node inside a disk or ball, and the
//! matching position samplers.
//!
//! Uniform placement has radial density `d ρ^(d-1) / R^d`. The random
//! waypoint model uses the polynomial stationary densities
//! `4ρ(1 - ρ²/R²)/R²` (disk) and
//! `(35/72)(21ρ²/R³ - 34ρ⁴/R⁵ + 13ρ⁶/R⁷)` (ball).

use std::f64::consts::PI;

use rand_chacha::rand_core::RngCore;

use crate::config::{check_radius, Dimension, PlacementKind};
use crate::error::Result;
use crate::rng::uniform;

/// Radial density of a node in a region of radius `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialDensity {
    pub kind: PlacementKind,
    pub dim: Dimension,
    pub radius: f64,
}

impl RadialDensity {
    pub fn new(kind: PlacementKind, dim: Dimension, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(RadialDensity { kind, dim, radius })
    }

    pub fn pdf(&self, rho: f64) -> f64 {
        if !(0.0..=self.radius).contains(&rho) {
            return 0.0;
        }
        unit_pdf(self.kind, self.dim, rho / self.radius) / self.radius
    }

    pub fn cdf(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            0.0
        } else if rho >= self.radius {
            1.0
        } else {
            unit_cdf(self.kind, self.dim, rho / self.radius)
        }
    }

    /// Inverse CDF evaluated at `u ∈ [0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        self.radius * unit_quantile(self.kind, self.dim, u)
    }

    /// `E[ρ²]`, closed form.
    pub fn second_moment(&self) -> f64 {
        let k = match (self.kind, self.dim) {
            (PlacementKind::Uniform, Dimension::Planar2D) => 0.5,
            (PlacementKind::Uniform, Dimension::Spatial3D) => 0.6,
            (PlacementKind::Rwp, Dimension::Planar2D) => 1.0 / 3.0,
            (PlacementKind::Rwp, Dimension::Spatial3D) => 35.0 / 72.0 * (21.0 / 5.0 - 34.0 / 7.0 + 13.0 / 9.0),
        };
        k * self.radius * self.radius
    }

    pub fn sample_radius<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(uniform(rng))
    }

    pub fn sample_point<R: RngCore + ?Sized>(&self, rng: &mut R) -> Point {
        let rho = self.sample_radius(rng);
        let dir = uniform_direction(self.dim, rng);
        dir.scale(rho)
    }
}

// Densities on the unit region, x = ρ/R.
fn unit_pdf(kind: PlacementKind, dim: Dimension, x: f64) -> f64 {
    let x2 = x * x;
    match (kind, dim) {
        (PlacementKind::Uniform, Dimension::Planar2D) => 2.0 * x,
        (PlacementKind::Rwp, Dimension::Planar2D) => 4.0 * x * (1.0 - x2),
        (PlacementKind::Uniform, Dimension::Spatial3D) => 3.0 * x2,
        (PlacementKind::Rwp, Dimension::Spatial3D) => 35.0 / 72.0 * x2 * (21.0 + x2 * (-34.0 + 13.0 * x2)),
    }
}

fn unit_cdf(kind: PlacementKind, dim: Dimension, x: f64) -> f64 {
    let x2 = x * x;
    match (kind, dim) {
        (PlacementKind::Uniform, Dimension::Planar2D) => x2,
        (PlacementKind::Rwp, Dimension::Planar2D) => x2 * (2.0 - x2),
        (PlacementKind::Uniform, Dimension::Spatial3D) => x2 * x,
        (PlacementKind::Rwp, Dimension::Spatial3D) => {
            35.0 / 72.0 * x2 * x * (7.0 + x2 * (-34.0 / 5.0 + 13.0 / 7.0 * x2))
        }
    }
}

// Safeguarded Newton on the unit CDF; falls back to bisection whenever the
// Newton step would leave the current bracket.
fn unit_quantile(kind: PlacementKind, dim: Dimension, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut x = u.powf(1.0 / dim.degree() as f64);
    for _ in 0..200 {
        let g = unit_cdf(kind, dim, x) - u;
        if g == 0.0 {
            return x;
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = unit_pdf(kind, dim, x);
        let newton = x - g / d;
        let next = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() < 1e-12 || hi - lo < 1e-15 {
            return next;
        }
        x = next;
    }
    x
}

pub fn radial_pdf(kind: PlacementKind, dim: Dimension, radius: f64, rho: f64) -> Result<f64> {
    Ok(RadialDensity::new(kind, dim, radius)?.pdf(rho))
}

pub fn radial_cdf(kind: PlacementKind, dim: Dimension, radius: f64, rho: f64) -> Result<f64> {
    Ok(RadialDensity::new(kind, dim, radius)?.cdf(rho))
}

/// Position in the plane or in space. Planar points keep `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub dim: Dimension,
    pub coords: [f64; 3],
}

impl Point {
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim.degree()]
    }

    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.coords.iter().zip(other.coords.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    fn scale(mut self, s: f64) -> Point {
        for c in &mut self.coords {
            *c *= s;
        }
        self
    }

    fn lerp(&self, other: &Point, t: f64) -> Point {
        let mut coords = [0.0; 3];
        for (k, c) in coords.iter_mut().enumerate() {
            *c = self.coords[k] + t * (other.coords[k] - self.coords[k]);
        }
        Point { dim: self.dim, coords }
    }
}

fn uniform_direction<R: RngCore + ?Sized>(dim: Dimension, rng: &mut R) -> Point {
    match dim {
        Dimension::Planar2D => {
            let phi = 2.0 * PI * uniform(rng);
            Point { dim, coords: [phi.cos(), phi.sin(), 0.0] }
        }
        Dimension::Spatial3D => {
            let z = 2.0 * uniform(rng) - 1.0;
            let phi = 2.0 * PI * uniform(rng);
            let s = (1.0 - z * z).max(0.0).sqrt();
            Point { dim, coords: [s * phi.cos(), s * phi.sin(), z] }
        }
    }
}

pub fn sample_radius<R: RngCore + ?Sized>(
    kind: PlacementKind,
    dim: Dimension,
    radius: f64,
    rng: &mut R,
) -> Result<f64> {
    Ok(RadialDensity::new(kind, dim, radius)?.sample_radius(rng))
}

pub fn sample_point<R: RngCore + ?Sized>(
    kind: PlacementKind,
    dim: Dimension,
    radius: f64,
    rng: &mut R,
) -> Result<Point> {
    Ok(RadialDensity::new(kind, dim, radius)?.sample_point(rng))
}

/// Stationary position of a zero-pause random waypoint walker.
///
/// Legs are pairs of independent uniform waypoints, kept with probability
/// proportional to their length (bound `2R`); the walker sits at a uniform
/// point on the kept leg. Used only as an empirical reference for the
/// polynomial RWP densities.
pub fn waypoint_process_sample<R: RngCore + ?Sized>(dim: Dimension, radius: f64, rng: &mut R) -> Result<Point> {
    let region = RadialDensity::new(PlacementKind::Uniform, dim, radius)?;
    loop {
        let a = region.sample_point(rng);
        let b = region.sample_point(rng);
        let len = a.distance(&b);
        if uniform(rng) * 2.0 * radius < len {
            return Ok(a.lerp(&b, uniform(rng)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::quadrature::integrate_adaptive;
    use crate::rng::stream;

    const KINDS: [PlacementKind; 2] = [PlacementKind::Uniform, PlacementKind::Rwp];

    // Direct transcription of the tabulated densities with explicit radius
    // powers, independent of the normalized-coordinate implementation.
    fn table_pdf(kind: PlacementKind, dim: Dimension, r: f64, p: f64) -> f64 {
        match (kind, dim) {
            (PlacementKind::Uniform, Dimension::Planar2D) => 2.0 * p / r.powi(2),
            (PlacementKind::Rwp, Dimension::Planar2D) => 4.0 * p / r.powi(2) * (1.0 - p.powi(2) / r.powi(2)),
            (PlacementKind::Uniform, Dimension::Spatial3D) => 3.0 * p.powi(2) / r.powi(3),
            (PlacementKind::Rwp, Dimension::Spatial3D) => {
                35.0 / 72.0
                    * (21.0 * p.powi(2) / r.powi(3) - 34.0 * p.powi(4) / r.powi(5) + 13.0 * p.powi(6) / r.powi(7))
            }
        }
    }

    #[test]
    fn pdf_examples() {
        use Dimension::*;
        use PlacementKind::*;
        assert_eq!(radial_pdf(Rwp, Planar2D, 1.0, 0.0).unwrap(), 0.0);
        assert!((radial_pdf(Uniform, Planar2D, 1.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((radial_pdf(Rwp, Planar2D, 2.0, 1.0).unwrap() - 0.75).abs() < 1e-15);
        // 35/72 * (21/4 - 34/16 + 13/64) = 35 * 213 / (72 * 64)
        let exact = 35.0 * 213.0 / (72.0 * 64.0);
        assert!((radial_pdf(Rwp, Spatial3D, 1.0, 0.5).unwrap() - exact).abs() < 1e-14);
        assert!((exact - 1.617_838).abs() < 1e-6);
        assert!(radial_pdf(Rwp, Planar2D, 0.0, 0.5).is_err());
        assert!(radial_pdf(Rwp, Planar2D, -1.0, 0.5).is_err());
        assert_eq!(radial_pdf(Uniform, Spatial3D, 1.0, 1.5).unwrap(), 0.0);
        assert_eq!(radial_pdf(Uniform, Spatial3D, 1.0, -0.1).unwrap(), 0.0);
    }

    #[test]
    fn pdf_matches_tabulated_forms() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                for r in [0.5, 1.0, 2.0, 7.3] {
                    for i in 0..=50 {
                        let p = r * i as f64 / 50.0;
                        let got = radial_pdf(kind, dim, r, p).unwrap();
                        let want = table_pdf(kind, dim, r, p);
                        assert!((got - want).abs() < 1e-13 * want.abs().max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn cdf_examples() {
        use Dimension::*;
        use PlacementKind::*;
        assert_eq!(radial_cdf(Uniform, Planar2D, 1.0, 1.0).unwrap(), 1.0);
        assert!((radial_cdf(Uniform, Planar2D, 2.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        let v = radial_cdf(Rwp, Planar2D, 1.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn normalization_by_quadrature() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                for r in [0.5, 1.0, 2.0, 7.3] {
                    let d = RadialDensity::new(kind, dim, r).unwrap();
                    let total = integrate_adaptive(|p| d.pdf(p), 0.0, r, 1e-13).unwrap();
                    assert!((total - 1.0).abs() < 1e-10, "{kind:?} {dim} {r}: {total}");
                    assert_eq!(d.cdf(0.0), 0.0);
                    assert_eq!(d.cdf(r), 1.0);
                }
            }
        }
    }

    #[test]
    fn cdf_derivative_is_pdf() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                let d = RadialDensity::new(kind, dim, 1.3).unwrap();
                let h = 1e-6;
                let mut max_pdf: f64 = 0.0;
                let mut max_err: f64 = 0.0;
                for i in 1..1000 {
                    let p = 1.3 * i as f64 / 1000.0;
                    let fd = (d.cdf(p + h) - d.cdf(p - h)) / (2.0 * h);
                    max_err = max_err.max((fd - d.pdf(p)).abs());
                    max_pdf = max_pdf.max(d.pdf(p));
                }
                assert!(max_err < 1e-6 * max_pdf, "{kind:?} {dim}: {max_err}");
            }
        }
    }

    #[test]
    fn scale_covariance() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                for c in [0.1, 3.0, 10.0] {
                    for p in [0.1, 0.4, 0.77, 1.0] {
                        let a = radial_pdf(kind, dim, c * 1.0, c * p).unwrap();
                        let b = radial_pdf(kind, dim, 1.0, p).unwrap() / c;
                        assert!((a - b).abs() < 1e-13 * b.abs().max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn quantile_round_trip() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                let d = RadialDensity::new(kind, dim, 2.5).unwrap();
                for i in 0..=2000 {
                    let u = i as f64 / 2000.0;
                    let rho = d.quantile(u);
                    assert!((0.0..=2.5).contains(&rho));
                    assert!((d.cdf(rho) - u).abs() < 1e-10, "{kind:?} {dim} u={u}");
                }
            }
        }
    }

    #[test]
    fn second_moments_match_quadrature() {
        for dim in Dimension::ALL {
            for kind in KINDS {
                let d = RadialDensity::new(kind, dim, 1.7).unwrap();
                let m2 = integrate_adaptive(|p| p * p * d.pdf(p), 0.0, 1.7, 1e-14).unwrap();
                assert!((m2 - d.second_moment()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn samples_stay_inside_region() {
        let mut rng = stream(5, 0);
        for dim in Dimension::ALL {
            for kind in KINDS {
                for _ in 0..2000 {
                    assert!((0.0..=1.0).contains(&sample_radius(kind, dim, 1.0, &mut rng).unwrap()));
                    assert!(sample_point(kind, dim, 1.0, &mut rng).unwrap().norm() <= 1.0 + 1e-15);
                }
                for _ in 0..500 {
                    assert!(waypoint_process_sample(dim, 1.0, &mut rng).unwrap().norm() <= 1.0 + 1e-15);
                }
            }
        }
    }

    #[test]
    fn planar_points_have_zero_z() {
        let mut rng = stream(9, 3);
        let p = sample_point(PlacementKind::Rwp, Dimension::Planar2D, 1.0, &mut rng).unwrap();
        assert_eq!(p.coords[2], 0.0);
        assert_eq!(p.as_slice().len(), 2);
    }
}
