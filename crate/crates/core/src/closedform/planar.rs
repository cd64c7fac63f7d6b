//! Planar closed forms: concentric disks with `R1 < R2`, and the
//! equal-radius case.

use std::f64::consts::PI;

use crate::conditional::{acos_split, clamped_acos, clamped_sqrt};
use crate::config::{check_radius, Scenario};
use crate::error::{Error, Result};

/// Scenario polynomials `q1..q4` and the helpers `k1`, `k2` for `R1 < R2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pdf2DGeneralCoeffs {
    pub scenario: Scenario,
    pub r1: f64,
    pub r2: f64,
}

impl Pdf2DGeneralCoeffs {
    pub fn new(scenario: Scenario, r1: f64, r2: f64) -> Result<Self> {
        check_radius(r1)?;
        check_radius(r2)?;
        if r1 >= r2 {
            return Err(Error::InvalidConfig(format!("general planar form needs r1 < r2, got r1={r1}, r2={r2}")));
        }
        Ok(Pdf2DGeneralCoeffs { scenario, r1, r2 })
    }

    pub fn k1(&self, r: f64) -> f64 {
        r * r + self.r1 * self.r1 - self.r2 * self.r2
    }

    pub fn k2(&self, r: f64) -> f64 {
        r * r - self.r1 * self.r1 + self.r2 * self.r2
    }

    /// `r - R-` and `R+ - r`, the distances to the branch edges.
    fn edge_gaps(&self, r: f64) -> (f64, f64) {
        (r - (self.r2 - self.r1), (self.r1 + self.r2) - r)
    }

    /// `(1 - x, 1 + x)` for `x = k1(r) / (2 r R1)`.
    fn complements_k1(&self, r: f64) -> (f64, f64) {
        let (dm, dp) = self.edge_gaps(r);
        let den = 2.0 * r * self.r1;
        (dp * (r + self.r2 - self.r1) / den, dm * (r + self.r1 + self.r2) / den)
    }

    /// `(1 - x, 1 + x)` for `x = k2(r) / (2 r R2)`.
    fn complements_k2(&self, r: f64) -> (f64, f64) {
        let (dm, dp) = self.edge_gaps(r);
        let den = 2.0 * r * self.r2;
        (dp * dm / den, (r + self.r2 - self.r1) * (r + self.r1 + self.r2) / den)
    }

    /// Lens factor `sqrt((r² - R-²)(R+² - r²))`.
    fn lens(&self, r: f64) -> f64 {
        let (dm, dp) = self.edge_gaps(r);
        clamped_sqrt(dm * (r + self.r2 - self.r1) * dp * (r + self.r1 + self.r2))
    }

    pub fn q1(&self, r: f64) -> f64 {
        let (p, q, rr) = (self.r1 * self.r1, self.r2 * self.r2, r * r);
        match self.scenario {
            Scenario::S1 | Scenario::S4 => 1.0,
            Scenario::S2 => -(2.0 * rr + p - 2.0 * q) / q,
            Scenario::S3 => -2.0 * (3.0 * rr + p - 3.0 * q) / (3.0 * q),
        }
    }

    pub fn q2(&self, r: f64) -> f64 {
        let (p, q, rr) = (self.r1 * self.r1, self.r2 * self.r2, r * r);
        match self.scenario {
            Scenario::S1 | Scenario::S4 => 4.0 * p * p,
            Scenario::S2 => -4.0 * p * p * (2.0 * rr + p - 2.0 * q) / q,
            Scenario::S3 => -24.0 * p * p * (3.0 * rr + p - 3.0 * q) / (9.0 * q),
        }
    }

    pub fn q3(&self, r: f64) -> f64 {
        let (p, q, rr) = (self.r1 * self.r1, self.r2 * self.r2, r * r);
        match self.scenario {
            Scenario::S1 => 4.0 * q * (2.0 * p - 2.0 * rr - q),
            Scenario::S2 | Scenario::S4 => 4.0 * p * q,
            Scenario::S3 => -24.0 * q * (3.0 * rr + q - 3.0 * p) / 9.0,
        }
    }

    pub fn q4(&self, r: f64) -> f64 {
        let (p, q, rr) = (self.r1 * self.r1, self.r2 * self.r2, r * r);
        match self.scenario {
            Scenario::S1 => (rr - 3.0 * p + 5.0 * q) * self.lens(r),
            Scenario::S2 => p * (rr + 5.0 * p - 3.0 * q) * self.lens(r) / q,
            Scenario::S3 => {
                2.0 * self.lens(r) / (9.0 * q) * (-rr * rr + 8.0 * rr * (p + q) + 17.0 * (p * p + q * q) - 22.0 * p * q)
            }
            Scenario::S4 => {
                let (m1, p1) = self.complements_k1(r);
                let (m2, p2) = self.complements_k2(r);
                -4.0 * p
                    * (self.r1 * self.k1(r) / (2.0 * r) * clamped_sqrt(m1 * p1)
                        + self.r2 * self.k2(r) / (2.0 * r) * clamped_sqrt(m2 * p2))
            }
        }
    }

    /// `2r q1(r) / R2²`, valid on `[0, R2 - R1)`.
    pub fn inner_branch(&self, r: f64) -> f64 {
        2.0 * r * self.q1(r) / (self.r2 * self.r2)
    }

    /// The arccos branch, valid on `[R2 - R1, R1 + R2]`.
    pub fn outer_branch(&self, r: f64) -> f64 {
        let (r1, r2) = (self.r1, self.r2);
        let (m1, p1) = self.complements_k1(r);
        let (m2, p2) = self.complements_k2(r);
        let (a1, a2) = (acos_split(m1, p1), acos_split(m2, p2));
        let bracket = self.q2(r) * a1 + self.q3(r) * a2 + self.q4(r);
        r / (2.0 * PI * r1.powi(4) * r2 * r2) * bracket
    }

    pub fn pdf(&self, r: f64) -> f64 {
        let (r1, r2) = (self.r1, self.r2);
        if r <= 0.0 || r >= r1 + r2 {
            return 0.0;
        }
        let value = if r < r2 - r1 { self.inner_branch(r) } else { self.outer_branch(r) };
        value.max(0.0)
    }
}

/// Equal-radius polynomials `s1`, `s2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pdf2DEqualCoeffs {
    pub scenario: Scenario,
    pub radius: f64,
}

impl Pdf2DEqualCoeffs {
    pub fn new(scenario: Scenario, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Pdf2DEqualCoeffs { scenario, radius })
    }

    pub fn s1(&self, r: f64) -> f64 {
        let (rr, q) = (r * r, self.radius * self.radius);
        match self.scenario {
            Scenario::S1 | Scenario::S2 => 2.0 * (q - rr) / PI,
            Scenario::S3 => 4.0 * (2.0 * q - 3.0 * rr) / (3.0 * PI),
            Scenario::S4 => 2.0 * q / PI,
        }
    }

    pub fn s2(&self, r: f64) -> f64 {
        let big = self.radius;
        let (rr, q) = (r * r, big * big);
        match self.scenario {
            Scenario::S1 | Scenario::S2 => r * (rr + 2.0 * q) / (2.0 * PI * big),
            Scenario::S3 => r * (-rr * rr + 16.0 * rr * q + 12.0 * q * q) / (9.0 * PI * q * big),
            Scenario::S4 => -r * big / PI,
        }
    }

    /// The formula itself, without the support cut-off.
    pub fn formula(&self, r: f64) -> f64 {
        let big = self.radius;
        let x = r / (2.0 * big);
        2.0 * r * (self.s1(r) * clamped_acos(x) + self.s2(r) * clamped_sqrt(1.0 - x * x)) / big.powi(4)
    }

    pub fn pdf(&self, r: f64) -> f64 {
        if r <= 0.0 || r >= 2.0 * self.radius {
            return 0.0;
        }
        self.formula(r).max(0.0)
    }
}

pub fn pdf_2d_general(scenario: Scenario, r1: f64, r2: f64, r: f64) -> Result<f64> {
    Ok(Pdf2DGeneralCoeffs::new(scenario, r1, r2)?.pdf(r))
}

pub fn pdf_2d_equal(scenario: Scenario, radius: f64, r: f64) -> Result<f64> {
    Ok(Pdf2DEqualCoeffs::new(scenario, radius)?.pdf(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_examples() {
        for s in Scenario::ALL {
            assert_eq!(pdf_2d_general(s, 1.0, 2.0, 0.0).unwrap(), 0.0);
            assert_eq!(pdf_2d_general(s, 1.0, 2.0, 3.0).unwrap(), 0.0);
            assert_eq!(pdf_2d_general(s, 1.0, 2.0, 3.5).unwrap(), 0.0);
        }
        assert!((pdf_2d_general(Scenario::S4, 1.0, 2.0, 0.5).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn general_rejects_equal_or_inverted_radii() {
        assert!(matches!(pdf_2d_general(Scenario::S1, 2.0, 2.0, 1.0), Err(Error::InvalidConfig(_))));
        assert!(pdf_2d_general(Scenario::S1, 3.0, 2.0, 1.0).is_err());
        assert!(pdf_2d_equal(Scenario::S1, 0.0, 1.0).is_err());
    }

    #[test]
    fn equal_disk_line_picking() {
        let want = 4.0 / 3.0 - 3f64.sqrt() / PI;
        assert!((pdf_2d_equal(Scenario::S4, 1.0, 1.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.782_00).abs() < 1e-5);
        for s in Scenario::ALL {
            assert_eq!(pdf_2d_equal(s, 1.0, 2.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn equal_s3_slope_at_origin() {
        let r = 1e-7;
        let slope = pdf_2d_equal(Scenario::S3, 1.0, r).unwrap() / r;
        assert!((slope - 8.0 / 3.0).abs() < 1e-6, "{slope}");
    }

    #[test]
    fn s4_matches_classical_concentric_form() {
        // Uniform points in two concentric disks: for r in the lens band the
        // density is r/(π R1² R2²) times the lens area derivative; compare
        // against a direct lens-area finite difference.
        let (r1, r2) = (1.0_f64, 2.0_f64);
        let lens_area = |r: f64| -> f64 {
            // area of the intersection of a disk of radius r centred at distance d
            // from the origin with the disk of radius r2, averaged over d ~ uniform in disk r1
            let inner = |d: f64| {
                if d == 0.0 {
                    return PI * r.min(r2).powi(2);
                }
                if r + d <= r2 {
                    return PI * r * r;
                }
                if r >= r2 + d {
                    return PI * r2 * r2;
                }
                let a = ((d * d + r * r - r2 * r2) / (2.0 * d * r)).clamp(-1.0, 1.0).acos();
                let b = ((d * d + r2 * r2 - r * r) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
                r * r * a + r2 * r2 * b
                    - 0.5 * ((-d + r + r2) * (d + r - r2) * (d - r + r2) * (d + r + r2)).max(0.0).sqrt()
            };
            crate::analysis::quadrature::integrate_adaptive(|d| inner(d) * 2.0 * d / (r1 * r1), 0.0, r1, 1e-13).unwrap()
                / (PI * r2 * r2)
        };
        let coeffs = Pdf2DGeneralCoeffs::new(Scenario::S4, r1, r2).unwrap();
        for r in [0.4, 1.2, 1.7, 2.3, 2.8] {
            let h = 1e-5;
            let fd = (lens_area(r + h) - lens_area(r - h)) / (2.0 * h);
            assert!((fd - coeffs.pdf(r)).abs() < 1e-6, "r={r}: {fd} vs {}", coeffs.pdf(r));
        }
    }
}
