//! Problem configuration: dimension, scenario and the two concentric radii.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Dimension {
    Planar2D,
    Spatial3D,
}

impl Dimension {
    pub const ALL: [Dimension; 2] = [Dimension::Planar2D, Dimension::Spatial3D];

    /// Number of spatial coordinates.
    pub fn degree(self) -> usize {
        match self {
            Dimension::Planar2D => 2,
            Dimension::Spatial3D => 3,
        }
    }

    pub fn from_degree(d: u8) -> Option<Self> {
        match d {
            2 => Some(Dimension::Planar2D),
            3 => Some(Dimension::Spatial3D),
            _ => None,
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        d.degree() as u8
    }
}

impl TryFrom<u8> for Dimension {
    type Error = String;

    fn try_from(d: u8) -> std::result::Result<Self, Self::Error> {
        Dimension::from_degree(d).ok_or_else(|| format!("dimension must be 2 or 3, got {d}"))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D", self.degree())
    }
}

/// Spatial model of a single node inside its disk or ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlacementKind {
    /// Static node, uniform over the region.
    Uniform,
    /// Mobile node, stationary random-waypoint density.
    Rwp,
}

/// Which of the two nodes is mobile.
///
/// The inner node lives in the radius-`r1` region, the outer node in the
/// radius-`r2` region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// Inner mobile, outer static.
    S1,
    /// Inner static, outer mobile.
    S2,
    /// Both mobile.
    S3,
    /// Both static.
    S4,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4];

    pub fn inner_node_model(self) -> PlacementKind {
        match self {
            Scenario::S1 | Scenario::S3 => PlacementKind::Rwp,
            Scenario::S2 | Scenario::S4 => PlacementKind::Uniform,
        }
    }

    pub fn outer_node_model(self) -> PlacementKind {
        match self {
            Scenario::S2 | Scenario::S3 => PlacementKind::Rwp,
            Scenario::S1 | Scenario::S4 => PlacementKind::Uniform,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Scenario::S1 => 1,
            Scenario::S2 => 2,
            Scenario::S3 => 3,
            Scenario::S4 => 4,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.index())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s1" | "1" => Ok(Scenario::S1),
            "s2" | "2" => Ok(Scenario::S2),
            "s3" | "3" => Ok(Scenario::S3),
            "s4" | "4" => Ok(Scenario::S4),
            other => Err(format!("unknown scenario '{other}', expected s1..s4")),
        }
    }
}

/// Full problem specification.
///
/// Construct through [`NetworkConfig::new`] to get a validated value; the
/// fields stay public so callers can build raw input and check it with
/// [`validate_config`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub dim: Dimension,
    pub scenario: Scenario,
    pub r1: f64,
    pub r2: f64,
}

impl NetworkConfig {
    pub fn new(dim: Dimension, scenario: Scenario, r1: f64, r2: f64) -> Result<Self> {
        validate_config(NetworkConfig { dim, scenario, r1, r2 })
    }

    /// `r2 - r1`, the end of the fully-contained distance interval.
    pub fn r_minus(&self) -> f64 {
        self.r2 - self.r1
    }

    /// `r1 + r2`, the largest attainable distance.
    pub fn r_plus(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn support(&self) -> (f64, f64) {
        (0.0, self.r_plus())
    }

    pub fn equal_radius(&self) -> bool {
        self.r1 == self.r2
    }

    /// Same configuration with both radii multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        NetworkConfig::new(self.dim, self.scenario, self.r1 * c, self.r2 * c)
    }

    /// Interior breakpoints of the distance density, ascending and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(2);
        for p in [self.r_minus(), self.r2] {
            if p > 0.0 && p < self.r_plus() && pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        pts
    }

    /// The sixteen reference configurations: every dimension and scenario
    /// at radii {1, 2} and {1, 1}.
    pub fn reference_set() -> Vec<NetworkConfig> {
        let mut out = Vec::with_capacity(16);
        for (r1, r2) in [(1.0, 2.0), (1.0, 1.0)] {
            for dim in Dimension::ALL {
                for scenario in Scenario::ALL {
                    out.push(NetworkConfig { dim, scenario, r1, r2 });
                }
            }
        }
        out
    }
}

impl fmt::Display for NetworkConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {{{}, {}}}", self.dim, self.scenario, self.r1, self.r2)
    }
}

pub fn validate_config(cfg: NetworkConfig) -> Result<NetworkConfig> {
    if !cfg.r1.is_finite() {
        return Err(Error::NonFiniteInput("r1"));
    }
    if !cfg.r2.is_finite() {
        return Err(Error::NonFiniteInput("r2"));
    }
    if cfg.r1 <= 0.0 {
        return Err(Error::NonPositiveRadius(cfg.r1));
    }
    if cfg.r2 <= 0.0 {
        return Err(Error::NonPositiveRadius(cfg.r2));
    }
    if cfg.r1 > cfg.r2 {
        return Err(Error::InnerExceedsOuter { r1: cfg.r1, r2: cfg.r2 });
    }
    Ok(cfg)
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() {
        Err(Error::NonFiniteInput("radius"))
    } else if r <= 0.0 {
        Err(Error::NonPositiveRadius(r))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_general_config() {
        let cfg = NetworkConfig::new(Dimension::Planar2D, Scenario::S1, 1.0, 2.0).unwrap();
        assert!(!cfg.equal_radius());
        assert_eq!(cfg.r_minus(), 1.0);
        assert_eq!(cfg.r_plus(), 3.0);
        assert_eq!(cfg.support(), (0.0, 3.0));
        assert_eq!(cfg.breakpoints(), vec![1.0, 2.0]);
    }

    #[test]
    fn equal_radius_is_admitted() {
        let cfg = NetworkConfig::new(Dimension::Spatial3D, Scenario::S4, 1.0, 1.0).unwrap();
        assert!(cfg.equal_radius());
        assert_eq!(cfg.r_minus(), 0.0);
        assert_eq!(cfg.breakpoints(), vec![1.0]);
    }

    #[test]
    fn rejects_bad_radii() {
        assert_eq!(
            NetworkConfig::new(Dimension::Planar2D, Scenario::S2, 2.0, 1.0),
            Err(Error::InnerExceedsOuter { r1: 2.0, r2: 1.0 })
        );
        assert_eq!(NetworkConfig::new(Dimension::Planar2D, Scenario::S2, 0.0, 1.0), Err(Error::NonPositiveRadius(0.0)));
        assert_eq!(
            NetworkConfig::new(Dimension::Planar2D, Scenario::S2, 1.0, -3.0),
            Err(Error::NonPositiveRadius(-3.0))
        );
        assert!(matches!(
            NetworkConfig::new(Dimension::Planar2D, Scenario::S2, f64::NAN, 1.0),
            Err(Error::NonFiniteInput(_))
        ));
        assert!(matches!(
            NetworkConfig::new(Dimension::Planar2D, Scenario::S2, 1.0, f64::INFINITY),
            Err(Error::NonFiniteInput(_))
        ));
    }

    #[test]
    fn scenario_model_assignment() {
        use PlacementKind::*;
        let table = [
            (Scenario::S1, Rwp, Uniform),
            (Scenario::S2, Uniform, Rwp),
            (Scenario::S3, Rwp, Rwp),
            (Scenario::S4, Uniform, Uniform),
        ];
        for (s, inner, outer) in table {
            assert_eq!(s.inner_node_model(), inner, "{s}");
            assert_eq!(s.outer_node_model(), outer, "{s}");
        }
    }

    #[test]
    fn reference_set_has_sixteen_members() {
        let set = NetworkConfig::reference_set();
        assert_eq!(set.len(), 16);
        for cfg in &set {
            assert!(validate_config(*cfg).is_ok());
            assert_eq!(cfg.support().1 - cfg.support().0, cfg.r1 + cfg.r2);
        }
    }

    #[test]
    fn json_shape() {
        let cfg = NetworkConfig::new(Dimension::Spatial3D, Scenario::S2, 1.0, 2.0).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(text, r#"{"dim":3,"scenario":"s2","r1":1.0,"r2":2.0}"#);
        assert_eq!(serde_json::from_str::<NetworkConfig>(&text).unwrap(), cfg);
        assert!(serde_json::from_str::<NetworkConfig>(r#"{"dim":4,"scenario":"s2","r1":1.0,"r2":2.0}"#).is_err());
    }

    #[test]
    fn scenario_parsing() {
        assert_eq!("s3".parse::<Scenario>(), Ok(Scenario::S3));
        assert_eq!("S1".parse::<Scenario>(), Ok(Scenario::S1));
        assert!("s5".parse::<Scenario>().is_err());
    }
}
