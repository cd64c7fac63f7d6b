//! Distance distributions between two nodes placed in concentric disks or
//! balls, with each node either static (uniform) or mobile (random waypoint).
//!
//! Three independent routes to the same density are provided:
//!
//! * [`closedform`]: exact piecewise formulas,
//! * [`analysis::oracle`]: quadrature of the conditional-density mixture,
//! * [`montecarlo`]: direct simulation of node pairs.
//!
//! ```
//! use internodal::{closedform, Dimension, NetworkConfig, Scenario};
//!
//! let cfg = NetworkConfig::new(Dimension::Planar2D, Scenario::S4, 1.0, 2.0).unwrap();
//! assert!((closedform::pdf(cfg, 0.5).unwrap() - 0.25).abs() < 1e-15);
//! ```

pub mod analysis;
pub mod cli;
pub mod closedform;
pub mod conditional;
pub mod config;
pub mod error;
pub mod montecarlo;
pub mod rng;
pub mod spatial;
pub mod validation;

pub use closedform::{ClosedForm, DistanceDensity};
pub use config::{validate_config, Dimension, NetworkConfig, PlacementKind, Scenario};
pub use error::{Error, Result};
