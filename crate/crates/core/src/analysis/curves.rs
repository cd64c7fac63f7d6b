use serde::Serialize;

use crate::config::NetworkConfig;

/// Which evaluation path produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSource {
    Closed,
    Oracle,
}

/// Sampled density on `[0, r1 + r2]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdfCurve {
    pub config: NetworkConfig,
    pub source: CurveSource,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// Sampled cumulative distribution on the same kind of grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfCurve {
    pub config: NetworkConfig,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}
