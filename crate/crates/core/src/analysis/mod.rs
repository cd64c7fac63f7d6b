//! Numerical machinery: quadrature, the mixture-integral oracle, CDFs and
//! moments, beta fitting and the KS statistic.

pub mod beta;
pub mod curves;
pub mod distribution;
pub mod ks;
pub mod oracle;
pub mod quadrature;

pub use beta::{beta_pdf, fit_beta_moments, fit_beta_scenario, BetaFit, BetaParams};
pub use curves::{CdfCurve, CurveSource, PdfCurve};
pub use distribution::{cdf, cdf_curve, moment, quantile};
pub use ks::{ks_critical_value, ks_distance};
pub use oracle::{mixture_pdf_oracle, MixtureOracle};
pub use quadrature::integrate_adaptive;
