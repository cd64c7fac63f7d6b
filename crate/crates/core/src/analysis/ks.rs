//! One-sample Kolmogorov–Smirnov distance.

use crate::error::{Error, Result};

/// Critical value of the KS statistic at the 1% level, asymptotic form.
pub fn ks_critical_value(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// KS distance from the model CDF evaluated at each sorted sample.
pub fn ks_from_cdf_values(cdf_values: &[f64]) -> Result<f64> {
    if cdf_values.is_empty() {
        return Err(Error::Precondition("KS distance needs at least one sample".into()));
    }
    let n = cdf_values.len() as f64;
    let d = cdf_values.iter().enumerate().fold(0.0_f64, |d, (i, &f)| {
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d.max(above.abs()).max(below.abs())
    });
    Ok(d.min(1.0))
}

/// `sup |F_n - F|` for ascending `sorted` samples.
pub fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64> {
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("samples must be sorted ascending".into()));
    }
    let values: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    ks_from_cdf_values(&values)
}
