//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule gives the panel's error estimate. The panel with the
//! largest estimate is bisected until the summed estimate meets the
//! tolerance. Ties are broken by creation order and the final sum runs
//! left to right, so results are bit-reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Evaluation budget of one integral.
pub const MAX_EVALUATIONS: usize = 1_000_000;
/// Deepest bisection level before giving up.
pub const MAX_DEPTH: u32 = 60;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    kronrod: f64,
    error: f64,
    abs_sum: f64,
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Panel { kronrod: kronrod * half, error: ((kronrod - gauss) * half).abs(), abs_sum: abs_sum * half.abs() }
}

struct Active {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
    order: u64,
}

impl PartialEq for Active {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Active {}

impl PartialOrd for Active {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Active {
    // Largest error first; among equal errors the older panel first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.order.cmp(&self.order))
    }
}

/// Integrates `f` over `[a, b]` to an estimated absolute error of `abs_tol`.
///
/// The rule never samples the endpoints, so integrands with removable
/// singularities there are fine.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFiniteInput("integration limit"));
    }
    if a > b {
        return Err(Error::Precondition(format!("integration limits reversed: {a} > {b}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let tol = abs_tol.max(0.0);
    let mut evaluations = 0usize;
    let mut order = 0u64;
    let mut settled: Vec<(f64, f64)> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut pending = 0.0_f64;

    let mut push =
        |lo: f64, hi: f64, depth: u32, heap: &mut BinaryHeap<Active>, settled: &mut Vec<(f64, f64)>| -> Result<f64> {
            let panel = gauss_kronrod_15(&f, lo, hi);
            evaluations += 15;
            if !panel.kronrod.is_finite() {
                return Err(Error::NoConvergence { a: lo, b: hi, error: f64::INFINITY });
            }
            let mid = 0.5 * (lo + hi);
            let roundoff = 50.0 * f64::EPSILON * panel.abs_sum;
            // Panels that cannot be refined further count as exact.
            if panel.error <= roundoff || mid <= lo || mid >= hi {
                settled.push((lo, panel.kronrod));
                return Ok(0.0);
            }
            order += 1;
            heap.push(Active { a: lo, b: hi, value: panel.kronrod, error: panel.error, depth, order });
            if evaluations > MAX_EVALUATIONS {
                return Err(Error::NoConvergence { a, b, error: panel.error });
            }
            Ok(panel.error)
        };

    pending += push(a, b, 0, &mut heap, &mut settled)?;
    while pending > tol {
        let Some(worst) = heap.pop() else { break };
        pending -= worst.error;
        if worst.depth >= MAX_DEPTH {
            return Err(Error::NoConvergence { a: worst.a, b: worst.b, error: worst.error });
        }
        let mid = 0.5 * (worst.a + worst.b);
        pending += push(worst.a, mid, worst.depth + 1, &mut heap, &mut settled)?;
        pending += push(mid, worst.b, worst.depth + 1, &mut heap, &mut settled)?;
        if pending <= tol {
            // Guard against drift in the running sum.
            pending = heap.iter().map(|p| p.error).sum();
        }
    }

    let mut pieces: Vec<(f64, f64)> = settled;
    pieces.extend(heap.into_iter().map(|p| (p.a, p.value)));
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(pieces.iter().map(|p| p.1).sum())
}

/// Integrates over `[a, b]` after splitting at every point of `breaks`
/// that lies strictly inside. The tolerance is shared evenly by the pieces.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], abs_tol: f64) -> Result<f64> {
    let mut knots = vec![a];
    for &p in breaks {
        if p > a && p < b && knots.last().is_some_and(|&last| p > last) {
            knots.push(p);
        }
    }
    knots.push(b);
    let pieces = (knots.len() - 1) as f64;
    let mut total = 0.0;
    for w in knots.windows(2) {
        total += integrate_adaptive(&f, w[0], w[1], abs_tol / pieces)?;
    }
    Ok(total)
}
