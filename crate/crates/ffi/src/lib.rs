//! C ABI over the `internodal` crate.
//!
//! Every function returns an [`InternodalStatus`]; results are written
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`internodal_last_error`]. Models are opaque and must be
//! released with [`internodal_model_free`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use internodal::analysis::beta::fit_beta_density;
use internodal::analysis::distribution::{cdf_of, moment_of, MAX_MOMENT_ORDER};
use internodal::closedform::{curve_grid, ClosedForm, DistanceDensity};
use internodal::montecarlo::simulate;
use internodal::{Dimension, Error, NetworkConfig, Scenario};

/// Status codes shared by all entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InternodalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    InvalidArgument = 3,
    Domain = 4,
    NoConvergence = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque handle to a validated configuration and its closed-form density.
pub struct InternodalModel {
    model: ClosedForm,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct InternodalBetaFit {
    pub alpha: f64,
    pub beta: f64,
    pub mean: f64,
    pub variance: f64,
    pub normalization: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct InternodalSimSummary {
    pub n: u64,
    pub seed: u64,
    pub mean: f64,
    pub second_moment: f64,
    pub ks_statistic: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> InternodalStatus {
    match e {
        Error::NonPositiveRadius(_)
        | Error::InnerExceedsOuter { .. }
        | Error::NonFiniteInput(_)
        | Error::InvalidConfig(_) => InternodalStatus::InvalidConfig,
        Error::Precondition(_) | Error::InvalidParams { .. } => InternodalStatus::InvalidArgument,
        Error::Domain(_) | Error::InfeasibleMoments { .. } => InternodalStatus::Domain,
        Error::NoConvergence { .. } => InternodalStatus::NoConvergence,
    }
}

fn guard<F>(f: F) -> InternodalStatus
where
    F: FnOnce() -> Result<(), (InternodalStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            InternodalStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            InternodalStatus::Panic
        }
    }
}

fn lift(e: Error) -> (InternodalStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (InternodalStatus, String) {
    (InternodalStatus::NullPointer, format!("{what} is null"))
}

unsafe fn model_ref<'a>(model: *const InternodalModel) -> Result<&'a InternodalModel, (InternodalStatus, String)> {
    model.as_ref().ok_or_else(|| null("model"))
}

/// Creates a model. `dim` is 2 or 3, `scenario` is 1..=4, `r1 <= r2`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn internodal_model_new(
    dim: u8,
    scenario: u8,
    r1: f64,
    r2: f64,
    out: *mut *mut InternodalModel,
) -> InternodalStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let d = Dimension::from_degree(dim)
            .ok_or_else(|| (InternodalStatus::InvalidConfig, format!("dimension must be 2 or 3, got {dim}")))?;
        let s = Scenario::ALL
            .get((scenario as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| (InternodalStatus::InvalidConfig, format!("scenario must be 1..=4, got {scenario}")))?;
        let cfg = NetworkConfig::new(d, s, r1, r2).map_err(lift)?;
        let model = ClosedForm::new(cfg).map_err(lift)?;
        *out = Box::into_raw(Box::new(InternodalModel { model }));
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` must come from [`internodal_model_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn internodal_model_free(model: *mut InternodalModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Density at distance `r`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_pdf(model: *const InternodalModel, r: f64, out: *mut f64) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if !r.is_finite() {
            return Err((InternodalStatus::InvalidArgument, "r must be finite".to_string()));
        }
        *out = m.model.pdf(r);
        Ok(())
    })
}

/// Distribution function at distance `r`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_cdf(model: *const InternodalModel, r: f64, out: *mut f64) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = cdf_of(&m.model, r).map_err(lift)?;
        Ok(())
    })
}

/// Raw moment E[r^k], `k <= 8`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_moment(model: *const InternodalModel, k: u32, out: *mut f64) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if k > MAX_MOMENT_ORDER {
            return Err((InternodalStatus::InvalidArgument, format!("moment order {k} exceeds {MAX_MOMENT_ORDER}")));
        }
        *out = moment_of(&m.model, k).map_err(lift)?;
        Ok(())
    })
}

/// Beta approximation of `r / (r1 + r2)`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_fit_beta(
    model: *const InternodalModel,
    out: *mut InternodalBetaFit,
) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let fit = fit_beta_density(&m.model).map_err(lift)?;
        *out = InternodalBetaFit {
            alpha: fit.alpha,
            beta: fit.beta,
            mean: fit.mean,
            variance: fit.variance,
            normalization: fit.normalization,
        };
        Ok(())
    })
}

/// Number of grid points [`internodal_pdf_curve`] writes for `n_points`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_curve_len(
    model: *const InternodalModel,
    n_points: usize,
    out: *mut usize,
) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = curve_grid(m.model.config(), n_points).map_err(lift)?.len();
        Ok(())
    })
}

/// Writes the density curve into caller buffers of length `capacity`.
/// The number of points is stored in `written`; when `capacity` is too
/// small nothing is copied, `written` holds the required length and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `grid` and `values` must each point to `capacity` writable doubles,
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_pdf_curve(
    model: *const InternodalModel,
    n_points: usize,
    grid: *mut f64,
    values: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let written = written.as_mut().ok_or_else(|| null("written"))?;
        let r = curve_grid(m.model.config(), n_points).map_err(lift)?;
        *written = r.len();
        if r.len() > capacity {
            return Err((
                InternodalStatus::BufferTooSmall,
                format!("curve needs {} points, buffer holds {capacity}", r.len()),
            ));
        }
        if grid.is_null() {
            return Err(null("grid"));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let grid = std::slice::from_raw_parts_mut(grid, r.len());
        let values = std::slice::from_raw_parts_mut(values, r.len());
        for (k, &x) in r.iter().enumerate() {
            grid[k] = x;
            values[k] = m.model.pdf(x);
        }
        Ok(())
    })
}

/// Simulates `n` pair distances from `seed`; results do not depend on the
/// thread count.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn internodal_simulate(
    model: *const InternodalModel,
    n: u64,
    seed: u64,
    out: *mut InternodalSimSummary,
) -> InternodalStatus {
    guard(|| {
        let m = model_ref(model)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = simulate(*m.model.config(), n as usize, seed, 1).map_err(lift)?;
        *out = InternodalSimSummary {
            n: s.n as u64,
            seed: s.seed,
            mean: s.mean,
            second_moment: s.second_moment,
            ks_statistic: s.ks_statistic,
        };
        Ok(())
    })
}

/// Copies the calling thread's last error message, NUL-terminated and
/// truncated to `len` bytes. Returns the untruncated length without the
/// terminator; pass a null buffer to query it.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn internodal_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
