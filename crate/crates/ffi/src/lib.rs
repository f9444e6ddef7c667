//! C interface to `unruh-cv`.
//!
//! Covariance matrices cross the boundary as opaque [`UcvCovMatrix`] handles
//! owned by the caller and released with [`ucv_cm_free`]. Every fallible
//! function returns a [`UcvStatus`]; on failure a description is available
//! from [`ucv_last_error_message`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unruh_cv::analysis::{self, DoubleObserverReport, SingleObserverReport};
use unruh_cv::info_measures as im;
use unruh_cv::phase_space::{CovMatrix, ModeIndexSet};
use unruh_cv::{rindler, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcvStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad shape, mode index or partition.
    InvalidArgument = 2,
    /// A scalar parameter is outside its domain.
    Domain = 3,
    /// The input is not a physical covariance matrix or state.
    NotPhysical = 4,
    /// A numerical routine lost accuracy.
    Numerical = 5,
    Unsupported = 6,
    /// The output buffer is too short; the required length was written.
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque covariance matrix.
pub struct UcvCovMatrix(CovMatrix);

/// Result of a two-mode entanglement evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UcvMeasure {
    pub m_parameter: f64,
    pub contangle: f64,
    pub separable: bool,
}

/// Closed-form summary for one inertial and one accelerated observer.
/// `tau_max` is `INFINITY` at `r = 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UcvSingleReport {
    pub s: f64,
    pub r: f64,
    pub m_a_rrbar: f64,
    pub m_r_arbar: f64,
    pub m_rbar_ar: f64,
    pub m_ar: f64,
    pub m_rrbar: f64,
    pub tau_ar: f64,
    pub tau_rrbar: f64,
    pub tau_max: f64,
    pub r_star: f64,
    pub residual_tripartite: f64,
    pub mutual_info_ar: f64,
    pub entropy_of_entanglement: f64,
}

/// Closed-form summary for two accelerated observers. Fields defined only
/// at equal accelerations are `NAN` otherwise; `r_eff` is `NAN` at `s = 0`
/// and `INFINITY` when no finite effective acceleration exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UcvDoubleReport {
    pub s: f64,
    pub l: f64,
    pub n: f64,
    pub m_l_n: f64,
    pub m_l_lbar: f64,
    pub m_n_nbar: f64,
    pub m_l_nbar: f64,
    pub m_n_lbar: f64,
    pub m_lbar_nbar: f64,
    pub m_lbar_rest: f64,
    pub m_l_rest: f64,
    pub m_n_rest: f64,
    pub m_nbar_rest: f64,
    pub tau_l_n: f64,
    pub r_eff: f64,
    pub a_star: f64,
    pub residual_multipartite: f64,
    pub tripartite_upper_bound: f64,
    pub mutual_info_l_n: f64,
    pub deficit: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> UcvStatus {
    match e {
        Error::Domain { .. } => UcvStatus::Domain,
        Error::NoModes
        | Error::BadShape { .. }
        | Error::DimensionMismatch { .. }
        | Error::ModeOutOfRange { .. }
        | Error::UnorderedModes
        | Error::EmptyModeSet
        | Error::SameMode(_)
        | Error::InvalidPartition(_)
        | Error::InvalidArgument(_) => UcvStatus::InvalidArgument,
        Error::NotSymmetric(_)
        | Error::NotSymplectic(_)
        | Error::NotPositiveDefinite(_)
        | Error::NotPure(_)
        | Error::BelowSeparable(_)
        | Error::EntropyDomain(_) => UcvStatus::NotPhysical,
        Error::Pairing(_) => UcvStatus::Numerical,
        Error::Unsupported(_) => UcvStatus::Unsupported,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (UcvStatus, String)>) -> UcvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UcvStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_owned());
            UcvStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (UcvStatus, String)>;
}

impl<T> IntoFfi<T> for unruh_cv::Result<T> {
    fn ffi(self) -> Result<T, (UcvStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (UcvStatus, String) {
    (UcvStatus::NullPointer, format!("{what} is null"))
}

unsafe fn cm_ref<'a>(cm: *const UcvCovMatrix) -> Result<&'a CovMatrix, (UcvStatus, String)> {
    cm.as_ref()
        .map(|c| &c.0)
        .ok_or_else(|| null("matrix handle"))
}

unsafe fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, (UcvStatus, String)> {
    out.as_mut().ok_or_else(|| null("output pointer"))
}

unsafe fn modes(ptr: *const usize, len: usize) -> Result<ModeIndexSet, (UcvStatus, String)> {
    if ptr.is_null() {
        return Err(null("mode list"));
    }
    ModeIndexSet::new(std::slice::from_raw_parts(ptr, len).to_vec()).ffi()
}

unsafe fn store(out: *mut *mut UcvCovMatrix, cm: CovMatrix) -> Result<(), (UcvStatus, String)> {
    let slot = out_ref(out)?;
    *slot = Box::into_raw(Box::new(UcvCovMatrix(cm)));
    Ok(())
}

unsafe fn fill(
    buf: *mut f64,
    len: usize,
    required: *mut usize,
    values: &[f64],
) -> Result<(), (UcvStatus, String)> {
    if let Some(r) = required.as_mut() {
        *r = values.len();
    }
    if len < values.len() {
        return Err((
            UcvStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    std::slice::from_raw_parts_mut(buf, values.len()).copy_from_slice(values);
    Ok(())
}

/// Description of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ucv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a matrix from `4 * n_modes^2` row-major entries.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_new(
    n_modes: usize,
    data: *const f64,
    len: usize,
    out: *mut *mut UcvCovMatrix,
) -> UcvStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let d = 2 * n_modes;
        if len != d * d {
            return Err((
                UcvStatus::InvalidArgument,
                format!("expected {} entries, got {len}", d * d),
            ));
        }
        let cm = CovMatrix::from_row_slice(n_modes, std::slice::from_raw_parts(data, len)).ffi()?;
        store(out, cm)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_cm_vacuum(n_modes: usize, out: *mut *mut UcvCovMatrix) -> UcvStatus {
    guard(|| store(out, CovMatrix::vacuum(n_modes).ffi()?))
}

/// Three-mode state (Alice, Rob, anti-Rob) built numerically.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_single_observer(
    s: f64,
    r: f64,
    out: *mut *mut UcvCovMatrix,
) -> UcvStatus {
    guard(|| store(out, rindler::build_single_observer_cm(s, r).ffi()?))
}

/// Four-mode state (anti-Leo, Leo, Nadia, anti-Nadia) built numerically.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_double_observer(
    s: f64,
    l: f64,
    n: f64,
    out: *mut *mut UcvCovMatrix,
) -> UcvStatus {
    guard(|| store(out, rindler::build_double_observer_cm(s, l, n).ffi()?))
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_free(cm: *mut UcvCovMatrix) {
    if !cm.is_null() {
        drop(Box::from_raw(cm));
    }
}

/// Number of modes, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_n_modes(cm: *const UcvCovMatrix) -> usize {
    cm.as_ref().map_or(0, |c| c.0.n_modes())
}

/// Copies the row-major entries into `buf`. `required`, if not null,
/// receives the needed length.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_entries(
    cm: *const UcvCovMatrix,
    buf: *mut f64,
    len: usize,
    required: *mut usize,
) -> UcvStatus {
    guard(|| {
        let m = cm_ref(cm)?.as_matrix();
        let rows: Vec<f64> = m.transpose().iter().copied().collect();
        fill(buf, len, required, &rows)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_cm_reduce(
    cm: *const UcvCovMatrix,
    keep: *const usize,
    n_keep: usize,
    out: *mut *mut UcvCovMatrix,
) -> UcvStatus {
    guard(|| {
        let reduced = cm_ref(cm)?.reduce(&modes(keep, n_keep)?).ffi()?;
        store(out, reduced)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_cm_partial_transpose(
    cm: *const UcvCovMatrix,
    transposed: *const usize,
    n_transposed: usize,
    out: *mut *mut UcvCovMatrix,
) -> UcvStatus {
    guard(|| {
        let pt = cm_ref(cm)?
            .partial_transpose(&modes(transposed, n_transposed)?)
            .ffi()?;
        store(out, pt)
    })
}

/// Ascending symplectic eigenvalues, one per mode.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_symplectic_eigenvalues(
    cm: *const UcvCovMatrix,
    buf: *mut f64,
    len: usize,
    required: *mut usize,
) -> UcvStatus {
    guard(|| {
        let eta = cm_ref(cm)?.symplectic_eigenvalues().ffi()?;
        fill(buf, len, required, &eta)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_cm_von_neumann_entropy(
    cm: *const UcvCovMatrix,
    out: *mut f64,
) -> UcvStatus {
    guard(|| {
        *out_ref(out)? = im::von_neumann_entropy(cm_ref(cm)?).ffi()?;
        Ok(())
    })
}

/// Mutual information between the two modes of a two-mode matrix.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_mutual_information(
    cm: *const UcvCovMatrix,
    out: *mut f64,
) -> UcvStatus {
    guard(|| {
        *out_ref(out)? = im::mutual_information(cm_ref(cm)?, &ModeIndexSet::single(0)).ffi()?;
        Ok(())
    })
}

/// Logarithmic negativity for the bipartition `transposed | rest`.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_log_negativity(
    cm: *const UcvCovMatrix,
    transposed: *const usize,
    n_transposed: usize,
    out: *mut f64,
) -> UcvStatus {
    guard(|| {
        *out_ref(out)? =
            im::log_negativity(cm_ref(cm)?, &modes(transposed, n_transposed)?).ffi()?;
        Ok(())
    })
}

/// Contangle of a two-mode state.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_two_mode_contangle(
    cm: *const UcvCovMatrix,
    out: *mut UcvMeasure,
) -> UcvStatus {
    guard(|| {
        let rep = im::two_mode_contangle(cm_ref(cm)?).ffi()?;
        *out_ref(out)? = UcvMeasure {
            m_parameter: rep.m_parameter,
            contangle: rep.contangle,
            separable: rep.separable,
        };
        Ok(())
    })
}

/// m-value of `probe` against all other modes of a pure state.
#[no_mangle]
pub unsafe extern "C" fn ucv_cm_pure_one_vs_rest_m(
    cm: *const UcvCovMatrix,
    probe: usize,
    out: *mut f64,
) -> UcvStatus {
    guard(|| {
        *out_ref(out)? = rindler::pure_one_vs_rest_m(cm_ref(cm)?, probe).ffi()?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_contangle_from_m(m: f64, out: *mut f64) -> UcvStatus {
    guard(|| {
        *out_ref(out)? = im::contangle_from_m(m).ffi()?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_accel_to_squeezing(
    acceleration: f64,
    frequency: f64,
    out: *mut f64,
) -> UcvStatus {
    guard(|| {
        *out_ref(out)? = rindler::accel_to_squeezing(acceleration, frequency).ffi()?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_single_report(s: f64, r: f64, out: *mut UcvSingleReport) -> UcvStatus {
    guard(|| {
        let rep = SingleObserverReport::compute(s, r).ffi()?;
        *out_ref(out)? = UcvSingleReport {
            s: rep.s,
            r: rep.r,
            m_a_rrbar: rep.m_A_RRbar,
            m_r_arbar: rep.m_R_ARbar,
            m_rbar_ar: rep.m_Rbar_AR,
            m_ar: rep.m_AR,
            m_rrbar: rep.m_RRbar,
            tau_ar: rep.tau_AR,
            tau_rrbar: rep.tau_RRbar,
            tau_max: rep.tau_max.to_f64(),
            r_star: rep.r_star,
            residual_tripartite: rep.residual_tripartite,
            mutual_info_ar: rep.mutual_info_AR,
            entropy_of_entanglement: rep.entropy_of_entanglement,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ucv_double_report(
    s: f64,
    l: f64,
    n: f64,
    out: *mut UcvDoubleReport,
) -> UcvStatus {
    guard(|| {
        let rep = DoubleObserverReport::compute(s, l, n).ffi()?;
        let nan = |v: Option<f64>| v.unwrap_or(f64::NAN);
        *out_ref(out)? = UcvDoubleReport {
            s: rep.s,
            l: rep.l,
            n: rep.n,
            m_l_n: rep.pairwise.m_L_N,
            m_l_lbar: rep.pairwise.m_L_Lbar,
            m_n_nbar: rep.pairwise.m_N_Nbar,
            m_l_nbar: rep.pairwise.m_L_Nbar,
            m_n_lbar: rep.pairwise.m_N_Lbar,
            m_lbar_nbar: rep.pairwise.m_Lbar_Nbar,
            m_lbar_rest: rep.one_vs_rest.lbar,
            m_l_rest: rep.one_vs_rest.l,
            m_n_rest: rep.one_vs_rest.n,
            m_nbar_rest: rep.one_vs_rest.nbar,
            tau_l_n: rep.tau_L_N,
            r_eff: rep.r_eff.map_or(f64::NAN, analysis::Extended::to_f64),
            a_star: rep.a_star,
            residual_multipartite: nan(rep.residual_multipartite),
            tripartite_upper_bound: nan(rep.tripartite_upper_bound),
            mutual_info_l_n: nan(rep.mutual_info_LN),
            deficit: nan(rep.deficit),
        };
        Ok(())
    })
}
