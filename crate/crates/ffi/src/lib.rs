//! C ABI over `coherent_lab`.
//!
//! Every fallible function returns a [`ClStatus`] and writes its result
//! through out-pointers. On failure the message is available from
//! [`cl_last_error`] on the same thread. States are opaque handles that must
//! be released with [`cl_state_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coherent_lab::fock::{FockDim, FockVector};
use coherent_lab::landau::{landau_energy, pncs_symmetric_closed, sturmian_radial, LandauConfig};
use coherent_lab::su11::{perelomov_ncs, BargmannIndex, SU11Parameter};
use coherent_lab::weyl::{number_coherent_state, WeylParameter};
use coherent_lab::{Complex64, LabError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TruncationGuard = 3,
    PoleGuard = 4,
    Numerical = 5,
    OutOfBounds = 6,
    Panic = 7,
}

impl From<&LabError> for ClStatus {
    fn from(e: &LabError) -> Self {
        match e {
            LabError::TruncationGuard(_) => ClStatus::TruncationGuard,
            LabError::PoleGuard(_) => ClStatus::PoleGuard,
            e if e.is_numerical() => ClStatus::Numerical,
            _ => ClStatus::InvalidArgument,
        }
    }
}

/// Expansion coefficients of a coherent state in the truncated Fock basis.
pub struct ClState {
    coeffs: FockVector,
    tail_mass: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, translating errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<(), ClStatus>) -> ClStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            ClStatus::Panic
        }
    }
}

fn lab<T>(r: coherent_lab::Result<T>) -> Result<T, ClStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        ClStatus::from(&e)
    })
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), ClStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        Err(ClStatus::NullPointer)
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn emit_state(coeffs: FockVector, tail_mass: f64, out: *mut *mut ClState) {
    let handle = Box::new(ClState { coeffs, tail_mass });
    // SAFETY: caller checked `out` is non-null.
    unsafe { *out = Box::into_raw(handle) };
}

/// Heisenberg-Weyl number coherent state `D(alpha)|n>` on `dim` levels.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_weyl_state(
    n: usize,
    alpha_re: f64,
    alpha_im: f64,
    dim: usize,
    out: *mut *mut ClState,
) -> ClStatus {
    guarded(|| {
        non_null(out, "out")?;
        let d = lab(FockDim::new(dim))?;
        let p = lab(WeylParameter::new(Complex64::new(alpha_re, alpha_im)))?;
        let s = lab(number_coherent_state(n, &p, d))?;
        emit_state(s.coeffs, s.tail_mass, out);
        Ok(())
    })
}

/// SU(1,1) number coherent state `D(xi)|k, n>` with `xi = -(tau/2) e^{-i phi}`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_perelomov_state(
    n: usize,
    k: f64,
    tau: f64,
    phi: f64,
    dim: usize,
    out: *mut *mut ClState,
) -> ClStatus {
    guarded(|| {
        non_null(out, "out")?;
        let d = lab(FockDim::new(dim))?;
        let k = lab(BargmannIndex::new(k))?;
        let p = lab(SU11Parameter::new(tau, phi))?;
        let s = lab(perelomov_ncs(n, k, &p, d))?;
        emit_state(s.coeffs, s.tail_mass, out);
        Ok(())
    })
}

/// Number of coefficients held by `state`, or 0 for null.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_state_len(state: *const ClState) -> usize {
    state.as_ref().map_or(0, |s| s.coeffs.dim().get())
}

/// Squared norm of the expansion beyond the truncation, or NaN for null.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_state_tail_mass(state: *const ClState) -> f64 {
    state.as_ref().map_or(f64::NAN, |s| s.tail_mass)
}

/// Coefficient `index` of `state`.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_state_coefficient(
    state: *const ClState,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> ClStatus {
    guarded(|| {
        non_null(state, "state")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let s = &*state;
        if index >= s.coeffs.dim().get() {
            set_error(format!(
                "index {index} beyond dimension {}",
                s.coeffs.dim().get()
            ));
            return Err(ClStatus::OutOfBounds);
        }
        let c = s.coeffs.get(index);
        *re = c.re;
        *im = c.im;
        Ok(())
    })
}

/// Copies all coefficients into `re` and `im`, which must each hold `len`
/// doubles with `len` equal to [`cl_state_len`].
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must be writable for `len`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn cl_state_copy(
    state: *const ClState,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> ClStatus {
    guarded(|| {
        non_null(state, "state")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let s = &*state;
        let n = s.coeffs.dim().get();
        if len != n {
            set_error(format!("buffer length {len} does not match dimension {n}"));
            return Err(ClStatus::OutOfBounds);
        }
        let re = std::slice::from_raw_parts_mut(re, len);
        let im = std::slice::from_raw_parts_mut(im, len);
        for (i, c) in s.coeffs.coeffs().iter().enumerate() {
            re[i] = c.re;
            im[i] = c.im;
        }
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cl_state_free(state: *mut ClState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Landau level `(n + 1/2) omega + kz^2 / 2` in natural units.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_landau_energy(
    n: usize,
    omega: f64,
    kz: f64,
    out: *mut f64,
) -> ClStatus {
    guarded(|| {
        non_null(out, "out")?;
        let cfg = lab(LandauConfig::natural(omega, 0.0, kz))?;
        *out = landau_energy(n, &cfg);
        Ok(())
    })
}

/// Normalized Sturmian radial function `U_{n,m}(y)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_sturmian_radial(n: usize, m: usize, y: f64, out: *mut f64) -> ClStatus {
    guarded(|| {
        non_null(out, "out")?;
        *out = lab(sturmian_radial(n, m, y))?;
        Ok(())
    })
}

/// Symmetric-gauge number coherent state at polar point `(rho, angle)`.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_symmetric_state(
    n: usize,
    m: u32,
    tau: f64,
    phi: f64,
    rho: f64,
    angle: f64,
    re: *mut f64,
    im: *mut f64,
) -> ClStatus {
    guarded(|| {
        non_null(re, "re")?;
        non_null(im, "im")?;
        let p = lab(SU11Parameter::new(tau, phi))?;
        let v = lab(pncs_symmetric_closed(n, m, &p, rho, angle))?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}
