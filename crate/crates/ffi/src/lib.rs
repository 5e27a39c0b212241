//! C ABI over the `carc` recognizers.
//!
//! Models and certificates are opaque handles owned by the caller and freed
//! with the matching `*_free` function. Every fallible call returns a
//! [`CarcStatus`]; the message of the last failure on the calling thread is
//! available from [`carc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use carc::certificate::Certificate;
use carc::io::{parse_model, write_model};
use carc::model::CircularArcModel;
use carc::nhca::{authenticate_nhca, recognize_nhca, Authentication};
use carc::phca::{phca_from_nhca, phca_from_pca};
use carc::uhca::{uhca_from_phca, UhcaOutcome};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarcStatus {
    Ok = 0,
    /// The call succeeded with a negative verdict.
    Negative = 1,
    NullArgument = 2,
    Parse = 3,
    /// The input violates the operation's precondition.
    Precondition = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarcClass {
    Nhca = 0,
    PhcaFromNhca = 1,
    PhcaFromPca = 2,
    Uhca = 3,
}

pub struct CarcModel(CircularArcModel);

pub struct CarcCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: CarcStatus, msg: impl Into<String>) -> CarcStatus {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn guarded(f: impl FnOnce() -> CarcStatus) -> CarcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CarcStatus::Internal, "panic inside carc"))
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn carc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `.cam` text into a new model handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn carc_model_parse(text: *const c_char, out: *mut *mut CarcModel) -> CarcStatus {
    if text.is_null() || out.is_null() {
        return fail(CarcStatus::NullArgument, "null argument");
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(CarcStatus::Parse, "model text is not UTF-8");
        };
        match parse_model(text) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(CarcModel(m)));
                CarcStatus::Ok
            }
            Err(e) => fail(CarcStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `model` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn carc_model_free(model: *mut CarcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of arcs, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn carc_model_arc_count(model: *const CarcModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.n())
}

/// The model as `.cam` text; free with [`carc_string_free`].
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn carc_model_to_string(model: *const CarcModel) -> *mut c_char {
    match model.as_ref() {
        Some(m) => CString::new(write_model(&m.0)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn carc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks that no two or three arcs cover the circle. On a negative verdict
/// the covering arcs are written to `arcs` (room for 3) and their count to `len`.
///
/// # Safety
/// `model` must be a live handle; `arcs` must hold 3 values; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn carc_authenticate_nhca(model: *const CarcModel, arcs: *mut usize, len: *mut usize) -> CarcStatus {
    let (Some(m), false, false) = (model.as_ref(), arcs.is_null(), len.is_null()) else {
        return fail(CarcStatus::NullArgument, "null argument");
    };
    guarded(|| {
        let found: &[usize] = match authenticate_nhca(&m.0) {
            Authentication::Ok => &[],
            Authentication::TwoCover(a, b) => &[a, b],
            Authentication::ThreeCover(a, b, c) => &[a, b, c],
        };
        ptr::copy_nonoverlapping(found.as_ptr(), arcs, found.len());
        *len = found.len();
        if found.is_empty() {
            CarcStatus::Ok
        } else {
            CarcStatus::Negative
        }
    })
}

fn recognize(model: &CircularArcModel, class: CarcClass) -> Result<Certificate, (CarcStatus, String)> {
    let pre = |e: &dyn std::fmt::Display| (CarcStatus::Precondition, e.to_string());
    match class {
        CarcClass::Nhca => Ok(recognize_nhca(model)),
        CarcClass::PhcaFromNhca => phca_from_nhca(model).map_err(|e| pre(&e)),
        CarcClass::PhcaFromPca => phca_from_pca(model).map_err(|e| pre(&e)),
        CarcClass::Uhca => match uhca_from_phca(model).map_err(|e| pre(&e))? {
            UhcaOutcome::Positive { model, .. } => Ok(Certificate::Positive(model)),
            UhcaOutcome::Negative(cert) => Ok(cert),
        },
    }
}

/// Runs a recognizer and stores its certificate in `out`. Returns `Ok` for a
/// positive and `Negative` for a negative certificate.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn carc_recognize(model: *const CarcModel, class: CarcClass, out: *mut *mut CarcCertificate) -> CarcStatus {
    let (Some(m), false) = (model.as_ref(), out.is_null()) else {
        return fail(CarcStatus::NullArgument, "null argument");
    };
    guarded(|| match recognize(&m.0, class) {
        Ok(cert) => {
            let status = if cert.is_positive() { CarcStatus::Ok } else { CarcStatus::Negative };
            *out = Box::into_raw(Box::new(CarcCertificate(cert)));
            status
        }
        Err((status, msg)) => fail(status, msg),
    })
}

/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn carc_certificate_is_positive(cert: *const CarcCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.0.is_positive())
}

/// Copies the model of a positive certificate into a new handle.
///
/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn carc_certificate_model(cert: *const CarcCertificate, out: *mut *mut CarcModel) -> CarcStatus {
    let (Some(c), false) = (cert.as_ref(), out.is_null()) else {
        return fail(CarcStatus::NullArgument, "null argument");
    };
    match c.0.model() {
        Some(m) => {
            *out = Box::into_raw(Box::new(CarcModel(m.clone())));
            CarcStatus::Ok
        }
        None => fail(CarcStatus::Negative, "certificate is negative"),
    }
}

/// Re-checks a negative certificate against the model it was computed for.
///
/// # Safety
/// Both handles must be null or live.
#[no_mangle]
pub unsafe extern "C" fn carc_certificate_verify(cert: *const CarcCertificate, input: *const CarcModel) -> bool {
    match (cert.as_ref(), input.as_ref()) {
        (Some(c), Some(m)) => catch_unwind(AssertUnwindSafe(|| c.0.verify_negative(&m.0))).unwrap_or(false),
        _ => false,
    }
}

/// The `key=value` report; free with [`carc_string_free`].
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn carc_certificate_to_string(cert: *const CarcCertificate) -> *mut c_char {
    match cert.as_ref() {
        Some(c) => CString::new(c.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `cert` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn carc_certificate_free(cert: *mut CarcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}
