//! C ABI for the mixed-multiplicity engine.
//!
//! Instances are parsed once into an opaque handle; results come back as
//! heap-allocated JSON strings that the caller releases with
//! `mm_string_free`. Every entry point is panic-safe and reports failure
//! through status codes plus a thread-local message readable with
//! `mm_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixmult::instance::{
    effective_verify_spec, run_compute, run_primes, run_verify, InstanceDocument, VerifySpec,
};
use mixmult::verify::Verdict;
use mixmult::Error;

/// Status codes mirrored in the generated header. They match the process
/// exit codes of the command line tool where the two overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmStatus {
    /// Success; for verification this means the identity was verified.
    MmOk = 0,
    /// Verification ran to completion and the identity failed.
    MmViolated = 1,
    /// Bad input: null pointer, malformed JSON, or an invalid request.
    MmInvalid = 2,
    /// A hypothesis could not be established or a fit did not stabilize.
    MmInconclusive = 3,
    /// An internal panic was caught; the handle remains usable.
    MmPanic = 4,
}

/// Opaque parsed instance.
pub struct MmInstance {
    doc: InstanceDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let safe = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(safe));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_for(e: &Error) -> MmStatus {
    match e {
        Error::NonStabilized { .. } => MmStatus::MmInconclusive,
        _ => MmStatus::MmInvalid,
    }
}

fn emit_string(out: *mut *mut c_char, text: String) -> MmStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior nul byte");
            return MmStatus::MmInvalid;
        }
    };
    unsafe { *out = c.into_raw() };
    MmStatus::MmOk
}

fn guarded<F: FnOnce() -> MmStatus>(f: F) -> MmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            MmStatus::MmPanic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MmStatus> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(MmStatus::MmInvalid);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        MmStatus::MmInvalid
    })
}

/// Version of the engine as a static string; never freed by the caller.
#[no_mangle]
pub extern "C" fn mm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Last error message for this thread, or null when the previous call
/// succeeded. Valid until the next API call on the same thread.
#[no_mangle]
pub extern "C" fn mm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => ptr::null(),
    })
}

/// Parse an instance document; on success stores a new handle in `out`.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_instance_parse_json(
    json: *const c_char,
    out: *mut *mut MmInstance,
) -> MmStatus {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("null output pointer");
            return MmStatus::MmInvalid;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match InstanceDocument::from_json(text) {
            Ok(doc) => {
                // validate eagerly so compute/verify cannot fail on shape
                if let Err(e) = doc.to_system() {
                    set_error(&e.to_string());
                    return status_for(&e);
                }
                *out = Box::into_raw(Box::new(MmInstance { doc }));
                MmStatus::MmOk
            }
            Err(e) => {
                set_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Release a handle created by `mm_instance_parse_json`.
///
/// # Safety
/// `instance` must be a handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn mm_instance_free(instance: *mut MmInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Release a string returned by any `_json` entry point.
///
/// # Safety
/// `text` must be a string from this library or null.
#[no_mangle]
pub unsafe extern "C" fn mm_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

unsafe fn instance_ref<'a>(instance: *const MmInstance) -> Result<&'a MmInstance, MmStatus> {
    if instance.is_null() {
        set_error("null instance handle");
        return Err(MmStatus::MmInvalid);
    }
    Ok(&*instance)
}

/// Interpolate the stable polynomial and return the mixed values as JSON.
///
/// # Safety
/// `instance` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_compute_json(
    instance: *const MmInstance,
    out_json: *mut *mut c_char,
) -> MmStatus {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("null output pointer");
            return MmStatus::MmInvalid;
        }
        let handle = match instance_ref(instance) {
            Ok(h) => h,
            Err(status) => return status,
        };
        match run_compute(&handle.doc) {
            Ok(value) => emit_string(out_json, value.to_string()),
            Err(e) => {
                set_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Dimension and support data as JSON.
///
/// # Safety
/// `instance` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_primes_json(
    instance: *const MmInstance,
    out_json: *mut *mut c_char,
) -> MmStatus {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("null output pointer");
            return MmStatus::MmInvalid;
        }
        let handle = match instance_ref(instance) {
            Ok(h) => h,
            Err(status) => return status,
        };
        match run_primes(&handle.doc) {
            Ok(value) => emit_string(out_json, value.to_string()),
            Err(e) => {
                set_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Verify one identity. `params_json` may be null to use the request
/// embedded in the instance. The full report is returned as JSON and the
/// status encodes the verdict.
///
/// # Safety
/// Pointers must be valid as for the other entry points.
#[no_mangle]
pub unsafe extern "C" fn mm_verify_json(
    instance: *const MmInstance,
    params_json: *const c_char,
    out_json: *mut *mut c_char,
) -> MmStatus {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("null output pointer");
            return MmStatus::MmInvalid;
        }
        let handle = match instance_ref(instance) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let explicit: Option<VerifySpec> = if params_json.is_null() {
            None
        } else {
            let text = match read_str(params_json) {
                Ok(t) => t,
                Err(status) => return status,
            };
            match serde_json::from_str(text) {
                Ok(spec) => Some(spec),
                Err(e) => {
                    set_error(&format!("params JSON: {e}"));
                    return MmStatus::MmInvalid;
                }
            }
        };
        let spec = match effective_verify_spec(&handle.doc, explicit) {
            Ok(s) => s,
            Err(e) => {
                set_error(&e.to_string());
                return status_for(&e);
            }
        };
        match run_verify(&handle.doc, &spec) {
            Ok(report) => {
                let text = serde_json::to_string(&report).expect("reports always serialize");
                let emitted = emit_string(out_json, text);
                if emitted != MmStatus::MmOk {
                    return emitted;
                }
                match report.verdict {
                    Verdict::Verified => MmStatus::MmOk,
                    Verdict::Violated => MmStatus::MmViolated,
                    Verdict::Inconclusive => MmStatus::MmInconclusive,
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}
