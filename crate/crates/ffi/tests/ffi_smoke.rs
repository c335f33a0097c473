//! Exercises the C surface from Rust: handle lifecycle, status codes,
//! error reporting, and JSON payload shapes.

use std::ffi::{CStr, CString};
use std::ptr;

use mixmult_ffi::*;

fn cstring(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    mm_string_free(ptr);
    text
}

const FREE_PAIR: &str = r#"{
    "variables": ["x", "y"],
    "j": ["x", "y"],
    "ideals": [["x", "y"]]
}"#;

#[test]
fn version_is_a_static_string() {
    let v = unsafe { CStr::from_ptr(mm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn parse_compute_and_free() {
    let json = cstring(FREE_PAIR);
    let mut handle: *mut MmInstance = ptr::null_mut();
    let status = unsafe { mm_instance_parse_json(json.as_ptr(), &mut handle) };
    assert_eq!(status, MmStatus::MmOk);
    assert!(!handle.is_null());

    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { mm_compute_json(handle, &mut out) };
    assert_eq!(status, MmStatus::MmOk);
    let parsed: serde_json::Value = serde_json::from_str(&unsafe { take_string(out) }).unwrap();
    assert_eq!(parsed["q"], 2);
    assert_eq!(parsed["tilde_e"], 2);
    assert_eq!(parsed["mixed"]["1,0"], 1);

    let mut primes: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { mm_primes_json(handle, &mut primes) };
    assert_eq!(status, MmStatus::MmOk);
    let parsed: serde_json::Value = serde_json::from_str(&unsafe { take_string(primes) }).unwrap();
    assert_eq!(parsed["module_dimension"], 2);

    unsafe { mm_instance_free(handle) };
}

#[test]
fn verify_statuses_follow_the_verdict() {
    let json = cstring(FREE_PAIR);
    let mut handle: *mut MmInstance = ptr::null_mut();
    assert_eq!(
        unsafe { mm_instance_parse_json(json.as_ptr(), &mut handle) },
        MmStatus::MmOk
    );

    let params = cstring(r#"{ "theorem": "scaling", "u": [3] }"#);
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { mm_verify_json(handle, params.as_ptr(), &mut out) };
    assert_eq!(status, MmStatus::MmOk);
    let report: serde_json::Value = serde_json::from_str(&unsafe { take_string(out) }).unwrap();
    assert_eq!(report["verdict"], "verified");
    assert_eq!(report["theorem_id"], "scaling");

    // no embedded request and no params: invalid
    let mut out2: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { mm_verify_json(handle, ptr::null(), &mut out2) };
    assert_eq!(status, MmStatus::MmInvalid);
    assert!(out2.is_null());
    let err = unsafe { CStr::from_ptr(mm_last_error()) };
    assert!(err.to_str().unwrap().contains("no verification request"));

    unsafe { mm_instance_free(handle) };
}

#[test]
fn bad_inputs_set_the_error_message() {
    let mut handle: *mut MmInstance = ptr::null_mut();
    let bad = cstring("{ not json");
    let status = unsafe { mm_instance_parse_json(bad.as_ptr(), &mut handle) };
    assert_eq!(status, MmStatus::MmInvalid);
    assert!(handle.is_null());
    let err = unsafe { CStr::from_ptr(mm_last_error()) };
    assert!(err.to_str().unwrap().contains("instance JSON"));

    // a well-formed document with an invalid system is rejected at parse
    let invalid = cstring(r#"{ "variables": ["x", "y"], "j": ["x"] }"#);
    let status = unsafe { mm_instance_parse_json(invalid.as_ptr(), &mut handle) };
    assert_eq!(status, MmStatus::MmInvalid);

    let status = unsafe { mm_instance_parse_json(ptr::null(), &mut handle) };
    assert_eq!(status, MmStatus::MmInvalid);

    // freeing null is a no-op
    unsafe { mm_instance_free(ptr::null_mut()) };
    unsafe { mm_string_free(ptr::null_mut()) };
}

#[test]
fn degenerate_instances_report_invalid_on_compute() {
    let json = cstring(
        r#"{
            "variables": ["x", "y"],
            "j": ["x", "y"],
            "ideals": [["x"]],
            "module": { "l": ["x^2", "x*y"] }
        }"#,
    );
    let mut handle: *mut MmInstance = ptr::null_mut();
    assert_eq!(
        unsafe { mm_instance_parse_json(json.as_ptr(), &mut handle) },
        MmStatus::MmOk
    );
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { mm_compute_json(handle, &mut out) };
    assert_eq!(status, MmStatus::MmInvalid);
    assert!(out.is_null());
    unsafe { mm_instance_free(handle) };
}
