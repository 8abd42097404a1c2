//! C ABI over the scenario runner. Handles are opaque; every entry point
//! returns a status code and never unwinds across the boundary.
//!
//! Ownership rules: `nclift_scenario_parse` / `nclift_scenario_run`
//! allocate handles released by the matching `_free`; strings returned
//! through out-pointers are released with `nclift_string_free`.

use libc::c_char;
use nclift::scenario::{run_scenario, verify_report, Report, Scenario, Status};
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes of every FFI entry point. The numeric values of the first
/// four match the CLI exit convention.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NcliftStatus {
    /// Success.
    Ok = 0,
    /// Mathematical negative, honestly reported (report still produced).
    Negative = 2,
    /// A cap was hit; the outcome is inconclusive (report still produced).
    Inconclusive = 3,
    /// Malformed input or schema violation.
    InputError = 4,
    /// A required pointer argument was null.
    NullArgument = 5,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 6,
    /// An internal invariant failed; the library caught a panic.
    Panic = 7,
}

/// Opaque parsed scenario.
pub struct NcliftScenario {
    inner: Scenario,
}

/// Opaque report produced by a run.
pub struct NcliftReport {
    inner: Report,
}

fn status_of(report: &Report) -> NcliftStatus {
    match report.body.outcome.status {
        Status::Ok => NcliftStatus::Ok,
        Status::Negative => NcliftStatus::Negative,
        Status::Inconclusive => NcliftStatus::Inconclusive,
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, NcliftStatus> {
    if ptr.is_null() {
        return Err(NcliftStatus::NullArgument);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| NcliftStatus::InvalidUtf8)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Parses a scenario from JSON.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On `Ok` the caller owns the handle and must release it with
/// [`nclift_scenario_free`].
#[no_mangle]
pub unsafe extern "C" fn nclift_scenario_parse(
    json: *const c_char,
    out: *mut *mut NcliftScenario,
) -> NcliftStatus {
    if out.is_null() {
        return NcliftStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match catch_unwind(|| Scenario::from_json(text)) {
        Err(_) => NcliftStatus::Panic,
        Ok(Err(_)) => NcliftStatus::InputError,
        Ok(Ok(scenario)) => {
            *out = Box::into_raw(Box::new(NcliftScenario { inner: scenario }));
            NcliftStatus::Ok
        }
    }
}

/// Releases a scenario handle. Null is allowed.
///
/// # Safety
/// `handle` must have been returned by [`nclift_scenario_parse`] and not
/// freed before.
#[no_mangle]
pub unsafe extern "C" fn nclift_scenario_free(handle: *mut NcliftScenario) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Runs a parsed scenario. The returned status mirrors the report outcome
/// (Ok / Negative / Inconclusive); a report handle is produced in all
/// three cases.
///
/// # Safety
/// `scenario` must be a live handle from [`nclift_scenario_parse`]; `out`
/// must be a valid pointer. On success the caller owns the report handle.
#[no_mangle]
pub unsafe extern "C" fn nclift_scenario_run(
    scenario: *const NcliftScenario,
    out: *mut *mut NcliftReport,
) -> NcliftStatus {
    if scenario.is_null() || out.is_null() {
        return NcliftStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let sc = &(*scenario).inner;
    match catch_unwind(AssertUnwindSafe(|| run_scenario(sc))) {
        Err(_) => NcliftStatus::Panic,
        Ok(Err(_)) => NcliftStatus::InputError,
        Ok(Ok(report)) => {
            let status = status_of(&report);
            *out = Box::into_raw(Box::new(NcliftReport { inner: report }));
            status
        }
    }
}

/// Releases a report handle. Null is allowed.
///
/// # Safety
/// `handle` must have been returned by [`nclift_scenario_run`] and not
/// freed before.
#[no_mangle]
pub unsafe extern "C" fn nclift_report_free(handle: *mut NcliftReport) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Status carried by a report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nclift_report_status(report: *const NcliftReport) -> NcliftStatus {
    if report.is_null() {
        return NcliftStatus::NullArgument;
    }
    status_of(&(*report).inner)
}

/// Serializes a report to JSON. Returns NULL on allocation failure; the
/// caller frees the string with [`nclift_string_free`].
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nclift_report_to_json(report: *const NcliftReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    to_c_string((*report).inner.to_json())
}

/// One-shot convenience: parse, run, and serialize the report. On any
/// status except InputError/NullArgument/InvalidUtf8/Panic a report JSON
/// string is written to `out_report_json` (caller frees).
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out_report_json` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nclift_run_scenario_json(
    json: *const c_char,
    out_report_json: *mut *mut c_char,
) -> NcliftStatus {
    if out_report_json.is_null() {
        return NcliftStatus::NullArgument;
    }
    *out_report_json = ptr::null_mut();
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match catch_unwind(|| nclift::scenario::run_scenario_json(text)) {
        Err(_) => NcliftStatus::Panic,
        Ok(Err(_)) => NcliftStatus::InputError,
        Ok(Ok(report)) => {
            let status = status_of(&report);
            *out_report_json = to_c_string(report.to_json());
            status
        }
    }
}

/// Re-checks every certificate of a report against its scenario. Returns
/// Ok when the report verifies, Negative when a certificate fails (the
/// failures are written to `out_failures` as one line each, caller frees).
///
/// # Safety
/// `report_json` and `scenario_json` must be valid NUL-terminated strings;
/// `out_failures` may be null when the failure list is not wanted.
#[no_mangle]
pub unsafe extern "C" fn nclift_verify_report_json(
    report_json: *const c_char,
    scenario_json: *const c_char,
    out_failures: *mut *mut c_char,
) -> NcliftStatus {
    if !out_failures.is_null() {
        *out_failures = ptr::null_mut();
    }
    let report = match read_str(report_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let scenario = match read_str(scenario_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match catch_unwind(|| verify_report(report, scenario)) {
        Err(_) => NcliftStatus::Panic,
        Ok(Err(_)) => NcliftStatus::InputError,
        Ok(Ok(outcome)) => {
            if outcome.ok {
                NcliftStatus::Ok
            } else {
                if !out_failures.is_null() {
                    *out_failures = to_c_string(outcome.failures.join("\n"));
                }
                NcliftStatus::Negative
            }
        }
    }
}

/// Releases a string produced by this library. Null is allowed.
///
/// # Safety
/// `s` must have been returned by one of the string-producing entry points
/// and not freed before.
#[no_mangle]
pub unsafe extern "C" fn nclift_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
