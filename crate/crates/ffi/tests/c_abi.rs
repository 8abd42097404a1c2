//! Exercises the C entry points from Rust: handle lifecycle, status codes,
//! null/UTF-8 handling, and tamper detection through the FFI surface.

use nclift_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

const LIFT_SCENARIO: &str = r#"{
  "task": "lift",
  "seed": 1,
  "instance": {"kind": "zmod_pk", "p": 7, "k": 2},
  "filtration": "adic",
  "poly": [[-15], [0], [1]],
  "residue_f1": [[-1], [1]],
  "residue_f2": [[1], [1]]
}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn handle_lifecycle_and_verification() {
    unsafe {
        let json = cstr(LIFT_SCENARIO);
        let mut scenario: *mut NcliftScenario = ptr::null_mut();
        assert_eq!(
            nclift_scenario_parse(json.as_ptr(), &mut scenario),
            NcliftStatus::Ok
        );
        assert!(!scenario.is_null());

        let mut report: *mut NcliftReport = ptr::null_mut();
        assert_eq!(
            nclift_scenario_run(scenario, &mut report),
            NcliftStatus::Ok
        );
        assert!(!report.is_null());
        assert_eq!(nclift_report_status(report), NcliftStatus::Ok);

        let report_json = nclift_report_to_json(report);
        assert!(!report_json.is_null());
        let report_text = CStr::from_ptr(report_json).to_str().unwrap().to_string();
        assert!(report_text.contains("\"task\": \"lift\""));

        // Round trip through the verifier.
        let rj = cstr(&report_text);
        let mut failures: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            nclift_verify_report_json(rj.as_ptr(), json.as_ptr(), &mut failures),
            NcliftStatus::Ok
        );
        assert!(failures.is_null());

        // Tamper with one coefficient: detection with named failures.
        let tampered = report_text.replace("\"factor1\": [\n        [\n          41", "\"factor1\": [\n        [\n          40");
        assert_ne!(tampered, report_text, "tamper target not found");
        let tj = cstr(&tampered);
        let status = nclift_verify_report_json(tj.as_ptr(), json.as_ptr(), &mut failures);
        assert_eq!(status, NcliftStatus::Negative);
        assert!(!failures.is_null());
        let failure_text = CStr::from_ptr(failures).to_str().unwrap();
        assert!(failure_text.contains("product_exact"));
        nclift_string_free(failures);

        nclift_string_free(report_json);
        nclift_report_free(report);
        nclift_scenario_free(scenario);
    }
}

#[test]
fn one_shot_run() {
    unsafe {
        let json = cstr(LIFT_SCENARIO);
        let mut out: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            nclift_run_scenario_json(json.as_ptr(), &mut out),
            NcliftStatus::Ok
        );
        assert!(!out.is_null());
        let text = CStr::from_ptr(out).to_str().unwrap();
        assert!(text.contains("\"status\": \"ok\""));
        nclift_string_free(out);
    }
}

#[test]
fn status_codes_for_bad_inputs() {
    unsafe {
        let mut scenario: *mut NcliftScenario = ptr::null_mut();
        assert_eq!(
            nclift_scenario_parse(ptr::null(), &mut scenario),
            NcliftStatus::NullArgument
        );

        let bad = cstr("{\"task\": \"lift\"}");
        assert_eq!(
            nclift_scenario_parse(bad.as_ptr(), &mut scenario),
            NcliftStatus::InputError
        );

        let invalid_utf8 = [0xffu8, 0xfe, 0x00];
        assert_eq!(
            nclift_scenario_parse(invalid_utf8.as_ptr() as *const libc::c_char, &mut scenario),
            NcliftStatus::InvalidUtf8
        );

        // Null out-pointer.
        let ok = cstr(LIFT_SCENARIO);
        assert_eq!(
            nclift_scenario_parse(ok.as_ptr(), ptr::null_mut()),
            NcliftStatus::NullArgument
        );
    }
}

#[test]
fn negative_outcome_maps_to_negative_status() {
    // The hypothesis-failure specimen reports negative, not an error.
    let scenario = r#"{
      "task": "check-pair",
      "instance": {"kind": "full_upper", "p": 5, "size": 2},
      "filtration": "degree"
    }"#;
    unsafe {
        let json = cstr(scenario);
        let mut out: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            nclift_run_scenario_json(json.as_ptr(), &mut out),
            NcliftStatus::Negative
        );
        assert!(!out.is_null(), "negative outcomes still carry a report");
        nclift_string_free(out);
    }
}
