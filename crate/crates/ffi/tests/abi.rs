use std::ffi::{CStr, CString};
use std::ptr;

use carc_ffi::*;

unsafe fn parse(text: &str) -> *mut CarcModel {
    let text = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(carc_model_parse(text.as_ptr(), &mut m), CarcStatus::Ok);
    m
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    carc_string_free(s);
    out
}

#[test]
fn parse_and_print() {
    unsafe {
        let m = parse("3\ns0 t0 s1 t1 s2 t2\n");
        assert_eq!(carc_model_arc_count(m), 3);
        assert_eq!(take_string(carc_model_to_string(m)), "3\ns0 t0 s1 t1 s2 t2\n");
        carc_model_free(m);
    }
}

#[test]
fn parse_errors_set_the_message() {
    unsafe {
        let bad = CString::new("2\ns0 s0 t0 t1\n").unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(carc_model_parse(bad.as_ptr(), &mut m), CarcStatus::Parse);
        assert!(m.is_null());
        let msg = CStr::from_ptr(carc_last_error()).to_str().unwrap();
        assert!(msg.contains("duplicate"), "{msg}");
        assert_eq!(carc_model_parse(ptr::null(), &mut m), CarcStatus::NullArgument);
        assert_eq!(carc_model_arc_count(ptr::null()), 0);
    }
}

#[test]
fn authentication_reports_cover() {
    unsafe {
        let m = parse("2\ns0 t1 s1 t0\n");
        let mut arcs = [0usize; 3];
        let mut len = 9;
        assert_eq!(carc_authenticate_nhca(m, arcs.as_mut_ptr(), &mut len), CarcStatus::Negative);
        assert_eq!((len, &arcs[..2]), (2, &[0, 1][..]));
        carc_model_free(m);
        let ok = parse("2\ns0 t0 s1 t1\n");
        assert_eq!(carc_authenticate_nhca(ok, arcs.as_mut_ptr(), &mut len), CarcStatus::Ok);
        assert_eq!(len, 0);
        carc_model_free(ok);
    }
}

#[test]
fn recognition_and_certificates() {
    unsafe {
        // A claw: one long arc over three disjoint points.
        let claw = parse("4\ns0 s1 t1 s2 t2 s3 t3 t0\n");
        let mut cert = ptr::null_mut();
        assert_eq!(carc_recognize(claw, CarcClass::PhcaFromNhca, &mut cert), CarcStatus::Negative);
        assert!(!carc_certificate_is_positive(cert));
        assert!(carc_certificate_verify(cert, claw));
        assert!(take_string(carc_certificate_to_string(cert)).contains("certificate=K13"));
        let mut out = ptr::null_mut();
        assert_eq!(carc_certificate_model(cert, &mut out), CarcStatus::Negative);
        carc_certificate_free(cert);

        assert_eq!(carc_recognize(claw, CarcClass::PhcaFromPca, &mut cert), CarcStatus::Precondition);
        carc_model_free(claw);

        let hole = parse("4\ns0 t3 s1 t0 s2 t1 s3 t2\n");
        assert_eq!(carc_recognize(hole, CarcClass::Uhca, &mut cert), CarcStatus::Ok);
        assert_eq!(carc_certificate_model(cert, &mut out), CarcStatus::Ok);
        assert_eq!(carc_model_arc_count(out), 4);
        carc_model_free(out);
        carc_certificate_free(cert);
        carc_model_free(hole);
    }
}

#[test]
fn header_lists_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/carc.h")).unwrap();
    for name in ["carc_model_parse", "carc_recognize", "carc_last_error", "CARC_STATUS_NEGATIVE", "typedef struct CarcModel"] {
        assert!(header.contains(name), "{name}");
    }
}
