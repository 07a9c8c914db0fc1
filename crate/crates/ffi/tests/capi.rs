use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hbknot_ffi::*;

fn parse(spec: &str) -> *mut HbkKnot {
    let s = CString::new(spec).unwrap();
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { hbk_knot_parse(s.as_ptr(), &mut k) }, HbkStatus::Ok);
    assert!(!k.is_null());
    k
}

fn last_error() -> String {
    let p = hbk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { hbk_string_free(p) };
    s
}

#[test]
fn left_specimen_slopes_and_mcg() {
    let k = parse("L:1,1,0");
    let mut slopes = std::mem::MaybeUninit::<HbkSlopes>::uninit();
    let mut mcg = HbkMcg::Z2;
    let mut ty = HbkJsjType::M;
    unsafe {
        assert_eq!(hbk_knot_slopes(k, slopes.as_mut_ptr()), HbkStatus::Ok);
        assert_eq!(hbk_knot_mcg(k, &mut mcg), HbkStatus::Ok);
        assert_eq!(hbk_knot_jsj_type(k, &mut ty), HbkStatus::Ok);
    }
    let s = unsafe { slopes.assume_init() };
    assert_eq!(s.jsj_type, HbkJsjType::K);
    assert_eq!(s.r1, HbkRational { num: 3, den: 1 });
    assert_eq!(s.r2, HbkRational { num: 3, den: 1 });
    assert_eq!(s.r_c, HbkRational { num: 4, den: 3 });
    assert_eq!(s.r_a, HbkRational::default());
    assert_eq!(mcg, HbkMcg::Z2xZ2);
    assert_eq!(ty, HbkJsjType::K);
    unsafe { hbk_knot_free(k) };
}

#[test]
fn type_m_slopes_fill_pair() {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { hbk_knot_new_right(4, 3, 1, 0, &mut k) }, HbkStatus::Ok);
    let mut s = std::mem::MaybeUninit::<HbkSlopes>::uninit();
    assert_eq!(unsafe { hbk_knot_slopes(k, s.as_mut_ptr()) }, HbkStatus::Ok);
    let s = unsafe { s.assume_init() };
    assert_eq!(s.jsj_type, HbkJsjType::M);
    assert_ne!(s.r_a.den, 0);
    assert_eq!(s.r_c, HbkRational::default());
    unsafe { hbk_knot_free(k) };
}

#[test]
fn canonicalize_and_display() {
    let k = parse("R:3,1,1,0");
    let mut c = ptr::null_mut();
    let mut text = ptr::null_mut();
    let mut params = [0i64; 4];
    let mut left = false;
    unsafe {
        assert_eq!(hbk_knot_canonicalize(k, &mut c), HbkStatus::Ok);
        assert_eq!(hbk_knot_params(c, params.as_mut_ptr(), &mut left), HbkStatus::Ok);
        assert_eq!(hbk_knot_to_string(c, &mut text), HbkStatus::Ok);
    }
    assert!(left);
    assert!(take_string(text).starts_with("L:"));
    let mut same = false;
    assert_eq!(unsafe { hbk_equivalent(k, c, &mut same) }, HbkStatus::Ok);
    assert!(same);
    unsafe {
        hbk_knot_free(c);
        hbk_knot_free(k);
    }
}

#[test]
fn equivalence_and_exteriors() {
    let a = parse("L:1,1,0");
    let b = parse("L:2,0,1");
    let c = parse("L:2,0,2");
    let d = parse("L:-1,0,2");
    let mut out = false;
    unsafe {
        assert_eq!(hbk_equivalent(a, b, &mut out), HbkStatus::Ok);
        assert!(out);
        assert_eq!(hbk_equivalent(c, d, &mut out), HbkStatus::Ok);
        assert!(!out);
        assert_eq!(hbk_exteriors_homeomorphic(c, d, &mut out), HbkStatus::Ok);
        assert!(out);
        for k in [a, b, c, d] {
            hbk_knot_free(k);
        }
    }
}

#[test]
fn mirror_is_mirror_equivalent() {
    let a = parse("R:5,3,2,0");
    let mut m = ptr::null_mut();
    let mut out = false;
    unsafe {
        assert_eq!(hbk_knot_mirror(a, &mut m), HbkStatus::Ok);
        assert_eq!(hbk_mirror_equivalent(a, m, &mut out), HbkStatus::Ok);
        assert!(out);
        hbk_knot_free(m);
        hbk_knot_free(a);
    }
}

#[test]
fn exteriors_reject_type_m() {
    let a = parse("R:5,3,2,0");
    let mut out = false;
    let st = unsafe { hbk_exteriors_homeomorphic(a, a, &mut out) };
    assert_eq!(st, HbkStatus::RequiresTypeK);
    assert!(!last_error().is_empty());
    unsafe { hbk_knot_free(a) };
}

#[test]
fn invalid_input_maps_to_status() {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { hbk_knot_new_right(1, 2, 0, 0, &mut k) }, HbkStatus::InvalidParams);
    assert!(k.is_null());
    assert!(!last_error().is_empty());

    let s = CString::new("Q:1").unwrap();
    assert_eq!(unsafe { hbk_knot_parse(s.as_ptr(), &mut k) }, HbkStatus::Parse);

    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { hbk_knot_parse(bad.as_ptr().cast(), &mut k) },
        HbkStatus::InvalidUtf8
    );
    assert_eq!(unsafe { hbk_knot_parse(ptr::null(), &mut k) }, HbkStatus::NullPointer);
    assert_eq!(unsafe { hbk_knot_parse(s.as_ptr(), ptr::null_mut()) }, HbkStatus::NullPointer);

    let mut out = false;
    assert_eq!(unsafe { hbk_equivalent(ptr::null(), ptr::null(), &mut out) }, HbkStatus::NullPointer);
    unsafe {
        hbk_knot_free(ptr::null_mut());
        hbk_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    let mut k = ptr::null_mut();
    unsafe { hbk_knot_new_right(1, 2, 0, 0, &mut k) };
    assert!(!hbk_last_error().is_null());
    let k = parse("L:1,1,0");
    assert!(hbk_last_error().is_null());
    unsafe { hbk_knot_free(k) };
}

#[test]
fn invariants_json_round_trips() {
    let k = parse("L:1,1,0");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hbk_knot_invariants_json(k, &mut p) }, HbkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(p)).unwrap();
    assert_eq!(v["jsj_type"], "K");
    assert_eq!(v["slopes"]["r_c"]["num"], 4);
    assert_eq!(v["slopes"]["r_c"]["den"], 3);
    unsafe { hbk_knot_free(k) };
}

#[test]
fn status_messages_are_distinct() {
    let all = [
        HbkStatus::Ok,
        HbkStatus::NullPointer,
        HbkStatus::InvalidUtf8,
        HbkStatus::Parse,
        HbkStatus::InvalidParams,
        HbkStatus::Overflow,
        HbkStatus::Precondition,
        HbkStatus::RequiresTypeK,
        HbkStatus::Internal,
    ];
    let msgs: std::collections::BTreeSet<_> = all
        .iter()
        .map(|&s| unsafe { CStr::from_ptr(hbk_status_message(s)) }.to_owned())
        .collect();
    assert_eq!(msgs.len(), all.len());
}

#[test]
fn verify_oracles_small_bound() {
    let mut r = HbkVerifyResult::default();
    assert_eq!(unsafe { hbk_verify(HbkSuite::Oracles, 4, &mut r) }, HbkStatus::Ok);
    assert!(r.passed);
    assert!(r.checks > 0);
    assert_eq!(r.violations, 0);
}

#[test]
fn header_is_valid_c_and_cpp() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hbknot.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "hbk_knot_parse",
        "hbk_knot_free",
        "hbk_knot_slopes",
        "hbk_equivalent",
        "hbk_exteriors_homeomorphic",
        "hbk_last_error",
        "typedef struct HbkKnot HbkKnot;",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(_) => eprintln!("{compiler} not found; skipping header compile"),
        }
    }
}
