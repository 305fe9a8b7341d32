use std::ffi::{CStr, CString};
use std::ptr;

use complex_schemes_ffi::*;

fn owned(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { cs_string_free(p) };
    s
}

fn last_error() -> String {
    let p = cs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn parse(text: &str, degree: u32) -> *mut CsScheme {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_parse(c.as_ptr(), degree, &mut out) }, CsStatus::Ok);
    out
}

fn viro(s: *const CsScheme) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_to_viro(s, &mut out) }, CsStatus::Ok);
    owned(out)
}

#[test]
fn parse_print_and_check() {
    let s = parse("J u 1-<1+<1->> u 9-", 9);
    assert_eq!(viro(s), "J u 9- u 1-<1+<1->>");
    assert_eq!(unsafe { cs_scheme_degree(s) }, 9);
    assert_eq!(unsafe { cs_scheme_oval_count(s) }, 12);

    let mut st = CsStats::default();
    assert_eq!(unsafe { cs_scheme_stats(s, &mut st) }, CsStatus::Ok);
    assert_eq!((st.l, st.r, st.g, st.k, st.s), (12, 13, 28, 4, 8));
    assert!(st.has_k && st.pseudoline);

    let mut rep = CsCheckReport::default();
    assert_eq!(unsafe { cs_scheme_check(s, &mut rep) }, CsStatus::Ok);
    assert_eq!((rep.left_lhs, rep.left_rhs, rep.left_margin), (1, 2, -1));
    assert_eq!((rep.right_lhs, rep.right_rhs), (12, 2));
    assert!(!rep.left_holds && rep.right_holds && !rep.both_hold);
    unsafe { cs_scheme_free(s) };
}

#[test]
fn json_round_trip() {
    let s = parse("J u 9- u 1-<1+<1->>", 9);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_to_json(s, &mut json) }, CsStatus::Ok);
    let json = CString::new(owned(json)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_from_json(json.as_ptr(), &mut back) }, CsStatus::Ok);
    assert_eq!(viro(back), viro(s));
    let bad = CString::new(r#"{"degree":9,"pseudoline":true,"ovals":[],"extra":1}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_from_json(bad.as_ptr(), &mut out) }, CsStatus::Json);
    assert!(out.is_null());
    unsafe {
        cs_scheme_free(s);
        cs_scheme_free(back);
    }
}

#[test]
fn errors_set_status_and_message() {
    let c = CString::new("J u 1-<2+").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_parse(c.as_ptr(), 9, &mut out) }, CsStatus::Parse);
    assert!(last_error().contains("byte 9"));
    assert!(out.is_null());

    assert_eq!(unsafe { cs_scheme_parse(ptr::null(), 9, &mut out) }, CsStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { cs_scheme_parse(invalid.as_ptr().cast(), 9, &mut out) }, CsStatus::InvalidUtf8);

    let even = parse("1-", 4);
    let mut rep = CsCheckReport::default();
    assert_eq!(unsafe { cs_scheme_check(even, &mut rep) }, CsStatus::Precondition);
    assert_eq!(unsafe { cs_scheme_check(ptr::null(), &mut rep) }, CsStatus::NullPointer);

    let harnack = parse("J u 20-", 5);
    let mut st = CsStats::default();
    assert_eq!(unsafe { cs_scheme_stats(harnack, &mut st) }, CsStatus::InvalidScheme);

    // success clears the previous message
    let ok = parse("J", 3);
    assert!(cs_last_error_message().is_null());
    unsafe {
        cs_scheme_free(even);
        cs_scheme_free(harnack);
        cs_scheme_free(ok);
        cs_scheme_free(ptr::null_mut());
        cs_string_free(ptr::null_mut());
    }
}

#[test]
fn swap_and_triple() {
    let cubic = parse("J u 1-", 3);
    let mut tripled = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_triple(cubic, &mut tripled) }, CsStatus::Ok);
    assert_eq!(viro(tripled), "J u 9- u 1-<1+<1->>");

    let path = [1usize];
    let mut swapped = ptr::null_mut();
    assert_eq!(unsafe { cs_scheme_swap(tripled, path.as_ptr(), 1, &mut swapped) }, CsStatus::Ok);
    assert_eq!(viro(swapped), "J u 9- u 1+<1-<1->>");

    let mut none = ptr::null_mut();
    let leaf = [0usize];
    assert_eq!(unsafe { cs_scheme_swap(tripled, leaf.as_ptr(), 1, &mut none) }, CsStatus::NotSwappable);
    let far = [7usize, 3];
    assert_eq!(unsafe { cs_scheme_swap(tripled, far.as_ptr(), 2, &mut none) }, CsStatus::InvalidPath);
    assert_eq!(unsafe { cs_scheme_swap(tripled, ptr::null(), 1, &mut none) }, CsStatus::NullPointer);
    assert!(none.is_null());
    unsafe {
        cs_scheme_free(cubic);
        cs_scheme_free(tripled);
        cs_scheme_free(swapped);
    }
}

#[test]
fn search() {
    let s = parse("J u 9- u 1-<1+<1->>", 9);
    let mut r = CsSearchResult {
        status: CsSearchStatus::Unreachable,
        distance: 0,
        explored: 0,
        moves_json: ptr::null_mut(),
        result: ptr::null_mut(),
    };
    assert_eq!(unsafe { cs_swap_search(s, 1000, &mut r) }, CsStatus::Ok);
    assert_eq!(r.status, CsSearchStatus::Reached);
    assert_eq!(r.distance, 1);
    assert_eq!(unsafe { CStr::from_ptr(r.moves_json) }.to_str().unwrap(), "[[1]]");
    assert_eq!(viro(r.result), "J u 9- u 1+<1-<1->>");
    unsafe { cs_search_result_clear(&mut r) };
    assert!(r.result.is_null() && r.moves_json.is_null());

    assert_eq!(unsafe { cs_swap_search(s, 1, &mut r) }, CsStatus::LimitExceeded);

    let flat = parse("J u 12-", 9);
    assert_eq!(unsafe { cs_swap_search(flat, 1000, &mut r) }, CsStatus::Ok);
    assert_eq!(r.status, CsSearchStatus::Unreachable);
    assert!(r.result.is_null() && r.moves_json.is_null());
    unsafe {
        cs_scheme_free(s);
        cs_scheme_free(flat);
    }
}

#[test]
fn constructions() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cs_hilbert(2, false, &mut h) }, CsStatus::Ok);
    assert_eq!(viro(h), "J u 1-<5- u 9+>");
    unsafe { cs_scheme_free(h) };
    assert_eq!(unsafe { cs_hilbert(1, false, &mut h) }, CsStatus::Precondition);

    for p in 1..=5 {
        let mut ex = ptr::null_mut();
        let mut rep = CsCheckReport::default();
        assert_eq!(unsafe { cs_unrealizable_example(p, &mut ex, &mut rep) }, CsStatus::Ok);
        assert_eq!(rep.degree, 12 * p - 3);
        assert_eq!(rep.left_margin, -1);
        assert!(rep.right_holds);
        unsafe { cs_scheme_free(ex) };
    }
    let mut ex = ptr::null_mut();
    assert_eq!(unsafe { cs_unrealizable_example(1, &mut ex, ptr::null_mut()) }, CsStatus::Ok);
    unsafe { cs_scheme_free(ex) };
    assert_eq!(unsafe { cs_unrealizable_example(0, &mut ex, ptr::null_mut()) }, CsStatus::Precondition);
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(cs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
