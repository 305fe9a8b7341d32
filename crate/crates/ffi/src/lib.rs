//! C ABI over `complex_schemes`.
//!
//! Schemes cross the boundary as opaque `CsScheme` handles. Every fallible
//! call returns a `CsStatus`; on failure `cs_last_error_message` describes the
//! error. Strings returned through out-parameters are owned by the caller and
//! released with `cs_string_free`; handles with `cs_scheme_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use complex_schemes::constructions::{hilbert_family, hilbert_intermediate, triple, unrealizable_example, TripleRule};
use complex_schemes::moves::{swap, swap_search, SearchStatus, SwapMove};
use complex_schemes::{
    check_theorem_1_1, decode_json, encode_json, parse_viro, print_viro, stats, ComplexScheme, Error, LambdaCounts,
    OvalPath, Theorem11Report,
};

/// Opaque scheme handle.
pub struct CsScheme(ComplexScheme);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Json = 4,
    InvalidScheme = 5,
    Precondition = 6,
    InvalidPath = 7,
    NotSwappable = 8,
    LimitExceeded = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CsLambdaCounts {
    pub lp_plus: u64,
    pub lp_minus: u64,
    pub ln_plus: u64,
    pub ln_minus: u64,
}

impl From<LambdaCounts> for CsLambdaCounts {
    fn from(l: LambdaCounts) -> Self {
        CsLambdaCounts { lp_plus: l.lp_plus, lp_minus: l.lp_minus, ln_plus: l.ln_plus, ln_minus: l.ln_minus }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CsStats {
    pub degree: u32,
    pub pseudoline: bool,
    pub l: u64,
    pub r: u64,
    pub g: u64,
    /// False for even degree, where `k` is meaningless and set to 0.
    pub has_k: bool,
    pub k: u64,
    pub s: u64,
    pub lambdas: CsLambdaCounts,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CsCheckReport {
    pub degree: u32,
    pub k: i64,
    pub l: i64,
    pub s: i64,
    pub lambdas: CsLambdaCounts,
    pub left_lhs: i64,
    pub left_rhs: i64,
    pub left_margin: i64,
    pub right_lhs: i64,
    pub right_rhs: i64,
    pub right_margin: i64,
    pub left_holds: bool,
    pub right_holds: bool,
    pub both_hold: bool,
}

impl From<&Theorem11Report> for CsCheckReport {
    fn from(r: &Theorem11Report) -> Self {
        CsCheckReport {
            degree: r.degree,
            k: r.k,
            l: r.l,
            s: r.s,
            lambdas: r.lambdas.into(),
            left_lhs: r.left_lhs,
            left_rhs: r.left_rhs,
            left_margin: r.left_margin,
            right_lhs: r.right_lhs,
            right_rhs: r.right_rhs,
            right_margin: r.right_margin,
            left_holds: r.left_holds,
            right_holds: r.right_holds,
            both_hold: r.both_hold,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsSearchStatus {
    AlreadySatisfies = 0,
    Reached = 1,
    Unreachable = 2,
}

/// Filled by `cs_swap_search`; release the owned members with
/// `cs_search_result_clear`.
#[repr(C)]
#[derive(Debug)]
pub struct CsSearchResult {
    pub status: CsSearchStatus,
    /// Number of moves in the witness; 0 when unreachable.
    pub distance: usize,
    pub explored: usize,
    /// JSON array of paths, one per move, or null when unreachable.
    pub moves_json: *mut c_char,
    /// The scheme reached, or null when unreachable.
    pub result: *mut CsScheme,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure {
    status: CsStatus,
    message: String,
}

impl Failure {
    fn new(status: CsStatus, message: impl Into<String>) -> Failure {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } => CsStatus::Parse,
            Error::Json(_) => CsStatus::Json,
            Error::InvalidScheme(_) => CsStatus::InvalidScheme,
            Error::InvalidPath(_) => CsStatus::InvalidPath,
            Error::NotSwappable(_) => CsStatus::NotSwappable,
            Error::LimitExceeded(_) => CsStatus::LimitExceeded,
            _ => CsStatus::Precondition,
        };
        Failure::new(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(fail.message);
            fail.status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal error: {what}"));
            CsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(CsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::new(CsStatus::InvalidUtf8, e.to_string()))
}

unsafe fn scheme<'a>(p: *const CsScheme) -> Result<&'a ComplexScheme, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| Failure::new(CsStatus::NullPointer, "null scheme handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(CsStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn checked_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(CsStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn handle(s: ComplexScheme) -> *mut CsScheme {
    Box::into_raw(Box::new(CsScheme(s)))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_parse(text: *const c_char, degree: u32, out: *mut *mut CsScheme) -> CsStatus {
    guard(|| {
        let t = self::text(text)?;
        checked_out(out)?;
        put(out, handle(parse_viro(t, degree)?))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_from_json(json: *const c_char, out: *mut *mut CsScheme) -> CsStatus {
    guard(|| {
        let t = text(json)?;
        checked_out(out)?;
        put(out, handle(decode_json(t)?))
    })
}

/// Canonical Viro notation.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_to_viro(s: *const CsScheme, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let s = scheme(s)?;
        put(out, owned_string(print_viro(s)))
    })
}

/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_to_json(s: *const CsScheme, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let s = scheme(s)?;
        put(out, owned_string(encode_json(s)))
    })
}

/// Degree of the scheme, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_degree(s: *const CsScheme) -> u32 {
    s.as_ref().map_or(0, |h| h.0.degree)
}

/// Number of ovals, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_oval_count(s: *const CsScheme) -> usize {
    s.as_ref().map_or(0, |h| h.0.oval_count())
}

/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_stats(s: *const CsScheme, out: *mut CsStats) -> CsStatus {
    guard(|| {
        let st = stats(scheme(s)?)?;
        put(
            out,
            CsStats {
                degree: st.degree,
                pseudoline: st.pseudoline,
                l: st.l,
                r: st.r,
                g: st.g,
                has_k: st.k.is_some(),
                k: st.k.unwrap_or(0),
                s: st.s,
                lambdas: st.lambdas.into(),
            },
        )
    })
}

/// Evaluates both orientation inequalities.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_check(s: *const CsScheme, out: *mut CsCheckReport) -> CsStatus {
    guard(|| {
        let report = check_theorem_1_1(scheme(s)?)?;
        put(out, CsCheckReport::from(&report))
    })
}

/// Triples every oval with the default sign rule.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_triple(s: *const CsScheme, out: *mut *mut CsScheme) -> CsStatus {
    guard(|| {
        let t = triple(scheme(s)?, &TripleRule::default())?;
        checked_out(out)?;
        put(out, handle(t))
    })
}

/// Swaps the pair whose outer oval is at `path[0..path_len]`.
///
/// # Safety
/// `s` must be a live handle, `path` must point to `path_len` readable
/// values (or be null when `path_len` is 0), and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_swap(
    s: *const CsScheme,
    path: *const usize,
    path_len: usize,
    out: *mut *mut CsScheme,
) -> CsStatus {
    guard(|| {
        let s = scheme(s)?;
        let indices = match (path.is_null(), path_len) {
            (_, 0) => Vec::new(),
            (true, _) => return Err(Failure::new(CsStatus::NullPointer, "null path")),
            (false, n) => std::slice::from_raw_parts(path, n).to_vec(),
        };
        let t = swap(s, &SwapMove::new(OvalPath::new(indices)))?;
        checked_out(out)?;
        put(out, handle(t))
    })
}

/// Breadth-first search for the fewest swaps reaching a scheme that
/// satisfies both inequalities. Returns `LimitExceeded` past `max_states`.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_swap_search(s: *const CsScheme, max_states: usize, out: *mut CsSearchResult) -> CsStatus {
    guard(|| {
        let s = scheme(s)?;
        checked_out(out)?;
        let outcome = swap_search(s, max_states)?;
        let status = match outcome.status {
            SearchStatus::AlreadySatisfies => CsSearchStatus::AlreadySatisfies,
            SearchStatus::Reached => CsSearchStatus::Reached,
            SearchStatus::Unreachable => CsSearchStatus::Unreachable,
        };
        let (distance, moves_json, result) = match outcome.witness {
            Some(w) => {
                let paths: Vec<&OvalPath> = w.moves.iter().map(|m| &m.parent_path).collect();
                let json = serde_json::to_string(&paths).expect("paths serialize");
                (w.moves.len(), owned_string(json), handle(w.scheme))
            }
            None => (0, ptr::null_mut(), ptr::null_mut()),
        };
        put(out, CsSearchResult { status, distance, explored: outcome.explored, moves_json, result })
    })
}

/// Frees the owned members of a search result and nulls them.
///
/// # Safety
/// `r` must be null or point to a result filled by `cs_swap_search`.
#[no_mangle]
pub unsafe extern "C" fn cs_search_result_clear(r: *mut CsSearchResult) {
    if let Some(r) = r.as_mut() {
        cs_string_free(r.moves_json);
        cs_scheme_free(r.result);
        r.moves_json = ptr::null_mut();
        r.result = ptr::null_mut();
    }
}

/// The Hilbert-type M-curve of degree `4p - 1` (`p >= 2`), or the
/// intermediate curve of degree `4p + 1`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_hilbert(p: u32, intermediate: bool, out: *mut *mut CsScheme) -> CsStatus {
    guard(|| {
        checked_out(out)?;
        let state = if intermediate { hilbert_intermediate(p)? } else { hilbert_family(p)? };
        put(out, handle(state.scheme()))
    })
}

/// The tripled degree `12p - 3` scheme and its check report. `report` may
/// be null.
///
/// # Safety
/// `out` must be a writable pointer; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn cs_unrealizable_example(p: u32, out: *mut *mut CsScheme, report: *mut CsCheckReport) -> CsStatus {
    guard(|| {
        checked_out(out)?;
        let ex = unrealizable_example(p)?;
        if !report.is_null() {
            report.write(CsCheckReport::from(&ex.report));
        }
        put(out, handle(ex.scheme))
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_scheme_free(s: *mut CsScheme) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
