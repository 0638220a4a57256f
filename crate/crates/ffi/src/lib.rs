//! C interface to `knotpoly`.
//!
//! Graphs and polynomials are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`KpStatus`]; on failure
//! `kp_last_error_message` describes the problem until the next call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knotpoly::io::parse_graph;
use knotpoly::rational_links::{bracket_rational, bracket_theta, RationalWord};
use knotpoly::signed_tutte::{jones, kauffman_bracket, q_poly};
use knotpoly::{Error, MultiPoly, SignedGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KpStatus {
    Ok = 0,
    InvalidInput = 1,
    Internal = 2,
    NullPointer = 3,
    Panic = 4,
}

/// A signed multigraph.
pub struct KpGraph(SignedGraph);

/// A Laurent polynomial with integer coefficients.
pub struct KpPoly(MultiPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> KpStatus {
    set_error(err.to_string());
    if err.is_internal() {
        KpStatus::Internal
    } else {
        KpStatus::InvalidInput
    }
}

/// Runs `f`, storing its result in `*out`; panics and errors become status codes.
fn guarded<T>(out: *mut *mut T, f: impl FnOnce() -> Result<T, Error>) -> KpStatus {
    clear_error();
    if out.is_null() {
        set_error("output pointer is null");
        return KpStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(value)) => {
            unsafe { *out = Box::into_raw(Box::new(value)) };
            KpStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => {
            set_error("panic inside knotpoly");
            KpStatus::Panic
        }
    }
}

/// Message for the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next `kp_*` call on this thread.
#[no_mangle]
pub extern "C" fn kp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a signed graph from its JSON description.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_graph_from_json(json: *const c_char, out: *mut *mut KpGraph) -> KpStatus {
    if json.is_null() {
        set_error("json is null");
        return KpStatus::NullPointer;
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(t) => t.to_owned(),
        Err(e) => {
            set_error(format!("json is not UTF-8: {e}"));
            return KpStatus::InvalidInput;
        }
    };
    guarded(out, || Ok(KpGraph(parse_graph(&text)?.into_signed()?)))
}

/// # Safety
/// `graph` must come from `kp_graph_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kp_graph_free(graph: *mut KpGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

fn graph_ref<'a>(graph: *const KpGraph) -> Result<&'a SignedGraph, KpStatus> {
    if graph.is_null() {
        set_error("graph is null");
        return Err(KpStatus::NullPointer);
    }
    Ok(unsafe { &(*graph).0 })
}

/// `Q[G]` in `A`, `B`, `d`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_q_poly(graph: *const KpGraph, out: *mut *mut KpPoly) -> KpStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(s) => return s,
    };
    guarded(out, || Ok(KpPoly(q_poly(g))))
}

/// The Kauffman bracket, a Laurent polynomial in `A`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_kauffman_bracket(graph: *const KpGraph, out: *mut *mut KpPoly) -> KpStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(s) => return s,
    };
    guarded(out, || Ok(KpPoly(kauffman_bracket(g)?.into_poly())))
}

/// Jones polynomial of the graph's link for the given writhe, as a string
/// in `t` with quarter-integer exponents. Free with `kp_string_free`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_jones_string(graph: *const KpGraph, writhe: i64, out: *mut *mut c_char) -> KpStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(s) => return s,
    };
    clear_error();
    if out.is_null() {
        set_error("output pointer is null");
        return KpStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(|| jones(&kauffman_bracket(g)?, writhe))) {
        Ok(Ok(v)) => {
            unsafe { *out = CString::new(v.to_string()).expect("no nul").into_raw() };
            KpStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => {
            set_error("panic inside knotpoly");
            KpStatus::Panic
        }
    }
}

/// Bracket of the rational link with word `terms[0..len]`.
///
/// # Safety
/// `terms` must point to `len` readable integers and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_bracket_rational(terms: *const i32, len: usize, out: *mut *mut KpPoly) -> KpStatus {
    if terms.is_null() && len > 0 {
        set_error("terms is null");
        return KpStatus::NullPointer;
    }
    let word: Vec<i32> = if len == 0 {
        Vec::new()
    } else {
        unsafe { std::slice::from_raw_parts(terms, len) }.to_vec()
    };
    guarded(out, || Ok(KpPoly(bracket_rational(&RationalWord::new(word)?)?.into_poly())))
}

/// Bracket of the theta link `L(m1, m2, m3)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kp_bracket_theta(m1: i32, m2: i32, m3: i32, out: *mut *mut KpPoly) -> KpStatus {
    guarded(out, || Ok(KpPoly(bracket_theta(m1, m2, m3)?.into_poly())))
}

/// Canonical string of a polynomial, e.g. `-A^4 - A^-4`. Free with
/// `kp_string_free`. Returns NULL for a NULL handle.
///
/// # Safety
/// `poly` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kp_poly_to_string(poly: *const KpPoly) -> *mut c_char {
    if poly.is_null() {
        set_error("poly is null");
        return ptr::null_mut();
    }
    let s = unsafe { &(*poly).0 }.canonical_string();
    CString::new(s).expect("no nul").into_raw()
}

/// # Safety
/// `poly` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kp_poly_free(poly: *mut KpPoly) {
    if !poly.is_null() {
        drop(unsafe { Box::from_raw(poly) });
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
