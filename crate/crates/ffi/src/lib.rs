//! C ABI over `pcml-core`.
//!
//! Objects are opaque handles created by `*_new`/`*_parse` style functions
//! and released with the matching `*_free`. Every fallible call returns a
//! [`PcmlStatus`]; on failure `pcml_last_error` describes the cause.
//! Strings returned to the caller are released with `pcml_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use pcml_core::equivalence::{distinguish_cycles, lambda_zero, PhiHom};
use pcml_core::{Algebra, Graph, LieElement};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcmlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    AlgebraMismatch = 5,
    Overflow = 6,
    Panic = 7,
}

pub struct PcmlGraph {
    inner: Graph,
}

pub struct PcmlAlgebra {
    inner: Arc<Algebra>,
}

pub struct PcmlElement {
    inner: LieElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(PcmlStatus, String);

impl Failure {
    fn new(status: PcmlStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

/// Runs `f`, recording its error or panic.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PcmlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PcmlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcmlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(PcmlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(PcmlStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(PcmlStatus::NullPointer, "null handle"))
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PcmlStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pcml_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pcml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph description: `cycle:<n>`, `complete:<n>`, `path:<n>`,
/// `empty:<n>` or JSON `{"n":..,"edges":[[i,j],..]}`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_graph_parse(spec: *const c_char, out: *mut *mut PcmlGraph) -> PcmlStatus {
    guard(|| {
        let g = Graph::from_spec(text(spec)?).map_err(|e| Failure::new(PcmlStatus::ParseError, e))?;
        store(out, boxed(PcmlGraph { inner: g }))
    })
}

/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pcml_graph_free(g: *mut PcmlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_graph_vertex_count(g: *const PcmlGraph, out: *mut usize) -> PcmlStatus {
    guard(|| store(out, handle(g)?.inner.vertex_count()))
}

/// Number of vertices left after collapsing equal closed neighbourhoods.
///
/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_graph_compaction_size(g: *const PcmlGraph, out: *mut usize) -> PcmlStatus {
    guard(|| store(out, handle(g)?.inner.compaction().graph.vertex_count()))
}

/// The algebra of a graph, generators ordered by index.
///
/// # Safety
/// `g` must be a live graph handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_algebra_new(g: *const PcmlGraph, out: *mut *mut PcmlAlgebra) -> PcmlStatus {
    guard(|| {
        let alg = Algebra::new(handle(g)?.inner.clone());
        store(out, boxed(PcmlAlgebra { inner: alg }))
    })
}

/// # Safety
/// `a` must be a live algebra handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pcml_algebra_free(a: *mut PcmlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses an element and brings it to normal form.
///
/// # Safety
/// `alg` must be a live algebra handle, `src` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_parse(
    alg: *const PcmlAlgebra,
    src: *const c_char,
    out: *mut *mut PcmlElement,
) -> PcmlStatus {
    guard(|| {
        let e = handle(alg)?
            .inner
            .parse_element(text(src)?)
            .map_err(|e| Failure::new(PcmlStatus::ParseError, e))?;
        store(out, boxed(PcmlElement { inner: e }))
    })
}

/// # Safety
/// `e` must be a live element handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_free(e: *mut PcmlElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `a` and `b` must be live element handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_add(
    a: *const PcmlElement,
    b: *const PcmlElement,
    out: *mut *mut PcmlElement,
) -> PcmlStatus {
    guard(|| {
        let s = handle(a)?
            .inner
            .checked_add(&handle(b)?.inner)
            .map_err(|e| Failure::new(PcmlStatus::AlgebraMismatch, e))?;
        store(out, boxed(PcmlElement { inner: s }))
    })
}

/// # Safety
/// `a` and `b` must be live element handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_bracket(
    a: *const PcmlElement,
    b: *const PcmlElement,
    out: *mut *mut PcmlElement,
) -> PcmlStatus {
    guard(|| {
        let p = handle(a)?
            .inner
            .bracket(&handle(b)?.inner)
            .map_err(|e| Failure::new(PcmlStatus::AlgebraMismatch, e))?;
        store(out, boxed(PcmlElement { inner: p }))
    })
}

/// # Safety
/// `e` must be a live element handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_is_zero(e: *const PcmlElement, out: *mut bool) -> PcmlStatus {
    guard(|| store(out, handle(e)?.inner.is_zero()))
}

/// Normal form as text; free the result with `pcml_string_free`.
///
/// # Safety
/// `e` must be a live element handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_element_to_string(e: *const PcmlElement, out: *mut *mut c_char) -> PcmlStatus {
    guard(|| {
        let s = CString::new(handle(e)?.inner.to_string()).expect("element text has no NUL");
        store(out, s.into_raw())
    })
}

/// Least `λ` with `φ_λ(e) ≠ 0` from then on, for the map sending
/// generator `removed` to `λ` times generator `kept`.
///
/// # Safety
/// `e` must be a live element handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_lambda_zero(
    e: *const PcmlElement,
    removed: usize,
    kept: usize,
    out: *mut u64,
) -> PcmlStatus {
    guard(|| {
        let e = &handle(e)?.inner;
        let h = PhiHom::new(e.algebra().graph(), removed, kept, 1.into())
            .map_err(|err| Failure::new(PcmlStatus::InvalidArgument, err))?;
        let l0 = lambda_zero(e, &h).map_err(|err| Failure::new(PcmlStatus::InvalidArgument, err))?;
        let l0 = l0
            .to_u64()
            .ok_or_else(|| Failure::new(PcmlStatus::Overflow, "lambda does not fit in 64 bits"))?;
        store(out, l0)
    })
}

/// Whether `M(C_n)` and `M(C_m)` are separated by an explicit sentence.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcml_distinguish_cycles(n: usize, m: usize, out: *mut bool) -> PcmlStatus {
    guard(|| {
        let r = distinguish_cycles(n, m).map_err(|e| Failure::new(PcmlStatus::InvalidArgument, e))?;
        store(out, r.separated())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn round_trip_through_handles() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(pcml_graph_parse(c("cycle:4").as_ptr(), &mut g), PcmlStatus::Ok);
            let mut n = 0;
            assert_eq!(pcml_graph_vertex_count(g, &mut n), PcmlStatus::Ok);
            assert_eq!(n, 4);
            let mut alg = ptr::null_mut();
            assert_eq!(pcml_algebra_new(g, &mut alg), PcmlStatus::Ok);
            let (mut a, mut b, mut p) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
            assert_eq!(pcml_element_parse(alg, c("x0").as_ptr(), &mut a), PcmlStatus::Ok);
            assert_eq!(pcml_element_parse(alg, c("x1").as_ptr(), &mut b), PcmlStatus::Ok);
            assert_eq!(pcml_element_bracket(a, b, &mut p), PcmlStatus::Ok);
            let mut zero = false;
            assert_eq!(pcml_element_is_zero(p, &mut zero), PcmlStatus::Ok);
            assert!(zero);
            let mut s = ptr::null_mut();
            assert_eq!(pcml_element_to_string(a, &mut s), PcmlStatus::Ok);
            assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "x0");
            pcml_string_free(s);
            for e in [a, b, p] {
                pcml_element_free(e);
            }
            pcml_algebra_free(alg);
            pcml_graph_free(g);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(pcml_graph_parse(c("cycle:x").as_ptr(), &mut g), PcmlStatus::ParseError);
            assert!(!pcml_last_error().is_null());
            assert_eq!(pcml_graph_parse(ptr::null(), &mut g), PcmlStatus::NullPointer);
            let mut sep = false;
            assert_eq!(pcml_distinguish_cycles(3, 4, &mut sep), PcmlStatus::Ok);
            assert!(sep);
            assert_eq!(pcml_distinguish_cycles(2, 4, &mut sep), PcmlStatus::InvalidArgument);
        }
    }
}
