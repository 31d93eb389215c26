//! C ABI over `cycres`. Objects cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`CycStatus`]; the message of the last failure on the calling
//! thread is available from [`cyc_last_error`].

use cycres::cli::{cmd_classify, Format, RunConfig};
use cycres::cyc::{build_complex, ComplexExport, CycComplex};
use cycres::graph::{parse_digraph, prepare, WeightedDigraph};
use cycres::verify::{full_verify, VerifyOptions};
use cycres::CycError;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Outcome of an FFI call. The values match the exit codes of the CLI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycStatus {
    Ok = 0,
    VerificationFailed = 1,
    Invalid = 2,
    NotIrreducible = 3,
    NullArgument = 4,
    Panic = 5,
}

/// A parsed weighted digraph.
pub struct CycDigraph {
    source: String,
    graph: WeightedDigraph,
}

/// A built complex.
pub struct CycComplexHandle {
    inner: CycComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &CycError) -> CycStatus {
    match e {
        CycError::NotIrreducible(_) | CycError::NotStronglyConnected(_) => CycStatus::NotIrreducible,
        _ => CycStatus::Invalid,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<CycStatus, (CycStatus, String)>) -> CycStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside cycres");
            CycStatus::Panic
        }
    }
}

fn lib_err(e: CycError) -> (CycStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (CycStatus, String) {
    (CycStatus::NullArgument, format!("{name} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (CycStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CycStatus::Invalid, format!("{name} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CycStatus, String)> {
    let c = CString::new(s).map_err(|_| (CycStatus::Invalid, "output contains a NUL byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn options(max_degree: i64, seed: u64) -> VerifyOptions {
    VerifyOptions { d_max: u128::try_from(max_degree).ok(), seed, ..VerifyOptions::default() }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cyc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a digraph from JSON (`{"n", "arcs"}` or `{"matrix"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_digraph_parse(json: *const c_char, out: *mut *mut CycDigraph) -> CycStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let graph = parse_digraph(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CycDigraph { source: text.to_string(), graph }));
        Ok(CycStatus::Ok)
    })
}

/// # Safety
/// `g` must come from [`cyc_digraph_parse`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cyc_digraph_free(g: *mut CycDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_digraph_vertex_count(g: *const CycDigraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// Classification as JSON: class, adjugate row, grading, depth, blocks and
/// relabeling. `omega` is 1-based, 0 selects the last vertex. Free the
/// result with [`cyc_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_classify_json(g: *const CycDigraph, omega: usize, out: *mut *mut c_char) -> CycStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = RunConfig { omega: (omega > 0).then_some(omega), format: Format::Json, ..RunConfig::default() };
        let r = cmd_classify(&g.source, &cfg).map_err(lib_err)?;
        write_string(out, r.stdout)?;
        Ok(CycStatus::Ok)
    })
}

/// Relabels by distance from `omega` (1-based, 0 for the last vertex) and
/// builds the complex.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_build(g: *const CycDigraph, omega: usize, out: *mut *mut CycComplexHandle) -> CycStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = g.graph.n();
        let omega = if omega == 0 { n } else { omega };
        if omega > n {
            return Err((CycStatus::Invalid, format!("omega {omega} is outside 1..{n}")));
        }
        let p = prepare(&g.graph, omega - 1).map_err(lib_err)?;
        let inner = build_complex(&p.matrix).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CycComplexHandle { inner }));
        Ok(CycStatus::Ok)
    })
}

/// Loads a complex from its JSON export.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_load(json: *const c_char, out: *mut *mut CycComplexHandle) -> CycStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let doc: ComplexExport = serde_json::from_str(read_str(json, "json")?).map_err(|e| (CycStatus::Invalid, e.to_string()))?;
        let inner = CycComplex::from_export(&doc).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CycComplexHandle { inner }));
        Ok(CycStatus::Ok)
    })
}

/// # Safety
/// `c` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_free(c: *mut CycComplexHandle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of free modules, which equals the vertex count; 0 for null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_length(c: *const CycComplexHandle) -> usize {
    c.as_ref().map_or(0, |c| c.inner.n)
}

/// Rank of the free module in homological degree `k`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_rank(c: *const CycComplexHandle, k: usize, out: *mut usize) -> CycStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("c"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ranks = c.inner.ranks();
        *out = *ranks.get(k).ok_or_else(|| (CycStatus::Invalid, format!("degree {k} is outside 0..{}", ranks.len())))?;
        Ok(CycStatus::Ok)
    })
}

/// 1 when every differential entry lies in the irrelevant ideal, 0 when not,
/// -1 for null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_is_minimal(c: *const CycComplexHandle) -> i32 {
    c.as_ref().map_or(-1, |c| c.inner.minimality_check().0 as i32)
}

/// The complex as JSON, loadable by [`cyc_complex_load`].
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_export_json(c: *const CycComplexHandle, out: *mut *mut c_char) -> CycStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("c"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serde_json::to_string_pretty(&c.inner.export()).map_err(|e| (CycStatus::Invalid, e.to_string()))?;
        write_string(out, text)?;
        Ok(CycStatus::Ok)
    })
}

/// Runs every check and writes the JSON report. A negative `max_degree`
/// selects the default bound. Returns `VerificationFailed` when a check fails;
/// the report is written either way.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cyc_complex_verify_json(c: *const CycComplexHandle, max_degree: i64, seed: u64, out: *mut *mut c_char) -> CycStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("c"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = full_verify(&c.inner, &format!("n={}", c.inner.n), &options(max_degree, seed));
        let text = serde_json::to_string_pretty(&report).map_err(|e| (CycStatus::Invalid, e.to_string()))?;
        write_string(out, text)?;
        if report.all_passed() {
            Ok(CycStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(CycStatus::VerificationFailed)
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cyc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
