//! C ABI over `satforge`.
//!
//! Graphs and families are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`SfStatus`]; on failure the
//! message is kept per thread and read with [`sf_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satforge::constructions::{self, ConstructionError};
use satforge::formulas::{self, FormulaError, OrderKind};
use satforge::io::{graph6_decode, graph6_encode};
use satforge::saturation::{check_saturated, FamilyError, ForbiddenFamily, SaturationVerdict};
use satforge::Graph;

/// Opaque graph handle.
pub struct SfGraph(Graph);

/// Opaque forbidden-family handle.
pub struct SfFamily(ForbiddenFamily);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    OutOfRange = 4,
    NotCertified = 5,
    Panic = 6,
}

/// Values match the CLI exit codes of `check`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfVerdict {
    Saturated = 0,
    ContainsMember = 3,
    MissingEdge = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfOrderKind {
    A = 0,
    A0 = 1,
    A1 = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Fail = (SfStatus, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SfStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    (SfStatus::NullPointer, format!("{what} is null"))
}

fn construction(e: ConstructionError) -> Fail {
    let status = match e {
        ConstructionError::NotCertified { .. } | ConstructionError::NoSaturatedTree { .. } => SfStatus::NotCertified,
        _ => SfStatus::OutOfRange,
    };
    (status, e.to_string())
}

fn formula(e: FormulaError) -> Fail {
    (SfStatus::OutOfRange, e.to_string())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (SfStatus::Parse, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut SfGraph, g: Graph) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(SfGraph(g))), "out")
}

unsafe fn graph_ref<'a>(g: *const SfGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next `sf_` call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static library version string.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_new(
    order: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut SfGraph,
) -> SfStatus {
    guard(|| {
        let flat = if edge_count == 0 {
            &[][..]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<_> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::new(order, &pairs).map_err(|e| (SfStatus::InvalidArgument, e.to_string()))?;
        put_graph(out, g)
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_from_graph6(text: *const c_char, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let g = graph6_decode(s.trim().as_bytes()).map_err(|e| (SfStatus::Parse, e.to_string()))?;
        put_graph(out, g)
    })
}

/// Writes a newly allocated graph6 string to `out`; release it with
/// [`sf_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_to_graph6(g: *const SfGraph, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let text = CString::new(graph6_encode(graph_ref(g)?)).expect("graph6 is printable ASCII");
        put(out, text.into_raw(), "out")
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_free(g: *mut SfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of `g`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_order(g: *const SfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Edge count of `g`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_graph_edge_count(g: *const SfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the family syntax, e.g. `"K3,P10"`, `"K3+P10"`, `"K1*[2,2]"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_family_parse(text: *const c_char, out: *mut *mut SfFamily) -> SfStatus {
    guard(|| {
        let fam: ForbiddenFamily =
            read_str(text, "text")?.parse().map_err(|e: FamilyError| (SfStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(SfFamily(fam))), "out")
    })
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_family_free(f: *mut SfFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Decides saturation. For [`SfVerdict::MissingEdge`] the non-edge is
/// written to `u`/`v` when they are non-null.
///
/// # Safety
/// `g` and `fam` must be live handles; `verdict` must be writable; `u` and
/// `v` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sf_check_saturated(
    g: *const SfGraph,
    fam: *const SfFamily,
    verdict: *mut SfVerdict,
    u: *mut usize,
    v: *mut usize,
) -> SfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let fam = &fam.as_ref().ok_or_else(|| null("family"))?.0;
        let result = match check_saturated(g, fam) {
            SaturationVerdict::Saturated => SfVerdict::Saturated,
            SaturationVerdict::ContainsMember { .. } => SfVerdict::ContainsMember,
            SaturationVerdict::MissingEdge { u: a, v: b } => {
                if !u.is_null() {
                    u.write(a);
                }
                if !v.is_null() {
                    v.write(b);
                }
                SfVerdict::MissingEdge
            }
        };
        put(verdict, result, "verdict")
    })
}

/// The verdict as JSON, witness included. Free with [`sf_string_free`].
///
/// # Safety
/// `g` and `fam` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_check_saturated_json(
    g: *const SfGraph,
    fam: *const SfFamily,
    out: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let fam = &fam.as_ref().ok_or_else(|| null("family"))?.0;
        let json = serde_json::to_string(&check_saturated(g, fam)).expect("verdicts serialize");
        put(out, CString::new(json).expect("JSON has no NUL").into_raw(), "out")
    })
}

macro_rules! tree_builder {
    ($(#[$doc:meta])* $name:ident => $f:path) => {
        $(#[$doc])*
        /// # Safety
        /// `out` must be writable.
        #[no_mangle]
        pub unsafe extern "C" fn $name(k: usize, out: *mut *mut SfGraph) -> SfStatus {
            guard(|| put_graph(out, $f(k).map_err(construction)?))
        }
    };
}

tree_builder!(
    /// The layered tree `T_k` (k >= 6).
    sf_make_tk => constructions::make_tk
);
tree_builder!(
    /// `T⁰_k` (k >= 6).
    sf_make_t0k => constructions::make_t0k
);
tree_builder!(
    /// `T¹_k` (even k >= 8, odd k >= 9).
    sf_make_t1k => constructions::make_t1k
);

/// The extremal `{K3, P_k}`-saturated forest on `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_make_g0(n: usize, k: usize, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| put_graph(out, constructions::make_g0(n, k).map_err(construction)?))
}

/// The checker-certified `K3 + P_k`-saturated graph on `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_make_h0(n: usize, k: usize, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| put_graph(out, constructions::make_h0(n, k).map_err(construction)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_make_star(n: usize, out: *mut *mut SfGraph) -> SfStatus {
    guard(|| put_graph(out, constructions::make_star(n).map_err(construction)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_order_constant(kind: SfOrderKind, k: usize, out: *mut usize) -> SfStatus {
    let kind = match kind {
        SfOrderKind::A => OrderKind::A,
        SfOrderKind::A0 => OrderKind::A0,
        SfOrderKind::A1 => OrderKind::A1,
    };
    guard(|| put(out, formulas::order_constant(kind, k).map_err(formula)?, "out"))
}

/// `sat(n, P_k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_sat_pk(n: usize, k: usize, out: *mut usize) -> SfStatus {
    guard(|| put(out, formulas::sat_pk(n, k).map_err(formula)?, "out"))
}

/// `sat(n, {K3, P_k})`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_sat_k3_pk(n: usize, k: usize, out: *mut usize) -> SfStatus {
    guard(|| put(out, formulas::sat_k3_pk(n, k).map_err(formula)?, "out"))
}

/// `sat(n, K_p)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_sat_kp(n: usize, p: usize, out: *mut usize) -> SfStatus {
    guard(|| put(out, formulas::sat_kp(n, p).map_err(formula)?, "out"))
}

/// Bounds on `sat(n, K3 + P_k)`.
///
/// # Safety
/// `lower` and `upper` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_sat_k3_cup_pk_bounds(n: usize, k: usize, lower: *mut usize, upper: *mut usize) -> SfStatus {
    guard(|| {
        let b = formulas::sat_k3_cup_pk_bounds(n, k).map_err(formula)?;
        if lower.is_null() || upper.is_null() {
            return Err(null("bound output"));
        }
        put(lower, b.lower, "lower")?;
        put(upper, b.upper, "upper")
    })
}
