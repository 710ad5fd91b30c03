//! C ABI for the distk library.
//!
//! Conventions:
//! - Graphs are opaque handles (`DkGraph`), created by the constructors
//!   here and released with [`dk_graph_free`].
//! - Every fallible call returns a [`DkStatus`]; on failure a thread-local
//!   message is set, readable via [`dk_last_error_message`] until the next
//!   failing call on the same thread.
//! - Strings returned through out-parameters are heap-allocated C strings
//!   owned by the caller, released with [`dk_string_free`].
//! - No call ever unwinds across the boundary.

use distk::graph::Graph;
use distk::scaled::rational_to_f64;
use distk::{brute, hermite, moments};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status code of every fallible FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkStatus {
    /// Success.
    DkOk = 0,
    /// A required pointer argument was null.
    DkErrNull = 1,
    /// A string argument was not valid UTF-8.
    DkErrUtf8 = 2,
    /// Graph construction or parsing failed.
    DkErrGraph = 3,
    /// An argument was out of range for the operation.
    DkErrArgument = 4,
    /// The engine failed (size ceiling, overflow, non-convergence).
    DkErrEngine = 5,
    /// A provided buffer was too small; retry with the reported length.
    DkErrBuffer = 6,
    /// An internal panic was caught at the boundary.
    DkErrInternal = 7,
}

/// Opaque connected-graph handle.
pub struct DkGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&ch| ch != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn fail(status: DkStatus, msg: &str) -> DkStatus {
    set_error(msg);
    status
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn dk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Version of the underlying library as a static C string.
#[no_mangle]
pub extern "C" fn dk_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

fn guard<F: FnOnce() -> DkStatus>(body: F) -> DkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(
            DkStatus::DkErrInternal,
            "internal panic caught at the C boundary",
        ),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DkStatus> {
    if ptr.is_null() {
        return Err(DkStatus::DkErrNull);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| DkStatus::DkErrUtf8)
}

unsafe fn graph_ref<'a>(g: *const DkGraph) -> Result<&'a Graph, DkStatus> {
    g.as_ref().map(|h| &h.inner).ok_or(DkStatus::DkErrNull)
}

fn install_graph(out: *mut *mut DkGraph, graph: Graph) -> DkStatus {
    if out.is_null() {
        return fail(DkStatus::DkErrNull, "output handle pointer is null");
    }
    let boxed = Box::new(DkGraph { inner: graph });
    unsafe { *out = Box::into_raw(boxed) };
    DkStatus::DkOk
}

/// Builds a graph from a family tag such as "K:3", "P:4", "C:5", "S:3".
///
/// # Safety
/// `tag` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_from_family(
    tag: *const c_char,
    out: *mut *mut DkGraph,
) -> DkStatus {
    guard(|| {
        let tag = match read_str(tag) {
            Ok(s) => s,
            Err(st) => return fail(st, "family tag is null or not UTF-8"),
        };
        match Graph::family(tag) {
            Ok(g) => install_graph(out, g),
            Err(e) => fail(DkStatus::DkErrGraph, &e.to_string()),
        }
    })
}

/// Parses an edge-list graph ("u v" per line, '#' comments, optional
/// "n <count>" header).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_parse(text: *const c_char, out: *mut *mut DkGraph) -> DkStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(s) => s,
            Err(st) => return fail(st, "graph text is null or not UTF-8"),
        };
        match Graph::parse(text) {
            Ok(g) => install_graph(out, g),
            Err(e) => fail(DkStatus::DkErrGraph, &e.to_string()),
        }
    })
}

/// Releases a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must be a handle returned by a constructor, released at most once.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_free(g: *mut DkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 if the handle is null.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_vertices(g: *const DkGraph) -> u32 {
    graph_ref(g).map(Graph::vertex_count).unwrap_or(0)
}

/// Number of edges, or 0 if the handle is null.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_edges(g: *const DkGraph) -> u64 {
    graph_ref(g).map(Graph::edge_count).unwrap_or(0)
}

/// Graph diameter, or 0 if the handle is null.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_diameter(g: *const DkGraph) -> u32 {
    graph_ref(g).map(Graph::diameter).unwrap_or(0)
}

/// Mean degree 2|E|/|V| as a double.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dk_graph_mean_degree(g: *const DkGraph, out: *mut f64) -> DkStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(r) => r,
            Err(st) => return fail(st, "graph handle is null"),
        };
        if out.is_null() {
            return fail(DkStatus::DkErrNull, "output pointer is null");
        }
        *out = rational_to_f64(&graph.mean_degree());
        DkStatus::DkOk
    })
}

fn moment_status(e: &moments::MomentError) -> DkStatus {
    match e {
        moments::MomentError::OrderOutOfRange { .. }
        | moments::MomentError::ZeroCopies
        | moments::MomentError::ZeroPower => DkStatus::DkErrArgument,
        _ => DkStatus::DkErrEngine,
    }
}

/// Normalized moment of the distance-k adjacency of the N-th Cartesian
/// power: the m-th trace moment divided by N^(k*m/2), as a double.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dk_moment_distance_k(
    g: *const DkGraph,
    n_copies: u64,
    k: u32,
    m: u32,
    out: *mut f64,
) -> DkStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(r) => r,
            Err(st) => return fail(st, "graph handle is null"),
        };
        if out.is_null() {
            return fail(DkStatus::DkErrNull, "output pointer is null");
        }
        match moments::moment_distance_k(graph, n_copies, k, m) {
            Ok(r) => {
                *out = r.normalized;
                DkStatus::DkOk
            }
            Err(e) => fail(moment_status(&e), &e.to_string()),
        }
    })
}

/// Exact raw moment of the distance-k adjacency as a newly allocated
/// rational string "p/q" (or an integer string); release it with
/// [`dk_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dk_moment_distance_k_exact(
    g: *const DkGraph,
    n_copies: u64,
    k: u32,
    m: u32,
    out: *mut *mut c_char,
) -> DkStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(r) => r,
            Err(st) => return fail(st, "graph handle is null"),
        };
        if out.is_null() {
            return fail(DkStatus::DkErrNull, "output pointer is null");
        }
        match moments::moment_distance_k(graph, n_copies, k, m) {
            Ok(r) => {
                let text = r.raw.to_string();
                match CString::new(text) {
                    Ok(cs) => {
                        *out = cs.into_raw();
                        DkStatus::DkOk
                    }
                    Err(_) => fail(DkStatus::DkErrInternal, "exact value contained NUL"),
                }
            }
            Err(e) => fail(moment_status(&e), &e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must originate from this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// m-th moment of the limit law `c^(k/2) H_k(g) / k!` for standard normal
/// `g`, as a double.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dk_limit_moment(
    g: *const DkGraph,
    k: u32,
    m: u32,
    out: *mut f64,
) -> DkStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(r) => r,
            Err(st) => return fail(st, "graph handle is null"),
        };
        if out.is_null() {
            return fail(DkStatus::DkErrNull, "output pointer is null");
        }
        *out = rational_to_f64(&hermite::limit_moment(&graph.mean_degree(), k, m));
        DkStatus::DkOk
    })
}

/// Eigenvalues (ascending) of the explicit distance-k adjacency of the
/// N-th Cartesian power. Two-call protocol: the required length is always
/// written to `needed` (the explicit dimension |V|^N); when `out` is null
/// the call stops there, otherwise `len` must be at least that dimension.
/// The explicit matrix is refused above `ceiling` (pass 0 for the default
/// of 4096).
///
/// # Safety
/// `g` must be a live handle; `needed` must be valid; `out`, when non-null,
/// must point to at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dk_spectrum(
    g: *const DkGraph,
    n_copies: u32,
    k: u32,
    ceiling: u64,
    out: *mut f64,
    len: usize,
    needed: *mut usize,
) -> DkStatus {
    guard(|| {
        let graph = match graph_ref(g) {
            Ok(r) => r,
            Err(st) => return fail(st, "graph handle is null"),
        };
        if needed.is_null() {
            return fail(DkStatus::DkErrNull, "needed pointer is null");
        }
        let ceiling = if ceiling == 0 {
            brute::DEFAULT_EXPLICIT_CEILING
        } else {
            ceiling
        };
        let matrix = match brute::distance_k_adjacency(graph, n_copies, k, ceiling) {
            Ok(m) => m,
            Err(e) => return fail(DkStatus::DkErrEngine, &e.to_string()),
        };
        *needed = matrix.dim();
        if out.is_null() {
            return DkStatus::DkOk;
        }
        if len < matrix.dim() {
            return fail(
                DkStatus::DkErrBuffer,
                &format!("buffer holds {len}, spectrum needs {}", matrix.dim()),
            );
        }
        match brute::jacobi_eigenvalues_default(&matrix) {
            Ok(eigs) => {
                ptr::copy_nonoverlapping(eigs.as_ptr(), out, eigs.len());
                DkStatus::DkOk
            }
            Err(e) => fail(DkStatus::DkErrEngine, &e.to_string()),
        }
    })
}
