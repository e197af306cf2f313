//! C ABI over the `shatter` library.
//!
//! Graphs and trajectories are opaque heap handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`ShatterStatus`]; on failure the message is available from
//! [`shatter_last_error_message`] on the same thread. Outputs are written
//! through pointer arguments only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shatter::disintegrate::{algorithm1, theorem_b_disintegrate, Orientation, Trajectory};
use shatter::generators::{assign_weights, gen_gnm, GraphModel, WeightModel};
use shatter::graph::io::{read_edge_list_file, write_edge_list_file};
use shatter::graph::{max_component_size, susceptibility};
use shatter::harness::Method;
use shatter::oracle::optimal_disintegration;
use shatter::spanning::max_spanning_forest;
use shatter::theory::predict;
use shatter::{Error, RngSeed, WeightedGraph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatterStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Node id, edge or index outside the valid range.
    OutOfRange = 3,
    Io = 4,
    Parse = 5,
    TooLarge = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatterOrientation {
    Minimize = 0,
    Maximize = 1,
}

/// Opaque weighted graph.
pub struct ShatterGraph(WeightedGraph);

/// Opaque removal trajectory.
pub struct ShatterTrajectory(Trajectory);

/// One trajectory point; index 0 is the state before the first removal.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ShatterPoint {
    pub step: usize,
    pub cum_cost: f64,
    pub max_component: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ShatterTrimReport {
    pub total_cost: f64,
    pub removed: usize,
    pub t: f64,
    pub d: usize,
    pub beta: f64,
    pub final_max_component: usize,
}

/// Predictions for `G(n, cn)`; fields without a value (no giant component) are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ShatterTheoryReport {
    pub n: usize,
    pub m: usize,
    pub c: f64,
    pub l: f64,
    pub r: f64,
    pub mu: f64,
    pub threshold_unweighted: f64,
    pub expected_maxsf: f64,
    pub expected_l_prime: f64,
    pub r_prime: f64,
    pub threshold_weighted: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ShatterStatus {
    match e {
        Error::InvalidArgument(_)
        | Error::InvalidWeight(_)
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::NotATree(_)
        | Error::Descriptor { .. } => ShatterStatus::InvalidArgument,
        Error::NodeOutOfRange { .. } | Error::MissingEdge(..) => ShatterStatus::OutOfRange,
        Error::Io { .. } => ShatterStatus::Io,
        Error::Parse { .. } | Error::Csv(_) => ShatterStatus::Parse,
        Error::TooLarge(_) => ShatterStatus::TooLarge,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
    Range(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ShatterStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShatterStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for `{what}`"));
            ShatterStatus::NullPointer
        }
        Ok(Err(Failure::Range(msg))) => {
            set_last_error(msg);
            ShatterStatus::OutOfRange
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            ShatterStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidArgument(format!("`{what}` is not valid UTF-8"))))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn shatter_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn shatter_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Edgeless graph on `n` nodes.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_new(n: usize, out: *mut *mut ShatterGraph) -> ShatterStatus {
    guard(|| write_out(out, Box::into_raw(Box::new(ShatterGraph(WeightedGraph::new(n)))), "out"))
}

/// # Safety
/// `graph` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_free(graph: *mut ShatterGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_add_edge(graph: *mut ShatterGraph, u: usize, v: usize, w: f64) -> ShatterStatus {
    guard(|| {
        deref_mut(graph, "graph")?.0.add_edge(u, v, w)?;
        Ok(())
    })
}

/// Reads a whitespace-separated `u v [w]` edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_load(path: *const c_char, out: *mut *mut ShatterGraph) -> ShatterStatus {
    guard(|| {
        let g = read_edge_list_file(string(path, "path")?)?;
        write_out(out, Box::into_raw(Box::new(ShatterGraph(g))), "out")
    })
}

/// # Safety
/// `graph` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_save(graph: *const ShatterGraph, path: *const c_char) -> ShatterStatus {
    guard(|| {
        write_edge_list_file(&deref(graph, "graph")?.0, string(path, "path")?)?;
        Ok(())
    })
}

/// Uniform random graph with `n` nodes and `m` unit-weight edges.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_gnm(
    n: usize,
    m: usize,
    seed: u64,
    stream: u64,
    out: *mut *mut ShatterGraph,
) -> ShatterStatus {
    guard(|| {
        let g = gen_gnm(n, m, RngSeed::new(seed, stream))?;
        write_out(out, Box::into_raw(Box::new(ShatterGraph(g))), "out")
    })
}

/// Unit-weight graph from a topology descriptor such as `gnm:n=50,m=100` or
/// `powlaw-deg:n=50,exp=3,kmin=1`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_generate(
    descriptor: *const c_char,
    seed: u64,
    stream: u64,
    out: *mut *mut ShatterGraph,
) -> ShatterStatus {
    guard(|| {
        let model: GraphModel = string(descriptor, "descriptor")?.parse()?;
        let g = model.generate(RngSeed::new(seed, stream))?;
        write_out(out, Box::into_raw(Box::new(ShatterGraph(g))), "out")
    })
}

/// Replaces every edge weight with an i.i.d. draw from `model`
/// (`unif`, `exp:2`, `pareto:3,0.25`, `const:1`).
///
/// # Safety
/// `graph` must be a live handle; `model` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_assign_weights(
    graph: *mut ShatterGraph,
    model: *const c_char,
    seed: u64,
    stream: u64,
) -> ShatterStatus {
    guard(|| {
        let g = deref_mut(graph, "graph")?;
        let model: WeightModel = string(model, "model")?.parse()?;
        g.0 = assign_weights(&g.0, &model, RngSeed::new(seed, stream))?;
        Ok(())
    })
}

/// # Safety
/// `graph` must be a live handle; output pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_counts(
    graph: *const ShatterGraph,
    nodes: *mut usize,
    edges: *mut usize,
) -> ShatterStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        write_out(nodes, g.node_count(), "nodes")?;
        write_out(edges, g.edge_count(), "edges")
    })
}

/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_max_component(graph: *const ShatterGraph, out: *mut usize) -> ShatterStatus {
    guard(|| write_out(out, max_component_size(&deref(graph, "graph")?.0), "out"))
}

/// Mean squared component size per node.
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_susceptibility(graph: *const ShatterGraph, out: *mut f64) -> ShatterStatus {
    guard(|| write_out(out, susceptibility(&deref(graph, "graph")?.0), "out"))
}

/// Total weight of a maximum spanning forest.
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_graph_maxsf_weight(graph: *const ShatterGraph, out: *mut f64) -> ShatterStatus {
    guard(|| write_out(out, max_spanning_forest(&deref(graph, "graph")?.0).total_weight, "out"))
}

/// Runs a greedy heuristic to completion. `method` is one of
/// `maxsf-susceptibility`, `maxsf-betweenness`, `full-susceptibility`,
/// `full-betweenness`.
///
/// # Safety
/// `graph` must be a live handle; `method` a NUL-terminated string; `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_run_heuristic(
    graph: *const ShatterGraph,
    method: *const c_char,
    orientation: ShatterOrientation,
    seed: u64,
    stream: u64,
    out: *mut *mut ShatterTrajectory,
) -> ShatterStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let method: Method = string(method, "method")?.parse()?;
        let orientation = match orientation {
            ShatterOrientation::Minimize => Orientation::Minimize,
            ShatterOrientation::Maximize => Orientation::Maximize,
        };
        let t = algorithm1(g, &method.spec(orientation), RngSeed::new(seed, stream), None)?;
        write_out(out, Box::into_raw(Box::new(ShatterTrajectory(t))), "out")
    })
}

/// Number of points, including the initial one.
///
/// # Safety
/// `trajectory` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_trajectory_len(
    trajectory: *const ShatterTrajectory,
    out: *mut usize,
) -> ShatterStatus {
    guard(|| write_out(out, deref(trajectory, "trajectory")?.0.steps.len() + 1, "out"))
}

/// # Safety
/// `trajectory` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_trajectory_point(
    trajectory: *const ShatterTrajectory,
    index: usize,
    out: *mut ShatterPoint,
) -> ShatterStatus {
    guard(|| {
        let t = &deref(trajectory, "trajectory")?.0;
        let (step, cum_cost, max_component) = t
            .points()
            .nth(index)
            .ok_or_else(|| Failure::Range(format!("point {index} outside 0..{}", t.steps.len() + 1)))?;
        write_out(
            out,
            ShatterPoint {
                step,
                cum_cost,
                max_component,
            },
            "out",
        )
    })
}

/// # Safety
/// `trajectory` must be NULL or a handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn shatter_trajectory_free(trajectory: *mut ShatterTrajectory) {
    if !trajectory.is_null() {
        drop(Box::from_raw(trajectory));
    }
}

/// Spanning-tree construction with tree trimming. A `weight_cap` that is not
/// positive means "use the heaviest edge".
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_theorem_b(
    graph: *const ShatterGraph,
    gamma: f64,
    weight_cap: f64,
    out: *mut ShatterTrimReport,
) -> ShatterStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let cap = (weight_cap > 0.0).then_some(weight_cap);
        let r = theorem_b_disintegrate(g, gamma, cap)?;
        let report = ShatterTrimReport {
            total_cost: r.total_cost,
            removed: r.removed_count(),
            t: r.params.t,
            d: r.params.d,
            beta: r.params.beta,
            final_max_component: r.final_max_component,
        };
        write_out(out, report, "out")
    })
}

/// Exact minimum removal cost for component cap `k` (at most 22 edges).
///
/// # Safety
/// `graph` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_oracle_cost(graph: *const ShatterGraph, k: usize, out: *mut f64) -> ShatterStatus {
    guard(|| {
        let r = optimal_disintegration(&deref(graph, "graph")?.0, k)?;
        write_out(out, r.optimal_cost, "out")
    })
}

/// # Safety
/// `model` must be a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shatter_predict(
    c: f64,
    model: *const c_char,
    n: usize,
    out: *mut ShatterTheoryReport,
) -> ShatterStatus {
    guard(|| {
        let model: WeightModel = string(model, "model")?.parse()?;
        let r = predict(c, &model, n)?;
        let report = ShatterTheoryReport {
            n: r.n,
            m: r.m,
            c: r.c,
            l: r.l,
            r: r.r,
            mu: r.mu,
            threshold_unweighted: r.threshold_unweighted,
            expected_maxsf: r.expected_maxsf,
            expected_l_prime: r.expected_l_prime.unwrap_or(f64::NAN),
            r_prime: r.r_prime,
            threshold_weighted: r.threshold_weighted.unwrap_or(f64::NAN),
        };
        write_out(out, report, "out")
    })
}
