//! C ABI for the gridguard solver.
//!
//! Polygons and solutions are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`GgStatus`]; on failure a description is available from
//! [`gg_last_error`] on the same thread.

use gridguard::decomposition::{DecompositionConfig, Strategy, DEFAULT_MAX_CELLS};
use gridguard::geometry::scalar::from_f64;
use gridguard::geometry::{GeometryError, Point, SimplePolygon};
use gridguard::io::{parse_polygon_str, ParseError};
use gridguard::pipeline::{solve_in_pool, PipelineError, RunConfig, RunReport, SolverChoice};
use gridguard::setcover::DEFAULT_EXACT_BUDGET;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotSimple = 4,
    BudgetExceeded = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgStrategy {
    Paper1 = 0,
    Paper2 = 1,
    Trapezoid = 2,
    Grid = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgSolver {
    Greedy = 0,
    Exact = 1,
    Both = 2,
}

/// Solver options. Start from [`gg_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GgOptions {
    pub strategy: GgStrategy,
    pub k: u32,
    pub grid_resolution: u32,
    pub max_cells: usize,
    pub solver: GgSolver,
    /// Coverage samples; 0 skips verification.
    pub verify_samples: usize,
    pub seed: u64,
    pub exact_budget: u64,
    /// Worker threads; 0 uses the default pool.
    pub threads: usize,
}

/// Counts describing a solution.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GgStats {
    pub vertex_count: usize,
    pub scr_count: usize,
    pub tsr_count: usize,
    pub gr_count: usize,
    pub guard_count: usize,
    /// Fraction of samples seen, or -1 when verification did not run.
    pub coverage: f64,
}

/// Opaque polygon handle.
pub struct GgPolygon(SimplePolygon);

/// Opaque solution handle.
pub struct GgSolution(RunReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: GgStatus, msg: impl Into<String>) -> GgStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`GgStatus::Panic`].
fn guarded(f: impl FnOnce() -> GgStatus) -> GgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GgStatus::Panic, "internal panic"),
    }
}

fn parse_status(e: &ParseError) -> GgStatus {
    match e {
        ParseError::NotSimple(..) => GgStatus::NotSimple,
        _ => GgStatus::ParseError,
    }
}

fn pipeline_status(e: &PipelineError) -> GgStatus {
    match e.exit_code() {
        2 => GgStatus::InvalidArgument,
        3 => GgStatus::BudgetExceeded,
        _ => GgStatus::Internal,
    }
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length, 0 when
/// there is none.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gg_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            // SAFETY: the caller guarantees `len` writable bytes at `buf`.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gg_status_str(status: GgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GgStatus::Ok => c"ok",
        GgStatus::NullPointer => c"null pointer",
        GgStatus::InvalidArgument => c"invalid argument",
        GgStatus::ParseError => c"parse error",
        GgStatus::NotSimple => c"polygon is not simple",
        GgStatus::BudgetExceeded => c"budget exceeded",
        GgStatus::Internal => c"internal error",
        GgStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Parses polygon text ("x y" per line, `#` comments) into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gg_polygon_from_text(text: *const c_char, out: *mut *mut GgPolygon) -> GgStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(GgStatus::NullPointer, "null argument");
        }
        // SAFETY: checked non-null; the caller guarantees NUL termination.
        let Ok(text) = (unsafe { CStr::from_ptr(text) }).to_str() else {
            return fail(GgStatus::InvalidArgument, "text is not UTF-8");
        };
        match parse_polygon_str(text) {
            Ok(poly) => {
                // SAFETY: checked non-null.
                unsafe { *out = Box::into_raw(Box::new(GgPolygon(poly))) };
                GgStatus::Ok
            }
            Err(e) => fail(parse_status(&e), e.to_string()),
        }
    })
}

/// Builds a polygon from `n` interleaved `x, y` doubles, each converted
/// exactly.
///
/// # Safety
/// `xy` must point to `2 * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gg_polygon_from_coords(xy: *const f64, n: usize, out: *mut *mut GgPolygon) -> GgStatus {
    guarded(|| {
        if xy.is_null() || out.is_null() {
            return fail(GgStatus::NullPointer, "null argument");
        }
        // SAFETY: the caller guarantees 2 * n readable doubles.
        let coords = unsafe { std::slice::from_raw_parts(xy, 2 * n) };
        let mut pts = Vec::with_capacity(n);
        for (i, c) in coords.chunks_exact(2).enumerate() {
            let (Some(x), Some(y)) = (from_f64(c[0]), from_f64(c[1])) else {
                return fail(GgStatus::InvalidArgument, format!("vertex {i} is not finite"));
            };
            pts.push(Point::new(x, y));
        }
        match SimplePolygon::new(pts) {
            Ok(poly) => {
                // SAFETY: checked non-null.
                unsafe { *out = Box::into_raw(Box::new(GgPolygon(poly))) };
                GgStatus::Ok
            }
            Err(e @ GeometryError::NotSimple(..)) => fail(GgStatus::NotSimple, e.to_string()),
            Err(e) => fail(GgStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_polygon_vertex_count(poly: *const GgPolygon) -> usize {
    // SAFETY: the caller guarantees a live handle or null.
    unsafe { poly.as_ref() }.map_or(0, |p| p.0.len())
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gg_polygon_free(poly: *mut GgPolygon) {
    if !poly.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(poly) });
    }
}

#[no_mangle]
pub extern "C" fn gg_options_default() -> GgOptions {
    GgOptions {
        strategy: GgStrategy::Trapezoid,
        k: 0,
        grid_resolution: 4,
        max_cells: DEFAULT_MAX_CELLS,
        solver: GgSolver::Greedy,
        verify_samples: 0,
        seed: 0,
        exact_budget: DEFAULT_EXACT_BUDGET,
        threads: 0,
    }
}

fn run_config(o: &GgOptions) -> RunConfig {
    let strategy = match o.strategy {
        GgStrategy::Paper1 => Strategy::Paper1,
        GgStrategy::Paper2 => Strategy::Paper2,
        GgStrategy::Trapezoid => Strategy::Trapezoid,
        GgStrategy::Grid => Strategy::Grid,
    };
    let mut decomposition = DecompositionConfig::new(strategy).with_k(o.k);
    decomposition.grid_resolution = o.grid_resolution;
    decomposition.max_cells = o.max_cells;
    let mut cfg = RunConfig::new("");
    cfg.decomposition = decomposition;
    cfg.solver = match o.solver {
        GgSolver::Greedy => SolverChoice::Greedy,
        GgSolver::Exact => SolverChoice::Exact,
        GgSolver::Both => SolverChoice::Both,
    };
    cfg.verify_samples = o.verify_samples;
    cfg.seed = o.seed;
    cfg.exact_budget = o.exact_budget;
    cfg.threads = (o.threads > 0).then_some(o.threads);
    cfg
}

/// Places guards in `poly`. `options` may be null for the defaults.
///
/// # Safety
/// `poly` must be a live handle, `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gg_solve(
    poly: *const GgPolygon,
    options: *const GgOptions,
    out: *mut *mut GgSolution,
) -> GgStatus {
    guarded(|| {
        // SAFETY: the caller guarantees live handles or null.
        let (Some(poly), Some(out)) = (unsafe { poly.as_ref() }, unsafe { out.as_mut() }) else {
            return fail(GgStatus::NullPointer, "null argument");
        };
        // SAFETY: as above.
        let opts = unsafe { options.as_ref() }.copied().unwrap_or_else(|| gg_options_default());
        let cfg = run_config(&opts);
        if let Err(e) = cfg.decomposition.validate() {
            return fail(GgStatus::InvalidArgument, e.to_string());
        }
        let result = solve_in_pool(&poly.0, &cfg);
        match result {
            Ok(report) => {
                *out = Box::into_raw(Box::new(GgSolution(report)));
                GgStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `sol` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gg_solution_stats(sol: *const GgSolution, out: *mut GgStats) -> GgStatus {
    // SAFETY: the caller guarantees live handles or null.
    let (Some(sol), Some(out)) = (unsafe { sol.as_ref() }, unsafe { out.as_mut() }) else {
        return fail(GgStatus::NullPointer, "null argument");
    };
    let r = &sol.0;
    *out = GgStats {
        vertex_count: r.n,
        scr_count: r.scr_count,
        tsr_count: r.tsr_count,
        gr_count: r.gr_count,
        guard_count: r.guard_count(),
        coverage: r.coverage.as_ref().map_or(-1.0, |c| c.fraction),
    };
    GgStatus::Ok
}

/// Guard `i` rounded to doubles.
///
/// # Safety
/// `sol` must be a live handle; `x` and `y` writable.
#[no_mangle]
pub unsafe extern "C" fn gg_solution_guard(sol: *const GgSolution, i: usize, x: *mut f64, y: *mut f64) -> GgStatus {
    // SAFETY: the caller guarantees live handles or null.
    let (Some(sol), Some(x), Some(y)) = (unsafe { sol.as_ref() }, unsafe { x.as_mut() }, unsafe { y.as_mut() }) else {
        return fail(GgStatus::NullPointer, "null argument");
    };
    match sol.0.guards().get(i) {
        Some(g) => {
            (*x, *y) = g.approx();
            GgStatus::Ok
        }
        None => fail(GgStatus::InvalidArgument, format!("guard index {i} out of range")),
    }
}

/// JSON report; release it with [`gg_string_free`]. Null on bad input.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gg_solution_to_json(sol: *const GgSolution) -> *mut c_char {
    // SAFETY: the caller guarantees a live handle or null.
    match unsafe { sol.as_ref() } {
        Some(s) => CString::new(s.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("null argument");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gg_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `sol` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gg_solution_free(sol: *mut GgSolution) {
    if !sol.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(sol) });
    }
}
