use gridguard_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { gg_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn polygon(text: &str) -> *mut GgPolygon {
    let text = CString::new(text).unwrap();
    let mut poly = ptr::null_mut();
    assert_eq!(unsafe { gg_polygon_from_text(text.as_ptr(), &mut poly) }, GgStatus::Ok);
    poly
}

#[test]
fn square_from_text_needs_one_guard() {
    let poly = polygon("# unit square\n0 0\n1 0\n1 1\n0 1\n");
    assert_eq!(unsafe { gg_polygon_vertex_count(poly) }, 4);
    let mut opts = gg_options_default();
    opts.solver = GgSolver::Both;
    opts.verify_samples = 500;
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { gg_solve(poly, &opts, &mut sol) }, GgStatus::Ok);
    let mut stats = GgStats::default();
    assert_eq!(unsafe { gg_solution_stats(sol, &mut stats) }, GgStatus::Ok);
    assert_eq!(stats.guard_count, 1);
    assert_eq!(stats.vertex_count, 4);
    assert_eq!(stats.coverage, 1.0);
    let (mut x, mut y) = (f64::NAN, f64::NAN);
    assert_eq!(unsafe { gg_solution_guard(sol, 0, &mut x, &mut y) }, GgStatus::Ok);
    assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    assert_eq!(unsafe { gg_solution_guard(sol, 1, &mut x, &mut y) }, GgStatus::InvalidArgument);
    assert!(last_error().contains("out of range"));

    let json = unsafe { gg_solution_to_json(sol) };
    assert!(!json.is_null());
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["guard_count"], 1);
    unsafe {
        gg_string_free(json);
        gg_solution_free(sol);
        gg_polygon_free(poly);
    }
}

#[test]
fn coords_l_shape_with_default_options() {
    let xy = [0.0, 0.0, 2.0, 0.0, 2.0, 1.0, 1.0, 1.0, 1.0, 2.0, 0.0, 2.0];
    let mut poly = ptr::null_mut();
    assert_eq!(unsafe { gg_polygon_from_coords(xy.as_ptr(), 6, &mut poly) }, GgStatus::Ok);
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { gg_solve(poly, ptr::null(), &mut sol) }, GgStatus::Ok);
    let mut stats = GgStats::default();
    unsafe { gg_solution_stats(sol, &mut stats) };
    assert_eq!(stats.guard_count, 1);
    assert_eq!(stats.coverage, -1.0);
    unsafe {
        gg_solution_free(sol);
        gg_polygon_free(poly);
    }
}

#[test]
fn error_codes() {
    let mut poly = ptr::null_mut();
    let bowtie = CString::new("0 0\n1 1\n1 0\n0 1\n").unwrap();
    assert_eq!(unsafe { gg_polygon_from_text(bowtie.as_ptr(), &mut poly) }, GgStatus::NotSimple);
    assert!(poly.is_null());
    let junk = CString::new("0 0\n1 zero\n").unwrap();
    assert_eq!(unsafe { gg_polygon_from_text(junk.as_ptr(), &mut poly) }, GgStatus::ParseError);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { gg_polygon_from_text(ptr::null(), &mut poly) }, GgStatus::NullPointer);
    let nan = [0.0, 0.0, f64::NAN, 0.0, 1.0, 1.0];
    assert_eq!(unsafe { gg_polygon_from_coords(nan.as_ptr(), 3, &mut poly) }, GgStatus::InvalidArgument);

    let poly = polygon("0 0\n4 0\n4 4\n0 4\n");
    let mut opts = gg_options_default();
    opts.strategy = GgStrategy::Paper1;
    opts.max_cells = 1;
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { gg_solve(poly, &opts, &mut sol) }, GgStatus::BudgetExceeded);
    assert!(sol.is_null());
    assert_eq!(unsafe { gg_solve(ptr::null(), &opts, &mut sol) }, GgStatus::NullPointer);
    unsafe { gg_polygon_free(poly) };
    // Null handles are accepted by the release functions.
    unsafe {
        gg_polygon_free(ptr::null_mut());
        gg_solution_free(ptr::null_mut());
        gg_string_free(ptr::null_mut());
    }
}

#[test]
fn status_strings_are_static() {
    let s = unsafe { CStr::from_ptr(gg_status_str(GgStatus::NotSimple)) };
    assert_eq!(s.to_str().unwrap(), "polygon is not simple");
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gridguard.h")).unwrap();
    for name in ["gg_solve", "gg_polygon_free", "GG_STATUS_BUDGET_EXCEEDED", "typedef struct GgPolygon GgPolygon"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
