//! C ABI over `tcolor`. Maps live behind opaque `TcMap` handles; every
//! fallible call returns a `TcStatus` and leaves a message for
//! `tc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tcolor::cli::is_input_error;
use tcolor::four_color::{four_color, verify_coloring, Options};
use tcolor::homotopy::Homotopy;
use tcolor::torus_map::TorusMap;
use tcolor::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed map text or arguments.
    InputError = 3,
    /// A well-formed instance that the operation cannot handle.
    DomainError = 4,
    /// Representativity below 10 without `force`.
    LowRepresentativity = 5,
    BudgetExhausted = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// An immutable torus map.
pub struct TcMap {
    map: TorusMap,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: TcStatus, msg: &str) -> TcStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TcStatus {
    let status = match e {
        Error::LowRepresentativity { .. } => TcStatus::LowRepresentativity,
        Error::BudgetExhausted { .. } => TcStatus::BudgetExhausted,
        ref e if is_input_error(e) => TcStatus::InputError,
        _ => TcStatus::DomainError,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> TcStatus) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == TcStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(TcStatus::Panic, "internal panic"),
    }
}

unsafe fn map_ref<'a>(map: *const TcMap) -> Option<&'a TorusMap> {
    map.as_ref().map(|m| &m.map)
}

fn publish(map: TorusMap, out: *mut *mut TcMap) -> TcStatus {
    unsafe { *out = Box::into_raw(Box::new(TcMap { map })) };
    TcStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    c"0.1.0".as_ptr()
}

/// Message of the last failed call on this thread, or "" after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse TORUSMAP text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_map_parse(text: *const c_char, out: *mut *mut TcMap) -> TcStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(TcStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(TcStatus::InvalidUtf8, "map text is not UTF-8");
        };
        match TorusMap::load(s) {
            Ok(m) => publish(m, out),
            Err(e) => from_error(e),
        }
    })
}

/// Build Γ(ℤₙ, {s1, s2, s1+s2}) into a new handle stored in `*out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_map_cayley(n: usize, s1: i64, s2: i64, out: *mut *mut TcMap) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return fail(TcStatus::NullPointer, "null argument");
        }
        match tcolor::cayley::build_cayley(n, s1, s2) {
            Ok(m) => publish(m, out),
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `map` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tc_map_free(map: *mut TcMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `map` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_map_num_vertices(map: *const TcMap) -> usize {
    map_ref(map).map_or(0, |m| m.num_vertices())
}

/// Canonical TORUSMAP text in a new string freed by `tc_string_free`.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_map_to_text(map: *const TcMap, out: *mut *mut c_char) -> TcStatus {
    guard(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(TcStatus::NullPointer, "null argument");
        };
        *out = CString::new(m.to_text()).unwrap_or_default().into_raw();
        TcStatus::Ok
    })
}

/// # Safety
/// `s` must be null or come from `tc_map_to_text`.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether every face is a triangle and every degree is even.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_map_is_eulerian_triangulation(map: *const TcMap, out: *mut bool) -> TcStatus {
    guard(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(TcStatus::NullPointer, "null argument");
        };
        *out = m.is_triangulation() && m.is_eulerian();
        TcStatus::Ok
    })
}

/// Length of a shortest non-contractible cycle.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_map_representativity(map: *const TcMap, out: *mut usize) -> TcStatus {
    guard(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(TcStatus::NullPointer, "null argument");
        };
        match Homotopy::new(m) {
            Ok(h) => {
                *out = h.representativity().r;
                TcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Write a verified 4-coloring into `colors[0..V]`. `len` must be at
/// least the vertex count.
///
/// # Safety
/// `map` must be a live handle and `colors` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tc_four_color(map: *const TcMap, force: bool, colors: *mut u8, len: usize) -> TcStatus {
    guard(|| {
        let (Some(m), false) = (map_ref(map), colors.is_null()) else {
            return fail(TcStatus::NullPointer, "null argument");
        };
        if len < m.num_vertices() {
            return fail(TcStatus::BufferTooSmall, &format!("buffer holds {len} colors, map has {}", m.num_vertices()));
        }
        let opts = Options { force, ..Options::default() };
        match four_color(m, &opts) {
            Ok(res) => {
                std::slice::from_raw_parts_mut(colors, res.coloring.len()).copy_from_slice(&res.coloring);
                TcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Whether `colors[0..len]` is a proper coloring with colors below `k`.
///
/// # Safety
/// `map` must be a live handle, `colors` valid for `len` bytes and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_verify_coloring(map: *const TcMap, colors: *const u8, len: usize, k: u8, out: *mut bool) -> TcStatus {
    guard(|| {
        let (Some(m), false, false) = (map_ref(map), colors.is_null(), out.is_null()) else {
            return fail(TcStatus::NullPointer, "null argument");
        };
        let col = std::slice::from_raw_parts(colors, len);
        match verify_coloring(m, col, k) {
            Ok(ok) => {
                *out = ok;
                TcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
