use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tcolor_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tc_last_error()) }.to_string_lossy().into_owned()
}

fn cayley(n: usize, s1: i64, s2: i64) -> *mut TcMap {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tc_map_cayley(n, s1, s2, &mut m) }, TcStatus::Ok);
    m
}

#[test]
fn gamma37_is_refused_with_a_message() {
    let m = cayley(37, 1, 10);
    unsafe {
        assert_eq!(tc_map_num_vertices(m), 37);
        let mut r = 0usize;
        assert_eq!(tc_map_representativity(m, &mut r), TcStatus::Ok);
        assert_eq!(r, 7);
        let mut ok = false;
        assert_eq!(tc_map_is_eulerian_triangulation(m, &mut ok), TcStatus::Ok);
        assert!(ok);
        let mut col = vec![0u8; 37];
        assert_eq!(tc_four_color(m, false, col.as_mut_ptr(), 37), TcStatus::LowRepresentativity);
        assert_eq!(last_error(), "representativity 7 < 10");
        assert_eq!(tc_four_color(m, false, col.as_mut_ptr(), 10), TcStatus::BufferTooSmall);
        tc_map_free(m);
    }
}

#[test]
fn gamma111_colors_and_verifies() {
    let m = cayley(111, 1, 10);
    let mut col = vec![9u8; 111];
    unsafe {
        assert_eq!(tc_four_color(m, false, col.as_mut_ptr(), col.len()), TcStatus::Ok);
        assert_eq!(last_error(), "");
        let mut ok = false;
        assert_eq!(tc_verify_coloring(m, col.as_ptr(), col.len(), 4, &mut ok), TcStatus::Ok);
        assert!(ok);
        col.swap(0, 1);
        col[1] = col[0];
        assert_eq!(tc_verify_coloring(m, col.as_ptr(), col.len(), 4, &mut ok), TcStatus::Ok);
        assert!(!ok);
        tc_map_free(m);
    }
}

#[test]
fn text_round_trip_and_parse_errors() {
    let m = cayley(37, 1, 10);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(tc_map_to_text(m, &mut text), TcStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(tc_map_parse(text, &mut back), TcStatus::Ok);
        assert_eq!(tc_map_num_vertices(back), 37);
        tc_string_free(text);
        tc_map_free(back);
        tc_map_free(m);

        let bad = CString::new("TORUSMAP 1\nV 2\n0 : 7/0/0\n").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(tc_map_parse(bad.as_ptr(), &mut out), TcStatus::InputError);
        assert!(out.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(tc_map_parse(ptr::null(), &mut out), TcStatus::NullPointer);
        assert_eq!(tc_map_cayley(3, 1, 1, &mut out), TcStatus::InputError);
        assert_eq!(tc_map_num_vertices(ptr::null()), 0);
        tc_map_free(ptr::null_mut());
    }
    assert_eq!(unsafe { CStr::from_ptr(tc_version()) }.to_str().unwrap(), "0.1.0");
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/tcolor.h")).unwrap();
    for name in [
        "tc_version",
        "tc_last_error",
        "tc_map_parse",
        "tc_map_cayley",
        "tc_map_free",
        "tc_map_num_vertices",
        "tc_map_to_text",
        "tc_string_free",
        "tc_map_is_eulerian_triangulation",
        "tc_map_representativity",
        "tc_four_color",
        "tc_verify_coloring",
        "TC_STATUS_LOW_REPRESENTATIVITY",
        "typedef struct TcMap TcMap",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"tcolor.h\"\nint main(void) { TcMap *m = 0; TcStatus s = tc_map_cayley(37, 1, 10, &m); tc_map_free(m); return s != TC_STATUS_OK; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("a C compiler");
    assert!(status.success());
}
