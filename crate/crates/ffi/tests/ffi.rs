use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ghpq_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ghpq_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ghpq_last_error_message()) }.to_str().unwrap().to_string()
}

fn text(poly: *const GhpqPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ghpq_poly_to_text(poly, &mut s) }, GhpqStatus::Ok);
    take_string(s)
}

#[test]
fn compute_and_render() {
    let mut h = ptr::null_mut();
    let strategy = CString::new("creation").unwrap();
    assert_eq!(unsafe { ghpq_compute(1, 1, 2, 1, strategy.as_ptr(), &mut h) }, GhpqStatus::Ok);
    assert_eq!(text(h), "z^2*w + 2*z*gamma");
    assert_eq!(unsafe { ghpq_poly_term_count(h) }, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ghpq_poly_to_latex(h, &mut s) }, GhpqStatus::Ok);
    assert_eq!(take_string(s), r"z^{2}w + 2\gamma z");
    assert_eq!(unsafe { ghpq_poly_to_json(h, &mut s) }, GhpqStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 2);

    let mut e = ptr::null_mut();
    let b = CString::new("gamma=-1").unwrap();
    assert_eq!(unsafe { ghpq_poly_subst(h, b.as_ptr(), &mut e) }, GhpqStatus::Ok);
    assert_eq!(text(e), "z^2*w - 2*z");
    unsafe {
        ghpq_poly_free(e);
        ghpq_poly_free(h);
    }
}

#[test]
fn strategies_agree_through_the_abi() {
    let mut reference = ptr::null_mut();
    assert_eq!(unsafe { ghpq_compute(2, 1, 5, 3, ptr::null(), &mut reference) }, GhpqStatus::Ok);
    for name in ["operational", "recurrence", "genfun", "hypergeom"] {
        let s = CString::new(name).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { ghpq_compute(2, 1, 5, 3, s.as_ptr(), &mut h) }, GhpqStatus::Ok);
        let mut eq = false;
        assert_eq!(unsafe { ghpq_poly_equal(reference, h, &mut eq) }, GhpqStatus::Ok);
        assert!(eq, "{name}");
        unsafe { ghpq_poly_free(h) };
    }
    unsafe { ghpq_poly_free(reference) };
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ghpq_compute(0, 0, 1, 1, ptr::null(), &mut h) }, GhpqStatus::InvalidParams);
    assert!(!last_error().is_empty());
    assert!(h.is_null());
    let bad = CString::new("z^-1").unwrap();
    assert_eq!(unsafe { ghpq_poly_parse(bad.as_ptr(), &mut h) }, GhpqStatus::ParseError);
    assert_eq!(unsafe { ghpq_poly_parse(ptr::null(), &mut h) }, GhpqStatus::InvalidArgument);
    assert_eq!(unsafe { ghpq_compute(1, 1, 1, 1, ptr::null(), ptr::null_mut()) }, GhpqStatus::InvalidArgument);
    let hyp = CString::new("hypergeom").unwrap();
    assert_eq!(unsafe { ghpq_compute(1, 0, 1, 1, hyp.as_ptr(), &mut h) }, GhpqStatus::Unsupported);
    assert_eq!(unsafe { ghpq_compute(1, 1, 1, 1, ptr::null(), &mut h) }, GhpqStatus::Ok);
    assert_eq!(last_error(), "");
    assert_eq!(unsafe { ghpq_poly_term_count(ptr::null()) }, 0);
    unsafe {
        ghpq_poly_free(h);
        ghpq_poly_free(ptr::null_mut());
        ghpq_string_free(ptr::null_mut());
    }
}

#[test]
fn heat_solve() {
    let c = CString::new("1").unwrap();
    let f = CString::new("z^2*w").unwrap();
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { ghpq_heat_solve(1, 1, c.as_ptr(), f.as_ptr(), &mut u) }, GhpqStatus::Ok);
    assert_eq!(text(u), "z^2*w + 2*z*t");
    unsafe { ghpq_poly_free(u) };
    let bad_c = CString::new("1/0").unwrap();
    assert_ne!(unsafe { ghpq_heat_solve(1, 1, bad_c.as_ptr(), f.as_ptr(), &mut u) }, GhpqStatus::Ok);
}

#[test]
fn verify_reports() {
    let tag = CString::new("PARAM_REC").unwrap();
    let pq = CString::new("1,1").unwrap();
    let printed = CString::new("printed").unwrap();
    let both = CString::new("both").unwrap();
    let mut json = ptr::null_mut();
    let status = unsafe { ghpq_verify(tag.as_ptr(), pq.as_ptr(), 2, 1, 10, printed.as_ptr(), &mut json) };
    assert_eq!(status, GhpqStatus::IdentityFailed);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["status"] == "Fail"));
    let status = unsafe { ghpq_verify(tag.as_ptr(), pq.as_ptr(), 2, 1, 10, both.as_ptr(), ptr::null_mut()) };
    assert_eq!(status, GhpqStatus::Ok);
    let unknown = CString::new("NOT_A_TAG").unwrap();
    let status = unsafe { ghpq_verify(unknown.as_ptr(), pq.as_ptr(), 2, 1, 10, both.as_ptr(), ptr::null_mut()) };
    assert_eq!(status, GhpqStatus::ParseError);
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/ghpq.h")
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct GhpqPoly GhpqPoly;",
        "GHPQ_STATUS_IDENTITY_FAILED = 5",
        "ghpq_compute(",
        "ghpq_poly_to_text(",
        "ghpq_poly_to_json(",
        "ghpq_heat_solve(",
        "ghpq_verify(",
        "ghpq_last_error_message(void)",
        "ghpq_poly_free(",
        "ghpq_string_free(",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ghpq.h"

int main(void) {
    GhpqPoly *h = NULL;
    if (ghpq_compute(1, 1, 2, 1, "explicit", &h) != GHPQ_STATUS_OK) return 1;
    char *s = NULL;
    if (ghpq_poly_to_text(h, &s) != GHPQ_STATUS_OK) return 2;
    int ok = strcmp(s, "z^2*w + 2*z*gamma") == 0;
    printf("%s\n", s);
    ghpq_string_free(s);
    ghpq_poly_free(h);
    if (ghpq_compute(0, 0, 1, 1, NULL, &h) != GHPQ_STATUS_INVALID_PARAMS) return 3;
    if (strlen(ghpq_last_error_message()) == 0) return 4;
    return ok ? 0 : 5;
}
"#;

// Compiles and runs a C client against the static library when a C
// compiler is on PATH.
#[test]
fn c_client_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libghpq_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = std::env::temp_dir().join(format!("ghpq-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "z^2*w + 2*z*gamma");
}
