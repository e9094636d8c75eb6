use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use rankfold_ffi::*;

fn last_error() -> String {
    let p = rf_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { rf_string_free(p) };
    s
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(rf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn rm_decode_round_trip() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { rf_rm_code_new(2, 0, &mut code) }, RfStatus::Ok);
    let (mut n, mut k, mut t) = (0, 0, 0);
    assert_eq!(unsafe { rf_rm_code_params(code, &mut n, &mut k, &mut t) }, RfStatus::Ok);
    assert_eq!((n, k, t), (4, 1, 1));

    // The all-ones matrix has rank 1, within the radius of RM(0, 2).
    let y = CString::new(r#"{"rows":4,"cols":4,"entries":["1","1","1","1","1","1","1","1","1","1","1","1","1","1","1","1"]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rf_rm_decode(code, y.as_ptr(), &mut out) }, RfStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { rf_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["error_rank"].as_u64().unwrap() <= 1);
    assert!(rf_last_error_message().is_null());

    let bad = CString::new("{").unwrap();
    assert_eq!(unsafe { rf_rm_decode(code, bad.as_ptr(), &mut out) }, RfStatus::InvalidJson);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    unsafe { rf_rm_code_free(code) };
}

#[test]
fn rm_rejects_bad_arguments() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { rf_rm_code_new(3, 5, &mut code) }, RfStatus::InvalidArgument);
    assert!(last_error().contains("order"));
    assert_eq!(unsafe { rf_rm_code_new(3, 1, ptr::null_mut()) }, RfStatus::NullPointer);
    assert_eq!(unsafe { rf_rm_decode(ptr::null(), ptr::null(), ptr::null_mut()) }, RfStatus::NullPointer);
}

#[test]
fn plotkin_corrects_a_rank_one_error() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { rf_plotkin_gabidulin_new(5, 4, 3, 2, 4, &mut code) }, RfStatus::Ok);
    let (mut side, mut dim, mut t) = (0, 0, 0);
    assert_eq!(unsafe { rf_plotkin_params(code, &mut side, &mut dim, &mut t) }, RfStatus::Ok);
    assert_eq!((side, dim, t), (8, 2 * 4 * (3 + 2), 1));

    let mut c = vec![0u64; side * side];
    assert_eq!(unsafe { rf_plotkin_random_codeword(code, 3, c.as_mut_ptr(), c.len()) }, RfStatus::Ok);
    let mut y = c.clone();
    y[side + 2] += 1;
    y[3 * side + 2] += 3;
    let mut decoded = vec![0u64; side * side];
    assert_eq!(unsafe { rf_plotkin_decode(code, y.as_ptr(), decoded.as_mut_ptr(), y.len()) }, RfStatus::Ok);
    assert_eq!(decoded, c);

    let mut short = vec![0u64; 3];
    assert_eq!(unsafe { rf_plotkin_decode(code, y.as_ptr(), short.as_mut_ptr(), short.len()) }, RfStatus::BufferTooSmall);
    unsafe { rf_plotkin_free(code) };
}

#[test]
fn plotkin_rejects_mismatched_parameters() {
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { rf_plotkin_gabidulin_new(5, 5, 3, 2, 4, &mut code) }, RfStatus::InvalidArgument);
    assert!(code.is_null());
}

#[test]
fn fold_probability_is_deterministic() {
    let mut a = RfFoldStats::default();
    let mut b = RfFoldStats::default();
    assert_eq!(unsafe { rf_fold_probability(5, 3, 1, 4, 200, 9, &mut a) }, RfStatus::Ok);
    assert_eq!(unsafe { rf_fold_probability(5, 3, 1, 4, 200, 9, &mut b) }, RfStatus::Ok);
    assert_eq!(a, b);
    assert_eq!(a.trials, 200);
    assert_eq!(a.square, 1);
    assert!(a.ci95_low <= a.rate && a.rate <= a.ci95_high);
}

#[test]
fn header_compiles_from_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/rankfold.h");
    assert!(header.exists(), "build.rs writes the header");
    let Ok(cc) = which("cc") else { return };
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include "rankfold.h"
#include <stdio.h>
int main(void) {
    RfFoldStats s;
    if (rf_fold_probability(5, 3, 1, 4, 10, 1, &s) != RF_STATUS_OK) return 1;
    RfPlotkin *p = NULL;
    if (rf_plotkin_gabidulin_new(5, 5, 3, 2, 4, &p) != RF_STATUS_INVALID_ARGUMENT) return 2;
    char *msg = rf_last_error_message();
    if (msg == NULL) return 3;
    rf_string_free(msg);
    printf("%s\n", rf_version());
    return 0;
}
"#,
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which(name: &str) -> Result<std::path::PathBuf, ()> {
    std::env::var_os("PATH")
        .and_then(|paths| std::env::split_paths(&paths).map(|p| p.join(name)).find(|p| p.is_file()))
        .ok_or(())
}
