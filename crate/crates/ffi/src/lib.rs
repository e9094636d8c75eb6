//! C ABI over `rankfold`.
//!
//! Every fallible call returns an [`RfStatus`]; on failure the message is
//! available from [`rf_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their `*_free` function. Strings returned
//! by the library are released with [`rf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rankfold::exactfield::{MultiquadraticField, Rationals};
use rankfold::linalg::Matrix;
use rankfold::plotkin::{fold_probability_experiment, GabidulinPlotkin};
use rankfold::rankrm::RMCode;
use rankfold::rng::trial_rng;
use serde_json::{json, Value};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    InvalidJson = 4,
    BufferTooSmall = 5,
    /// The decoder detected a failure and returned no codeword.
    DecodeFailure = 6,
    Panic = 7,
}

/// Reed–Muller code over the multiquadratic tower of the first m primes.
pub struct RfRmCode(RMCode);

/// Plotkin code built from two Gabidulin codes over GF(q^m).
pub struct RfPlotkin(GabidulinPlotkin);

/// Result of a fold Monte Carlo run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RfFoldStats {
    pub trials: u64,
    pub drops: u64,
    pub rate: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    /// q^(t−m−1) for square a, q^(2t−2m−2) otherwise.
    pub predicted_bound: f64,
    /// 1 when a is a square mod q.
    pub square: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: RfStatus, msg: impl Into<String>) -> RfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> RfStatus) -> RfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RfStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RfStatus> {
    if s.is_null() {
        return Err(fail(RfStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(RfStatus::InvalidUtf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NULs").into_raw()
}

/// Library version as a static NUL-terminated string. Do not free it.
#[no_mangle]
pub extern "C" fn rf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message on this thread, or NULL if the last call
/// succeeded. Release with [`rf_string_free`].
#[no_mangle]
pub extern "C" fn rf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates RM(r, m) over Q(√2, √3, …, √p_m). Requires m ≤ 8 and −1 ≤ r ≤ m.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rf_rm_code_new(m: u32, r: i32, out: *mut *mut RfRmCode) -> RfStatus {
    guard(|| {
        if out.is_null() {
            return fail(RfStatus::NullPointer, "null output pointer");
        }
        if m > 8 {
            return fail(RfStatus::InvalidArgument, format!("m = {m} above 8"));
        }
        match RMCode::new(MultiquadraticField::first_primes(m as usize), r) {
            Ok(code) => {
                *out = Box::into_raw(Box::new(RfRmCode(code)));
                RfStatus::Ok
            }
            Err(e) => fail(RfStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Writes the block length n = 2^m, the dimension and the decoding radius.
///
/// # Safety
/// `code` must be a live handle; the output pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn rf_rm_code_params(code: *const RfRmCode, n: *mut usize, dimension: *mut usize, radius: *mut usize) -> RfStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(RfStatus::NullPointer, "null code");
        };
        for (p, v) in [(n, code.0.n()), (dimension, code.0.dimension()), (radius, code.0.radius())] {
            if !p.is_null() {
                *p = v;
            }
        }
        RfStatus::Ok
    })
}

/// Decodes an n×n rational matrix given as JSON
/// `{"rows": n, "cols": n, "entries": ["p/q", ...]}` (row-major). On success
/// `*out_json` receives `{"codeword": ..., "error": ..., "error_rank": k}`;
/// release it with [`rf_string_free`]. A detected decoding failure returns
/// [`RfStatus::DecodeFailure`] and leaves `*out_json` NULL.
///
/// # Safety
/// `code` must be a live handle, `received_json` a NUL-terminated string and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rf_rm_decode(code: *const RfRmCode, received_json: *const c_char, out_json: *mut *mut c_char) -> RfStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out_json.is_null()) else {
            return fail(RfStatus::NullPointer, "null code or output pointer");
        };
        *out_json = ptr::null_mut();
        let text = match read_str(received_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let value: Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(RfStatus::InvalidJson, e.to_string()),
        };
        let y = match Matrix::from_json(&Rationals, &value) {
            Ok(y) => y,
            Err(e) => return fail(RfStatus::InvalidJson, e.to_string()),
        };
        let report = code.0.decode(&y);
        match (report.codeword, report.error) {
            (Ok(c), Some(e)) => {
                let out = json!({ "codeword": c.to_json(), "error_rank": e.rank(), "error": e.to_json() });
                *out_json = into_c_string(out.to_string());
                RfStatus::Ok
            }
            (Err(e), _) => fail(RfStatus::DecodeFailure, e.to_string()),
            (Ok(_), None) => fail(RfStatus::Panic, "decoder returned no error matrix"),
        }
    })
}

/// # Safety
/// `code` must be NULL or a handle from [`rf_rm_code_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_rm_code_free(code: *mut RfRmCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Creates C ⋄ₐ D from Gabidulin codes of dimensions k1 ≥ k2 over GF(q^m),
/// with m = 2·k1 − k2. Codewords are 2m×2m matrices over GF(q).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rf_plotkin_gabidulin_new(q: u64, m: usize, k1: usize, k2: usize, a: u64, out: *mut *mut RfPlotkin) -> RfStatus {
    guard(|| {
        if out.is_null() {
            return fail(RfStatus::NullPointer, "null output pointer");
        }
        match GabidulinPlotkin::new(q, m, k1, k2, a) {
            Ok(code) => {
                *out = Box::into_raw(Box::new(RfPlotkin(code)));
                RfStatus::Ok
            }
            Err(e) => fail(RfStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Writes the side length 2m, the dimension over GF(q) and the radius.
///
/// # Safety
/// `code` must be a live handle; the output pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn rf_plotkin_params(code: *const RfPlotkin, side: *mut usize, dimension: *mut usize, radius: *mut usize) -> RfStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(RfStatus::NullPointer, "null code");
        };
        for (p, v) in [(side, code.0.code.shape().0), (dimension, code.0.code.dimension()), (radius, code.0.radius())] {
            if !p.is_null() {
                *p = v;
            }
        }
        RfStatus::Ok
    })
}

fn side_check(code: &RfPlotkin, len: usize) -> Result<usize, RfStatus> {
    let side = code.0.code.shape().0;
    if len != side * side {
        return Err(fail(RfStatus::BufferTooSmall, format!("buffer holds {len} entries, need {}", side * side)));
    }
    Ok(side)
}

/// Writes a pseudo-random codeword, row-major, into `out[0..len]`, where
/// `len` must equal (2m)². The same seed gives the same codeword.
///
/// # Safety
/// `code` must be a live handle and `out` must point to `len` writable u64s.
#[no_mangle]
pub unsafe extern "C" fn rf_plotkin_random_codeword(code: *const RfPlotkin, seed: u64, out: *mut u64, len: usize) -> RfStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out.is_null()) else {
            return fail(RfStatus::NullPointer, "null code or buffer");
        };
        if let Err(status) = side_check(code, len) {
            return status;
        }
        let c = code.0.code.random_codeword(&mut trial_rng(seed, 0));
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(c.entries());
        RfStatus::Ok
    })
}

/// Decodes the row-major (2m)×(2m) matrix `received` over GF(q) and writes the
/// codeword into `codeword_out`. Entries are reduced mod q. A detected
/// failure returns [`RfStatus::DecodeFailure`] and leaves the output untouched.
///
/// # Safety
/// `code` must be a live handle; `received` and `codeword_out` must each point
/// to `len` u64s, the latter writable. They may alias.
#[no_mangle]
pub unsafe extern "C" fn rf_plotkin_decode(code: *const RfPlotkin, received: *const u64, codeword_out: *mut u64, len: usize) -> RfStatus {
    guard(|| {
        let (Some(code), false, false) = (code.as_ref(), received.is_null(), codeword_out.is_null()) else {
            return fail(RfStatus::NullPointer, "null code or buffer");
        };
        let side = match side_check(code, len) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let f = code.0.code.field();
        let q = f.p();
        let data: Vec<u64> = std::slice::from_raw_parts(received, len).iter().map(|x| x % q).collect();
        let y = Matrix::new(*f, side, side, data).expect("length checked");
        match code.0.code.decode(&y) {
            Ok(d) => {
                std::slice::from_raw_parts_mut(codeword_out, len).copy_from_slice(d.codeword.entries());
                RfStatus::Ok
            }
            Err(e) => fail(RfStatus::DecodeFailure, e.to_string()),
        }
    })
}

/// # Safety
/// `code` must be NULL or a handle from [`rf_plotkin_gabidulin_new`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn rf_plotkin_free(code: *mut RfPlotkin) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Estimates how often folding a random rank-t error in GF(q)^{2m×2m} drops
/// its rank, over `trials` seeded trials.
///
/// # Safety
/// `out` must be a valid pointer to a writable [`RfFoldStats`].
#[no_mangle]
pub unsafe extern "C" fn rf_fold_probability(q: u64, m: usize, t: usize, a: u64, trials: u64, seed: u64, out: *mut RfFoldStats) -> RfStatus {
    guard(|| {
        if out.is_null() {
            return fail(RfStatus::NullPointer, "null output pointer");
        }
        match fold_probability_experiment(q, m, t, a, trials, seed) {
            Ok(s) => {
                *out = RfFoldStats {
                    trials: s.trials,
                    drops: s.drops,
                    rate: s.rate(),
                    ci95_low: s.ci95.0,
                    ci95_high: s.ci95.1,
                    predicted_bound: s.predicted_bound,
                    square: i32::from(s.square),
                };
                RfStatus::Ok
            }
            Err(e) => fail(RfStatus::InvalidArgument, e.to_string()),
        }
    })
}
