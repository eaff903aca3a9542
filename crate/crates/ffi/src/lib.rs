//! C ABI for the reconstruction library: opaque handles, status codes, and
//! accessor functions so other languages can bind without knowing any Rust
//! types. The header `include/framerecon.h` is generated at build time.
//!
//! Conventions: every fallible call returns an [`FrStatus`]; results are
//! written through out-pointers. Handles are created by `*_new`/`fr_reconstruct`
//! and must be released with the matching `*_free`. All functions are
//! panic-safe: a caught panic maps to `FR_STATUS_NUMERIC`.

use std::ffi::CStr;
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::c_char;

use framerecon::{
    evaluate_expansion, make_frame, reconstruct, FrameFamily, FrameKind, Method,
    ReconstructionResult, SolverOptions,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside its domain (jitter bound, sizes, names).
    InvalidArgument = 2,
    /// A string argument was not valid UTF-8.
    Utf8 = 3,
    /// An index lay outside the handle's index set.
    OutOfRange = 4,
    /// The computation failed numerically (singular system, divergence).
    Numeric = 5,
}

/// Opaque handle to an exponential frame family.
pub struct FrFrame {
    inner: FrameFamily,
}

/// Opaque handle to a finished reconstruction (coefficients + diagnostics).
pub struct FrReconstruction {
    result: ReconstructionResult,
    eval_frame: FrameFamily,
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fr_status_message(status: FrStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        FrStatus::Ok => b"ok\0",
        FrStatus::NullPointer => b"null pointer argument\0",
        FrStatus::InvalidArgument => b"invalid argument\0",
        FrStatus::Utf8 => b"invalid utf-8 in string argument\0",
        FrStatus::OutOfRange => b"index out of range\0",
        FrStatus::Numeric => b"numerical failure\0",
    };
    msg.as_ptr() as *const c_char
}

fn guarded<F: FnOnce() -> FrStatus>(f: F) -> FrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => FrStatus::Numeric,
    }
}

/// Creates a jittered exponential family with `2*half_width + 1` members.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_frame_new_jittered(
    half_width: usize,
    delta: f64,
    seed: u64,
    out: *mut *mut FrFrame,
) -> FrStatus {
    if out.is_null() {
        return FrStatus::NullPointer;
    }
    guarded(|| match make_frame(FrameKind::JitteredFourier, half_width, delta, seed) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(FrFrame { inner }));
            FrStatus::Ok
        }
        Err(_) => FrStatus::InvalidArgument,
    })
}

/// Creates the harmonic (integer-frequency) family.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_frame_new_integer(
    half_width: usize,
    out: *mut *mut FrFrame,
) -> FrStatus {
    if out.is_null() {
        return FrStatus::NullPointer;
    }
    guarded(|| match make_frame(FrameKind::IntegerFourier, half_width, 0.0, 0) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(FrFrame { inner }));
            FrStatus::Ok
        }
        Err(_) => FrStatus::InvalidArgument,
    })
}

/// Releases a frame handle; a null pointer is a no-op.
///
/// # Safety
/// `frame` must have been returned by a `fr_frame_new_*` call and not freed.
#[no_mangle]
pub unsafe extern "C" fn fr_frame_free(frame: *mut FrFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Writes the frequency of member `j` (must satisfy `|j| <= half_width`).
///
/// # Safety
/// `frame` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fr_frame_frequency(
    frame: *const FrFrame,
    j: i64,
    out: *mut f64,
) -> FrStatus {
    if frame.is_null() || out.is_null() {
        return FrStatus::NullPointer;
    }
    let frame = &(*frame).inner;
    if !frame.index_set().contains(j) {
        return FrStatus::OutOfRange;
    }
    *out = frame.frequency(j);
    FrStatus::Ok
}

unsafe fn parse_str<'a>(ptr: *const c_char) -> Result<&'a str, FrStatus> {
    if ptr.is_null() {
        return Err(FrStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| FrStatus::Utf8)
}

/// Runs one reconstruction of a built-in target function.
///
/// * `method` — "new", "cc", "finite-section" or "fourier".
/// * `function` — "gaussian", "cospoly" or "bump6".
/// * `n`, `m` — reconstruction and sampling half-widths (`m` is ignored and
///   forced to `n` by the "fourier" method).
/// * `seed`, `delta` — jittered-frequency draw; `tol` — solver tolerance
///   (pass 0 for the default 1e-5).
///
/// # Safety
/// `method` and `function` must be NUL-terminated strings; `out` must point
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruct(
    method: *const c_char,
    function: *const c_char,
    n: usize,
    m: usize,
    seed: u64,
    delta: f64,
    tol: f64,
    out: *mut *mut FrReconstruction,
) -> FrStatus {
    if out.is_null() {
        return FrStatus::NullPointer;
    }
    let method = match parse_str(method) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let function = match parse_str(function) {
        Ok(s) => s,
        Err(status) => return status,
    };
    guarded(|| {
        let method: Method = match method.parse() {
            Ok(m) => m,
            Err(_) => return FrStatus::InvalidArgument,
        };
        let f = match framerecon::test_function(function) {
            Ok(f) => f,
            Err(_) => return FrStatus::InvalidArgument,
        };
        let frame = match method {
            Method::Fourier => make_frame(FrameKind::IntegerFourier, n, 0.0, seed),
            _ => make_frame(FrameKind::JitteredFourier, m, delta, seed),
        };
        let frame = match frame {
            Ok(frame) => frame,
            Err(_) => return FrStatus::InvalidArgument,
        };
        let opts = SolverOptions {
            tol: if tol > 0.0 { tol } else { framerecon::solvers::DEFAULT_TOL },
            ..SolverOptions::default()
        };
        match reconstruct(method, &f, &frame, n, m, &opts) {
            Ok(result) => {
                let eval_frame = match method {
                    Method::Cc => frame,
                    _ => make_frame(FrameKind::IntegerFourier, n, 0.0, 0)
                        .expect("harmonic family is always valid"),
                };
                *out = Box::into_raw(Box::new(FrReconstruction { result, eval_frame }));
                FrStatus::Ok
            }
            Err(framerecon::Error::ParamDomain(_)) | Err(framerecon::Error::IndexOutOfRange { .. }) => {
                FrStatus::InvalidArgument
            }
            Err(_) => FrStatus::Numeric,
        }
    })
}

/// Releases a reconstruction handle; a null pointer is a no-op.
///
/// # Safety
/// `rec` must have been returned by [`fr_reconstruct`] and not freed.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_free(rec: *mut FrReconstruction) {
    if !rec.is_null() {
        drop(Box::from_raw(rec));
    }
}

/// L2 reconstruction error under the normalized inner product (0 for a null
/// handle).
///
/// # Safety
/// `rec` must be a live reconstruction handle or null.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_l2_error(rec: *const FrReconstruction) -> f64 {
    if rec.is_null() {
        return 0.0;
    }
    (*rec).result.l2_error
}

/// Largest pointwise error on the evaluation grid.
///
/// # Safety
/// `rec` must be a live reconstruction handle or null.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_max_pointwise_error(
    rec: *const FrReconstruction,
) -> f64 {
    if rec.is_null() {
        return 0.0;
    }
    (*rec).result.max_pointwise_error
}

/// Two-norm condition number of the solved moment matrix.
///
/// # Safety
/// `rec` must be a live reconstruction handle or null.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_condition_number(
    rec: *const FrReconstruction,
) -> f64 {
    if rec.is_null() {
        return 0.0;
    }
    (*rec).result.condition_number
}

/// Iterations the conjugate-gradient solve took (0 for direct routes).
///
/// # Safety
/// `rec` must be a live reconstruction handle or null.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_iterations(rec: *const FrReconstruction) -> usize {
    if rec.is_null() {
        return 0;
    }
    (*rec).result.iterations
}

/// 1 when the iterative solve met its tolerance, 0 otherwise.
///
/// # Safety
/// `rec` must be a live reconstruction handle.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_converged(rec: *const FrReconstruction) -> i32 {
    if rec.is_null() {
        return 0;
    }
    (*rec).result.converged as i32
}

/// Half-width of the coefficient index set (`2*half_width + 1` coefficients).
///
/// # Safety
/// `rec` must be a live reconstruction handle.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_half_width(rec: *const FrReconstruction) -> usize {
    if rec.is_null() {
        return 0;
    }
    (*rec).result.coefficients.index_set().half_width()
}

/// Writes the complex coefficient at index `j`.
///
/// # Safety
/// `rec` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_coefficient(
    rec: *const FrReconstruction,
    j: i64,
    re: *mut f64,
    im: *mut f64,
) -> FrStatus {
    if rec.is_null() || re.is_null() || im.is_null() {
        return FrStatus::NullPointer;
    }
    let coef = &(*rec).result.coefficients;
    if !coef.index_set().contains(j) {
        return FrStatus::OutOfRange;
    }
    let v = coef.value(j);
    *re = v.re;
    *im = v.im;
    FrStatus::Ok
}

/// Evaluates the reconstructed expansion at `x` in `[-1, 1]`.
///
/// # Safety
/// `rec` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fr_reconstruction_evaluate(
    rec: *const FrReconstruction,
    x: f64,
    re: *mut f64,
    im: *mut f64,
) -> FrStatus {
    if rec.is_null() || re.is_null() || im.is_null() {
        return FrStatus::NullPointer;
    }
    if !(-1.0..=1.0).contains(&x) {
        return FrStatus::OutOfRange;
    }
    let rec = &*rec;
    guarded(|| {
        match evaluate_expansion(&rec.result.coefficients, &rec.eval_frame, &[x]) {
            Ok(values) => {
                *re = values[0].re;
                *im = values[0].im;
                FrStatus::Ok
            }
            Err(_) => FrStatus::Numeric,
        }
    })
}
