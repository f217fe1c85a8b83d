//! C ABI for the rectilens library: opaque space handles, status codes,
//! and JSON-string results for the composite pipelines.
//!
//! Conventions:
//!
//! * every function that can fail returns an [`RlStatus`]; on failure a
//!   thread-local message is retrievable via [`rl_last_error`];
//! * spaces are opaque `RlSpace` handles, freed with [`rl_space_free`];
//! * strings returned by the library are NUL-terminated, UTF-8, owned by
//!   the library, and freed with [`rl_string_free`].

use libc::{c_char, c_double, c_ulonglong};
use rectilens::besipart::{extract_partitions, verify_family};
use rectilens::blowup::{classify, ClassifyParams, LadderSpec, Thresholds};
use rectilens::covering::greedy_net;
use rectilens::error::Error;
use rectilens::generators::CorpusSpec;
use rectilens::quasipath::quasi_path;
use rectilens::MeasuredSpace;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RlStatus {
    match err.exit_code() {
        2 => RlStatus::Domain,
        3 => RlStatus::Refused,
        _ => RlStatus::Internal,
    }
}

/// Status codes mirroring the library error taxonomy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    /// Invalid input (shape, domain, parse, unsupported representation).
    Domain = 2,
    /// A stated precondition does not hold; the operation refused to run.
    Refused = 3,
    /// Internal failure (solver, I/O).
    Internal = 1,
    /// A pointer argument was NULL.
    NullPointer = 4,
}

/// Corpus kinds accepted by [`rl_space_generate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlCorpusKind {
    Segment = 0,
    Circle = 1,
    LipschitzGraph = 2,
    Spiral = 3,
    FourCornerCantor = 4,
}

/// Opaque handle to a measured metric space.
pub struct RlSpace {
    inner: MeasuredSpace,
}

/// Last error message for this thread, or NULL when the last call
/// succeeded. The pointer is owned by the library and valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Free a string returned by the library. NULL is accepted and ignored.
///
/// # Safety
/// `s` must be a pointer previously returned by a `rl_*_json` function
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Load a space from a CSV or JSON file (dispatch on the extension).
/// Returns NULL on failure; see [`rl_last_error`].
///
/// # Safety
/// `path` must be a NUL-terminated string valid for the duration of the
/// call.
#[no_mangle]
pub unsafe extern "C" fn rl_space_load(path: *const c_char) -> *mut RlSpace {
    if path.is_null() {
        set_error("path is NULL".into());
        return ptr::null_mut();
    }
    let path = match CStr::from_ptr(path).to_str() {
        Ok(s) => PathBuf::from(s),
        Err(_) => {
            set_error("path is not valid UTF-8".into());
            return ptr::null_mut();
        }
    };
    match rectilens::io::load_cloud(&path) {
        Ok(inner) => Box::into_raw(Box::new(RlSpace { inner })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Build a space from a full distance matrix (row-major `n x n`) and a
/// weight vector of length `n`. `triangle_tol < 0` selects the default
/// tolerance. Returns NULL on failure.
///
/// # Safety
/// `matrix` must point to `n * n` doubles and `weights` to `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn rl_space_from_matrix(
    matrix: *const c_double,
    weights: *const c_double,
    n: c_ulonglong,
    triangle_tol: c_double,
) -> *mut RlSpace {
    if matrix.is_null() || weights.is_null() {
        set_error("matrix or weights is NULL".into());
        return ptr::null_mut();
    }
    let n = n as usize;
    let flat = std::slice::from_raw_parts(matrix, n * n);
    let w = std::slice::from_raw_parts(weights, n).to_vec();
    let rows: Vec<Vec<f64>> = (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
    let tol = if triangle_tol < 0.0 { None } else { Some(triangle_tol) };
    let space = match rectilens::FiniteMetricSpace::from_matrix(rows, tol) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return ptr::null_mut();
        }
    };
    match MeasuredSpace::new(space, w) {
        Ok(inner) => Box::into_raw(Box::new(RlSpace { inner })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Generate a reference corpus. `m` is the sample count for curve kinds,
/// `depth` the Cantor depth, `param` the slope bound (graph) or decay
/// (spiral). Returns NULL on failure.
#[no_mangle]
pub extern "C" fn rl_space_generate(
    kind: RlCorpusKind,
    m: c_ulonglong,
    depth: u32,
    param: c_double,
    seed: c_ulonglong,
) -> *mut RlSpace {
    let spec = match kind {
        RlCorpusKind::Segment => CorpusSpec::Segment { m: m as usize },
        RlCorpusKind::Circle => CorpusSpec::Circle { m: m as usize },
        RlCorpusKind::LipschitzGraph => {
            CorpusSpec::LipschitzGraph { m: m as usize, l: param, seed }
        }
        RlCorpusKind::Spiral => CorpusSpec::Spiral { m: m as usize, decay: param },
        RlCorpusKind::FourCornerCantor => CorpusSpec::FourCornerCantor { depth },
    };
    match spec.generate() {
        Ok(inner) => Box::into_raw(Box::new(RlSpace { inner })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Free a space handle. NULL is accepted and ignored.
///
/// # Safety
/// `space` must be a pointer previously returned by a constructor and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rl_space_free(space: *mut RlSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of points.
///
/// # Safety
/// `space` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_space_len(space: *const RlSpace) -> c_ulonglong {
    space.as_ref().map_or(0, |s| s.inner.len() as c_ulonglong)
}

/// Total mass.
///
/// # Safety
/// `space` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rl_space_total_mass(space: *const RlSpace) -> c_double {
    space.as_ref().map_or(f64::NAN, |s| s.inner.total_mass())
}

fn json_out(value: serde_json::Value, out: *mut *mut c_char) -> RlStatus {
    let text = value.to_string();
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RlStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL".into());
            RlStatus::Internal
        }
    }
}

/// Quasi-path certificate between points `a` and `b`, as a JSON string
/// (`{"certificate": "path" | "split", ...}`). The caller frees `*out`
/// with [`rl_string_free`].
///
/// # Safety
/// `space` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_quasi_path_json(
    space: *const RlSpace,
    a: c_ulonglong,
    b: c_ulonglong,
    delta: c_double,
    locality: c_double,
    out: *mut *mut c_char,
) -> RlStatus {
    let Some(s) = space.as_ref() else {
        set_error("space is NULL".into());
        return RlStatus::NullPointer;
    };
    if out.is_null() {
        set_error("out is NULL".into());
        return RlStatus::NullPointer;
    }
    match quasi_path(&s.inner, a as usize, b as usize, delta, locality) {
        Ok(cert) => json_out(serde_json::to_value(&cert).unwrap(), out),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Extract a Besicovitch partition family and verify it; the result JSON
/// carries the partition count, verification flags and gap list. `rhat`
/// at or below 0 selects the default (a quarter of the seed-net scale).
/// The caller frees `*out` with [`rl_string_free`].
///
/// # Safety
/// `space` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_besipart_json(
    space: *const RlSpace,
    delta: c_double,
    locality: c_double,
    rhat: c_double,
    out: *mut *mut c_char,
) -> RlStatus {
    let Some(s) = space.as_ref() else {
        set_error("space is NULL".into());
        return RlStatus::NullPointer;
    };
    if out.is_null() {
        set_error("out is NULL".into());
        return RlStatus::NullPointer;
    }
    let m = &s.inner;
    let diam = m.space().full_diameter();
    let bound = delta * diam / (3.0 * (2.0 * locality + 1.0));
    let rhat = if rhat > 0.0 { rhat } else { bound / 4.0 };
    if rhat > bound {
        let e = Error::Refused(format!(
            "rhat = {rhat} exceeds delta * diam / (3(2R+1)) = {bound}"
        ));
        set_error(e.to_string());
        return status_of(&e);
    }
    let run = || -> rectilens::Result<serde_json::Value> {
        let seeds = greedy_net(m, bound)?;
        let family = extract_partitions(m, &seeds, delta, locality, rhat)?;
        let verification = verify_family(m, &family, delta, locality);
        Ok(serde_json::json!({
            "partitions": family.partitions.len(),
            "omegas": family.partitions.iter().map(|p| p.omega).collect::<Vec<_>>(),
            "verification": serde_json::to_value(&verification).unwrap(),
        }))
    };
    match run() {
        Ok(v) => json_out(v, out),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Classify every support point; the result JSON carries the ladder, the
/// per-point labels and the aggregate fractions. `r0` at or below 0
/// selects the default ladder top (diameter / 4). The caller frees
/// `*out` with [`rl_string_free`].
///
/// # Safety
/// `space` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_classify_json(
    space: *const RlSpace,
    delta: c_double,
    locality: c_double,
    r0: c_double,
    lambda: c_double,
    out: *mut *mut c_char,
) -> RlStatus {
    let Some(s) = space.as_ref() else {
        set_error("space is NULL".into());
        return RlStatus::NullPointer;
    };
    if out.is_null() {
        set_error("out is NULL".into());
        return RlStatus::NullPointer;
    }
    let params = ClassifyParams {
        delta,
        locality,
        ladder: LadderSpec { r0: if r0 > 0.0 { Some(r0) } else { None }, lambda },
        k_mult: None,
        flatness_subsample: 5,
        thresholds: Thresholds::default(),
    };
    match classify(&s.inner, &params) {
        Ok(verdict) => json_out(
            serde_json::json!({
                "ladder": verdict.ladder,
                "labels": serde_json::to_value(&verdict.labels).unwrap(),
                "fractions": serde_json::to_value(verdict.fractions).unwrap(),
            }),
            out,
        ),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}
