//! C ABI over `hullprobe`.
//!
//! Every function returns an [`HpStatus`]. Results go through out-pointers,
//! which are written only on `HP_STATUS_OK`. After a failure,
//! [`hp_last_error_message`] returns a description valid until the next
//! call on the same thread. Bodies are opaque handles released with
//! [`hp_body_free`]. Point sets are flat row-major `f64` arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hullprobe::epsnet;
use hullprobe::experiments;
use hullprobe::geometry::{BodyKind, BodySpec, ConvexBody};
use hullprobe::lp;
use hullprobe::rng::Stream;
use hullprobe::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    InvalidArgument = 1,
    Degenerate = 2,
    Range = 3,
    UnsupportedBody = 4,
    Numerical = 5,
    NoSolution = 6,
    Io = 7,
    Parse = 8,
    NullPointer = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpBodyKind {
    Cube = 0,
    Simplex = 1,
    CrossPolytope = 2,
    Ball = 3,
}

/// Opaque convex body.
pub struct HpBody {
    inner: ConvexBody,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HpEstimate {
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HpStatus {
    match e {
        Error::InvalidArgument(_) => HpStatus::InvalidArgument,
        Error::Degenerate(_) => HpStatus::Degenerate,
        Error::Range(_) => HpStatus::Range,
        Error::UnsupportedBody(_) => HpStatus::UnsupportedBody,
        Error::Numerical(_) => HpStatus::Numerical,
        Error::NoSolution(_) => HpStatus::NoSolution,
        Error::Io(_) => HpStatus::Io,
        Error::Parse(_) => HpStatus::Parse,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HpStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            HpStatus::NullPointer
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            HpStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn body<'a>(p: *const HpBody) -> Result<&'a ConvexBody, Fail> {
    p.as_ref().map(|b| &b.inner).ok_or(Fail::Null("body"))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn rows(p: *const f64, n: usize, d: usize, what: &'static str) -> Result<Vec<Vec<f64>>, Fail> {
    let len = n.checked_mul(d).ok_or_else(|| Error::Range("point array too large".into()))?;
    let flat = slice(p, len, what)?;
    Ok(flat.chunks(d.max(1)).take(n).map(<[f64]>::to_vec).collect())
}

fn write_handle(dst: &mut *mut HpBody, b: ConvexBody) {
    *dst = Box::into_raw(Box::new(HpBody { inner: b }));
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn hp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn hp_status_name(status: HpStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HpStatus::Ok => c"ok",
        HpStatus::InvalidArgument => c"invalid argument",
        HpStatus::Degenerate => c"degenerate input",
        HpStatus::Range => c"value out of range",
        HpStatus::UnsupportedBody => c"unsupported body",
        HpStatus::Numerical => c"numerical failure",
        HpStatus::NoSolution => c"no solution",
        HpStatus::Io => c"i/o error",
        HpStatus::Parse => c"parse error",
        HpStatus::NullPointer => c"null pointer",
        HpStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Catalog body of dimension `dim`; `scale` is the side (cube), radius
/// (ball, cross-polytope) or vertex scale (simplex).
///
/// # Safety
/// `out` must point to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn hp_body_new(kind: HpBodyKind, dim: usize, scale: f64, out: *mut *mut HpBody) -> HpStatus {
    guard(|| {
        let dst = self::out(out, "out")?;
        let kind = match kind {
            HpBodyKind::Cube => BodyKind::Cube,
            HpBodyKind::Simplex => BodyKind::CenteredSimplex,
            HpBodyKind::CrossPolytope => BodyKind::CrossPolytope,
            HpBodyKind::Ball => BodyKind::Ball,
        };
        write_handle(dst, ConvexBody::catalog(kind, dim, scale)?);
        Ok(())
    })
}

/// Convex polygon from `n` counter-clockwise vertices `xy[2i], xy[2i+1]`,
/// translated so its centroid is the origin.
///
/// # Safety
/// `xy` must hold `2n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_polygon(xy: *const f64, n: usize, out: *mut *mut HpBody) -> HpStatus {
    guard(|| {
        let dst = self::out(out, "out")?;
        let pts = rows(xy, n, 2, "xy")?;
        let verts = pts.iter().map(|p| [p[0], p[1]]).collect();
        write_handle(dst, ConvexBody::polygon(verts)?);
        Ok(())
    })
}

/// Body from a JSON specification such as `{"kind":"cube","dim":3,"scale":2}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_from_json(json: *const c_char, out: *mut *mut HpBody) -> HpStatus {
    guard(|| {
        let dst = self::out(out, "out")?;
        if json.is_null() {
            return Err(Fail::Null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Error::Parse(format!("body json is not UTF-8: {e}")))?;
        let spec: BodySpec = serde_json::from_str(text).map_err(Error::from)?;
        write_handle(dst, ConvexBody::from_spec(&spec)?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `body` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hp_body_free(body: *mut HpBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_dim(body: *const HpBody, out: *mut usize) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = self::body(body)?.dim();
        Ok(())
    })
}

/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_volume(body: *const HpBody, out: *mut f64) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = self::body(body)?.volume();
        Ok(())
    })
}

/// Support function `h(u)` for a unit vector `u` of length `dim`.
///
/// # Safety
/// `u` must hold `dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_support(body: *const HpBody, u: *const f64, dim: usize, out: *mut f64) -> HpStatus {
    guard(|| {
        let b = self::body(body)?;
        let u = slice(u, dim, "u")?;
        *self::out(out, "out")? = b.support_function(u)?;
        Ok(())
    })
}

/// # Safety
/// `body` must be a live handle; `p` must hold `dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_body_contains(
    body: *const HpBody,
    p: *const f64,
    dim: usize,
    tol: f64,
    out: *mut bool,
) -> HpStatus {
    guard(|| {
        let b = self::body(body)?;
        let p = slice(p, dim, "p")?;
        *self::out(out, "out")? = b.contains_point(p, tol)?;
        Ok(())
    })
}

/// `ε = (1-θ)^d / e`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_epsilon(d: usize, theta: f64, out: *mut f64) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::epsilon_lower_bound(d, theta)?;
        Ok(())
    })
}

/// Sample size `t` for constant `c`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_net_size(d: usize, theta: f64, c: f64, out: *mut u64) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::net_size(d, theta, c)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_theorem_constant_check(d: usize, theta: f64, delta: f64, c: f64, out: *mut bool) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::theorem_constant_check(d, theta, delta, c)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_lemma_constant_check(c: f64, epsilon: f64, vc_dim: u32, delta: f64, out: *mut bool) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::lemma_constant_check(c, epsilon, vc_dim, delta)?;
        Ok(())
    })
}

/// Smallest admissible constant for `(d, θ, δ)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_min_valid_c(d: usize, theta: f64, delta: f64, out: *mut f64) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::min_valid_c(d, theta, delta)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_failure_probability_bound(t: u64, epsilon: f64, vc_dim: u32, out: *mut f64) -> HpStatus {
    guard(|| {
        *self::out(out, "out")? = epsnet::failure_probability_bound(t, epsilon, vc_dim)?;
        Ok(())
    })
}

/// One containment trial on stream `(seed, index)`. On failure the witness
/// cap `{<normal, x> >= offset}` is written when both buffers are non-null;
/// `normal` must then hold `dim` doubles.
///
/// # Safety
/// Pointers must be valid as described above.
#[no_mangle]
pub unsafe extern "C" fn hp_run_trial(
    body: *const HpBody,
    theta: f64,
    t: usize,
    seed: u64,
    index: u64,
    success: *mut bool,
    witness_normal: *mut f64,
    witness_offset: *mut f64,
) -> HpStatus {
    guard(|| {
        let b = self::body(body)?;
        let flag = self::out(success, "success")?;
        let mut stream = Stream::new(seed, index);
        let outcome = experiments::run_trial(b, theta, t, &mut stream)?;
        *flag = outcome.success;
        if let (Some(cap), false, false) = (&outcome.witness_cap, witness_normal.is_null(), witness_offset.is_null()) {
            std::slice::from_raw_parts_mut(witness_normal, b.dim()).copy_from_slice(cap.normal());
            *witness_offset = cap.offset();
        }
        Ok(())
    })
}

/// Success rate over `n_trials` independent trials with a 99% Wilson interval.
///
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hp_estimate_success(
    body: *const HpBody,
    theta: f64,
    t: usize,
    n_trials: u64,
    seed: u64,
    out: *mut HpEstimate,
) -> HpStatus {
    guard(|| {
        let b = self::body(body)?;
        let dst = self::out(out, "out")?;
        let e = experiments::estimate_success_probability(b, theta, t, n_trials, seed)?;
        *dst = HpEstimate {
            trials: e.trials,
            successes: e.successes,
            p_hat: e.p_hat,
            wilson_low: e.wilson_low,
            wilson_high: e.wilson_high,
        };
        Ok(())
    })
}

/// Decides whether `q` lies in the hull of `n` points of dimension `d`.
/// When inside and `weights` is non-null, `n` convex weights are written.
/// When outside and both separator buffers are non-null, a halfspace
/// `{<normal, x> >= offset}` holding `q` strictly and no input point is written.
///
/// # Safety
/// `points` must hold `n*d` doubles, `q` `d` doubles, `weights` `n`, `normal` `d`.
#[no_mangle]
pub unsafe extern "C" fn hp_point_in_hull(
    points: *const f64,
    n: usize,
    d: usize,
    q: *const f64,
    tol: f64,
    inside: *mut bool,
    weights: *mut f64,
    normal: *mut f64,
    offset: *mut f64,
) -> HpStatus {
    guard(|| {
        let flag = self::out(inside, "inside")?;
        let pts = rows(points, n, d, "points")?;
        let q = slice(q, d, "q")?;
        let cert = lp::point_in_hull(&pts, q, tol)?;
        *flag = cert.is_inside();
        if cert.is_inside() && !weights.is_null() {
            std::slice::from_raw_parts_mut(weights, n).copy_from_slice(&cert.weights);
        }
        if let (Some(h), false, false) = (&cert.separator, normal.is_null(), offset.is_null()) {
            std::slice::from_raw_parts_mut(normal, d).copy_from_slice(h.normal());
            *offset = h.offset();
        }
        Ok(())
    })
}
