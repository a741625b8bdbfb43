//! C interface to `autoconvex`.
//!
//! Objects are opaque handles created by `ac_*_new` / `ac_*_from_json` and
//! released with the matching `ac_*_free`. Every fallible call returns an
//! [`AcStatus`]; on failure `ac_last_error()` describes what went wrong on
//! the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use autoconvex::faces_geom::{check_intersection_theorem, facial_dimension, AffineSubspace, VPolytope};
use autoconvex::lyap::{convexity_defect, extreme_solutions, range_bruteforce, DiscreteVectorMeasure};
use autoconvex::matcore::{ComplexMatrix, C64};
use autoconvex::numrange::{
    attainment_check, boundary_polygon, certify_convexity, sample_range, support_point, BoundarySupportCurve,
    RangeMode,
};
use autoconvex::spectral_faces::{majorizes, pinching_sequence, qk_face_report, WeightVector};
use autoconvex::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInput = 3,
    ShapeMismatch = 4,
    NotHermitian = 5,
    NoConvergence = 6,
    Geometry = 7,
    NotMajorized = 8,
    NotInSet = 9,
    TooLarge = 10,
    Infeasible = 11,
    BufferTooSmall = 12,
    Panic = 99,
}

impl From<&Error> for AcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ShapeMismatch(_) | Error::LengthMismatch { .. } => AcStatus::ShapeMismatch,
            Error::NotHermitian { .. } | Error::NonRealWeights(_) => AcStatus::NotHermitian,
            Error::NoConvergence { .. } => AcStatus::NoConvergence,
            Error::BadRank { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DegeneratePinch(_)
            | Error::InvalidArgument(_)
            | Error::TooFewPoints(_)
            | Error::Unsorted => AcStatus::InvalidArgument,
            Error::NotInPolytope | Error::Singleton | Error::EmptyIntersection | Error::MissingWitness(_) => {
                AcStatus::Geometry
            }
            Error::NotMajorized => AcStatus::NotMajorized,
            Error::NotInQk(_) | Error::NotInK(_) => AcStatus::NotInSet,
            Error::TooLarge(_) | Error::TooManyAtoms { .. } => AcStatus::TooLarge,
            Error::Infeasible => AcStatus::Infeasible,
            Error::InvalidInput(_) | Error::Io(_) => AcStatus::InvalidInput,
        }
    }
}

pub struct AcMatrix(ComplexMatrix);
pub struct AcCurve(BoundarySupportCurve);
pub struct AcPolytope(VPolytope);
pub struct AcSubspace(AffineSubspace);
pub struct AcMeasure(DiscreteVectorMeasure);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AcSupportPoint {
    pub theta: f64,
    pub h: f64,
    pub x: f64,
    pub y: f64,
    pub flat: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AcRegionReport {
    pub n_samples: usize,
    pub n_outside: usize,
    pub max_violation: f64,
    pub n_midpoints: usize,
    pub midpoints_outside: usize,
    pub midpoint_defect: f64,
    pub passed: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AcPinch {
    pub i: usize,
    pub j: usize,
    pub lambda: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AcQkReport {
    pub extreme: bool,
    pub face_dim: usize,
    pub rank_p: usize,
    pub rank_r: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AcTheoremSummary {
    pub n_faces: usize,
    pub n_pass: usize,
    pub n_fail: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AcStatus::Panic
        }
    }
}

struct Fail(AcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(AcStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(AcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(AcStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn ac_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- matrices

/// Builds an `n×n` matrix from row-major real and imaginary parts. `im`
/// may be NULL for a real matrix.
///
/// # Safety
/// `re` (and `im` if non-null) must point to `n*n` doubles.
#[no_mangle]
pub unsafe extern "C" fn ac_matrix_new(n: usize, re: *const f64, im: *const f64, out_m: *mut *mut AcMatrix) -> AcStatus {
    guard(|| {
        let dst = out(out_m, "out")?;
        if n == 0 {
            return Err(Fail(AcStatus::InvalidArgument, "n must be positive".into()));
        }
        let re = slice(re, n * n, "re")?;
        let im = if im.is_null() { None } else { Some(slice(im, n * n, "im")?) };
        let rows = (0..n)
            .map(|i| (0..n).map(|j| C64::new(re[i * n + j], im.map_or(0.0, |v| v[i * n + j]))).collect())
            .collect();
        *dst = boxed(AcMatrix(ComplexMatrix::from_rows(rows)?));
        Ok(())
    })
}

/// Parses `{"n": .., "re": [[..]], "im": [[..]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ac_matrix_from_json(json: *const c_char, out_m: *mut *mut AcMatrix) -> AcStatus {
    guard(|| {
        let dst = out(out_m, "out")?;
        *dst = boxed(AcMatrix(ComplexMatrix::from_json_str(c_str(json, "json")?)?));
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ac_matrix_free(m: *mut AcMatrix) {
    free(m)
}

/// Dimension of the matrix, 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_matrix_dim(m: *const AcMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

// ---- numerical ranges

/// Range selector: `c == NULL` means `W_k`, otherwise `W_c` with the `n`
/// weights in `c` (any order) and `k` ignored.
unsafe fn mode(k: usize, c: *const f64, n: usize) -> Result<RangeMode, Fail> {
    if c.is_null() {
        Ok(RangeMode::K(k))
    } else {
        Ok(RangeMode::C(WeightVector::from_unsorted(slice(c, n, "c")?.to_vec())?))
    }
}

/// Support value and support point at angle `theta`.
///
/// # Safety
/// `m` must be a live handle; `c` NULL or `dim(m)` doubles.
#[no_mangle]
pub unsafe extern "C" fn ac_support_point(
    m: *const AcMatrix,
    k: usize,
    c: *const f64,
    theta: f64,
    out_p: *mut AcSupportPoint,
) -> AcStatus {
    guard(|| {
        let b = &deref(m, "matrix")?.0;
        let dst = out(out_p, "out")?;
        let sp = support_point(b, &mode(k, c, b.n())?, theta)?;
        *dst = AcSupportPoint { theta: sp.theta, h: sp.h, x: sp.z[0], y: sp.z[1], flat: sp.flat };
        Ok(())
    })
}

/// Support data on `angles` equally spaced angles.
///
/// # Safety
/// As for [`ac_support_point`].
#[no_mangle]
pub unsafe extern "C" fn ac_boundary(
    m: *const AcMatrix,
    k: usize,
    c: *const f64,
    angles: usize,
    out_c: *mut *mut AcCurve,
) -> AcStatus {
    guard(|| {
        let b = &deref(m, "matrix")?.0;
        let dst = out(out_c, "out")?;
        *dst = boxed(AcCurve(boundary_polygon(b, &mode(k, c, b.n())?, angles)?));
        Ok(())
    })
}

/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_free(c: *mut AcCurve) {
    free(c)
}

/// Number of angles, 0 for NULL.
///
/// # Safety
/// `c` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_len(c: *const AcCurve) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_get(c: *const AcCurve, index: usize, out_p: *mut AcSupportPoint) -> AcStatus {
    guard(|| {
        let curve = &deref(c, "curve")?.0;
        let dst = out(out_p, "out")?;
        let row = curve
            .rows()
            .nth(index)
            .ok_or_else(|| Error::IndexOutOfRange { index, len: curve.len() })?;
        *dst = AcSupportPoint { theta: row.theta, h: row.h, x: row.x, y: row.y, flat: row.flat };
        Ok(())
    })
}

/// Recomputes every stored witness; `*ok` is false if any fails.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_curve_attainment(c: *const AcCurve, ok: *mut bool) -> AcStatus {
    guard(|| {
        let curve = &deref(c, "curve")?.0;
        *out(ok, "ok")? = attainment_check(curve)?;
        Ok(())
    })
}

/// Writes `n_samples` points of the range as `x0, y0, x1, y1, …` into
/// `xy` (length `2*n_samples`).
///
/// # Safety
/// `m` live; `c` NULL or `dim(m)` doubles; `xy` room for `2*n_samples`.
#[no_mangle]
pub unsafe extern "C" fn ac_sample_range(
    m: *const AcMatrix,
    k: usize,
    c: *const f64,
    n_samples: usize,
    seed: u64,
    xy: *mut f64,
) -> AcStatus {
    guard(|| {
        let b = &deref(m, "matrix")?.0;
        if n_samples > 0 && xy.is_null() {
            return Err(null("xy"));
        }
        let pts = sample_range(b, &mode(k, c, b.n())?, n_samples, seed)?;
        for (i, p) in pts.iter().enumerate() {
            *xy.add(2 * i) = p[0];
            *xy.add(2 * i + 1) = p[1];
        }
        Ok(())
    })
}

/// Checks interleaved sample points against the curve's support polygon.
///
/// # Safety
/// `c` live; `xy` holds `2*n_points` doubles.
#[no_mangle]
pub unsafe extern "C" fn ac_certify(
    c: *const AcCurve,
    xy: *const f64,
    n_points: usize,
    tol: f64,
    out_r: *mut AcRegionReport,
) -> AcStatus {
    guard(|| {
        let curve = &deref(c, "curve")?.0;
        let dst = out(out_r, "out")?;
        if !(tol >= 0.0) {
            return Err(Fail(AcStatus::InvalidArgument, "tol must be non-negative".into()));
        }
        let flat = slice(xy, 2 * n_points, "xy")?;
        let pts: Vec<[f64; 2]> = flat.chunks_exact(2).map(|p| [p[0], p[1]]).collect();
        let r = certify_convexity(&pts, curve, tol);
        *dst = AcRegionReport {
            n_samples: r.n_samples,
            n_outside: r.n_outside,
            max_violation: r.max_violation,
            n_midpoints: r.n_midpoints,
            midpoints_outside: r.midpoints_outside,
            midpoint_defect: r.midpoint_defect,
            passed: r.passed(),
        };
        Ok(())
    })
}

// ---- majorization and matrix faces

/// `*result` is whether `b ≺ c`; both sorted non-increasing, length `n`.
///
/// # Safety
/// `b` and `c` hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn ac_majorizes(b: *const f64, c: *const f64, n: usize, result: *mut bool) -> AcStatus {
    guard(|| {
        let r = majorizes(slice(b, n, "b")?, slice(c, n, "c")?)?;
        *out(result, "result")? = r;
        Ok(())
    })
}

/// Pinchings taking `c` to `b`. Writes at most `cap` steps and the true
/// count to `*len`; returns `BufferTooSmall` if `cap` is short.
///
/// # Safety
/// `b`, `c` hold `n` doubles; `steps` room for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn ac_pinching_sequence(
    c: *const f64,
    b: *const f64,
    n: usize,
    steps: *mut AcPinch,
    cap: usize,
    len: *mut usize,
) -> AcStatus {
    guard(|| {
        let seq = pinching_sequence(slice(c, n, "c")?, slice(b, n, "b")?)?;
        *out(len, "len")? = seq.len();
        if seq.len() > cap {
            return Err(Fail(AcStatus::BufferTooSmall, format!("need {} steps, room for {cap}", seq.len())));
        }
        if !seq.is_empty() && steps.is_null() {
            return Err(null("steps"));
        }
        for (i, s) in seq.iter().enumerate() {
            *steps.add(i) = AcPinch { i: s.i, j: s.j, lambda: s.lambda };
        }
        Ok(())
    })
}

/// Smallest face of `{a : 0 ≤ a ≤ 1, τ(a) = k}` containing `m`.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_qk_face(m: *const AcMatrix, k: usize, out_r: *mut AcQkReport) -> AcStatus {
    guard(|| {
        let a = &deref(m, "matrix")?.0;
        let dst = out(out_r, "out")?;
        let r = qk_face_report(a, k)?;
        *dst = AcQkReport { extreme: r.extreme, face_dim: r.face_dim, rank_p: r.rank_p, rank_r: r.rank_r };
        Ok(())
    })
}

// ---- polytopes

/// `{"d": int, "vertices": [["p/q", ...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ac_polytope_from_json(json: *const c_char, out_p: *mut *mut AcPolytope) -> AcStatus {
    guard(|| {
        let dst = out(out_p, "out")?;
        *dst = boxed(AcPolytope(VPolytope::from_json_str(c_str(json, "json")?)?));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_polytope_free(p: *mut AcPolytope) {
    free(p)
}

/// Number of vertices after redundant points are dropped, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_polytope_vertex_count(p: *const AcPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.vertices().len())
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_polytope_facial_dimension(p: *const AcPolytope, dim: *mut usize) -> AcStatus {
    guard(|| {
        let k = &deref(p, "polytope")?.0;
        *out(dim, "dim")? = facial_dimension(k)?;
        Ok(())
    })
}

/// `{"A": [["p/q", ...]], "b": ["p/q", ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ac_subspace_from_json(json: *const c_char, out_h: *mut *mut AcSubspace) -> AcStatus {
    guard(|| {
        let dst = out(out_h, "out")?;
        *dst = boxed(AcSubspace(AffineSubspace::from_json_str(c_str(json, "json")?)?));
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_subspace_free(h: *mut AcSubspace) {
    free(h)
}

/// Checks `G(K, F) ∩ H = F` for every face `F` of `K ∩ H`, exactly.
///
/// # Safety
/// `p` and `h` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ac_check_intersection(
    p: *const AcPolytope,
    h: *const AcSubspace,
    out_s: *mut AcTheoremSummary,
) -> AcStatus {
    guard(|| {
        let k = &deref(p, "polytope")?.0;
        let h = &deref(h, "subspace")?.0;
        let dst = out(out_s, "out")?;
        let r = check_intersection_theorem(k, h)?;
        *dst = AcTheoremSummary { n_faces: r.summary.n_faces, n_pass: r.summary.n_pass, n_fail: r.summary.n_fail };
        Ok(())
    })
}

// ---- vector measures

/// `{"masses": [..], "target": [[..]], "constraints": [[..]], "z": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ac_measure_from_json(json: *const c_char, out_m: *mut *mut AcMeasure) -> AcStatus {
    guard(|| {
        let dst = out(out_m, "out")?;
        *dst = boxed(AcMeasure(DiscreteVectorMeasure::from_json_str(c_str(json, "json")?)?));
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_measure_free(m: *mut AcMeasure) {
    free(m)
}

/// Convexity defect of the range after `rounds` halvings of every atom.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_measure_defect(
    m: *const AcMeasure,
    rounds: usize,
    n_pairs: usize,
    seed: u64,
    defect: *mut f64,
) -> AcStatus {
    guard(|| {
        let mu = &deref(m, "measure")?.0;
        let dst = out(defect, "defect")?;
        let refined;
        let mu = if rounds == 0 {
            mu
        } else {
            refined = mu.refine(rounds)?;
            &refined
        };
        *dst = convexity_defect(&range_bruteforce(mu)?, n_pairs, seed)?;
        Ok(())
    })
}

/// Vertex count and largest number of fractional coordinates over the
/// vertices of the relaxed constraint polytope.
///
/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ac_measure_vertices(
    m: *const AcMeasure,
    cap: usize,
    n_vertices: *mut usize,
    max_fractional: *mut usize,
) -> AcStatus {
    guard(|| {
        let mu = &deref(m, "measure")?.0;
        let v = extreme_solutions(mu, cap)?;
        *out(n_vertices, "n_vertices")? = v.vertices.len();
        *out(max_fractional, "max_fractional")? = v.max_fractional();
        Ok(())
    })
}
