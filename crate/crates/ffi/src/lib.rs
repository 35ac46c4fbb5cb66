//! C ABI over the `specineq` toolkit.
//!
//! Spectra and bundles are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`SpecineqStatus`]; on failure, [`specineq_last_error`] describes the most
//! recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use specineq::ball::{ball_spectrum_of, BallSpec};
use specineq::catalog::{self, Family, InequalityReport, Policy, SpectraBundle, Status};
use specineq::grid::{solve_levels, Shape};
use specineq::{Error, ProblemKind, Provenance, Spectrum};

pub const SPECINEQ_DIRICHLET: u32 = 0;
pub const SPECINEQ_NEUMANN: u32 = 1;
pub const SPECINEQ_CLAMPED: u32 = 2;
pub const SPECINEQ_BUCKLING: u32 = 3;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecineqStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    OutOfRange = 3,
    NoConvergence = 4,
    BadDomain = 5,
    SolverFailed = 6,
    Mismatch = 7,
    SpectrumTooShort = 8,
    MissingSpectrum = 9,
    Hypothesis = 10,
    Inconsistent = 11,
    UnknownInequality = 12,
    Io = 13,
    Panic = 14,
}

/// Status of an evaluated inequality.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecineqCheckStatus {
    Proven = 0,
    Conjecture = 1,
    Informational = 2,
}

/// Flat copy of one inequality report, oriented as `lhs ≤ rhs`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecineqCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    /// 1 when `slack ≥ −tolerance`.
    pub holds: u8,
    pub status: SpecineqCheckStatus,
}

/// Opaque eigenvalue list.
pub struct SpecineqSpectrum(Spectrum);

/// Opaque collection of spectra of one domain.
pub struct SpecineqBundle(SpectraBundle);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> SpecineqStatus {
    use SpecineqStatus as S;
    match e {
        Error::InvalidArgument(_) | Error::Config(_) => S::InvalidArgument,
        Error::Range { .. } => S::OutOfRange,
        Error::NoConvergence { .. } => S::NoConvergence,
        Error::EmptyDomain | Error::Disconnected { .. } => S::BadDomain,
        Error::Factorization(_) | Error::EigenNotConverged { .. } => S::SolverFailed,
        Error::Mismatch(_) => S::Mismatch,
        Error::SpectrumTooShort { .. } => S::SpectrumTooShort,
        Error::MissingSpectrum(_) => S::MissingSpectrum,
        Error::Hypothesis(_) => S::Hypothesis,
        Error::Inconsistent(_) => S::Inconsistent,
        Error::UnknownInequality(_) => S::UnknownInequality,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => S::Io,
    }
}

struct Fail(SpecineqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SpecineqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpecineqStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            SpecineqStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SpecineqStatus::NullPointer, format!("{what} is null"))
}

fn kind_of(kind: u32) -> Result<ProblemKind, Fail> {
    ProblemKind::ALL
        .get(kind as usize)
        .copied()
        .ok_or_else(|| Fail(SpecineqStatus::InvalidArgument, format!("unknown problem kind {kind}")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SpecineqStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn flat(r: &InequalityReport) -> SpecineqCheck {
    SpecineqCheck {
        lhs: r.lhs,
        rhs: r.rhs,
        slack: r.slack,
        tolerance: r.tolerance_used,
        holds: r.holds as u8,
        status: match r.status {
            Status::Proven => SpecineqCheckStatus::Proven,
            Status::Conjecture => SpecineqCheckStatus::Conjecture,
            Status::Informational => SpecineqCheckStatus::Informational,
        },
    }
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn specineq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn specineq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Closed-form spectrum of the `n`-ball of the given radius, `count` values
/// with multiplicity.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_ball(
    kind: u32,
    n: usize,
    radius: f64,
    count: usize,
    out_handle: *mut *mut SpecineqSpectrum,
) -> SpecineqStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let s = ball_spectrum_of(kind_of(kind)?, &BallSpec::new(n, radius)?, count)?;
        *slot = Box::into_raw(Box::new(SpecineqSpectrum(s)));
        Ok(())
    })
}

/// Extrapolated grid spectrum of a planar shape given as a descriptor such
/// as `"disk:1"` or `"rectangle:2,1"`, from `levels ≥ 2` meshes starting at `h`.
///
/// # Safety
/// `shape` must be a NUL-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_grid(
    shape: *const c_char,
    kind: u32,
    h: f64,
    levels: usize,
    count: usize,
    out_handle: *mut *mut SpecineqSpectrum,
) -> SpecineqStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let desc = text(shape, "shape")?;
        let parsed: Shape = desc.parse()?;
        let r = solve_levels(&parsed, desc, kind_of(kind)?, h, levels, count)?;
        *slot = Box::into_raw(Box::new(SpecineqSpectrum(r.extrapolated)));
        Ok(())
    })
}

/// Wraps caller-supplied eigenvalues (nondecreasing, with multiplicity).
///
/// # Safety
/// `values` must point to `len` readable doubles; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_from_values(
    kind: u32,
    n: usize,
    values: *const f64,
    len: usize,
    out_handle: *mut *mut SpecineqSpectrum,
) -> SpecineqStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        if values.is_null() {
            return Err(null("values"));
        }
        let v = std::slice::from_raw_parts(values, len).to_vec();
        let s = Spectrum::new(kind_of(kind)?, n, v, "user", Provenance::ClosedForm)?;
        *slot = Box::into_raw(Box::new(SpecineqSpectrum(s)));
        Ok(())
    })
}

/// Number of stored eigenvalues, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_len(s: *const SpecineqSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Copies up to `cap` eigenvalues into `buf` and the matching allowances into
/// `allowance` (which may be null); `written` receives the number copied.
///
/// # Safety
/// `buf` (and `allowance` if non-null) must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_values(
    s: *const SpecineqSpectrum,
    buf: *mut f64,
    allowance: *mut f64,
    cap: usize,
    written: *mut usize,
) -> SpecineqStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("spectrum"))?;
        let w = out(written, "written")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let k = cap.min(s.0.len());
        ptr::copy_nonoverlapping(s.0.values.as_ptr(), buf, k);
        if !allowance.is_null() {
            ptr::copy_nonoverlapping(s.0.allowance.as_ptr(), allowance, k);
        }
        *w = k;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn specineq_spectrum_free(s: *mut SpecineqSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Evaluates a single-spectrum inequality (membrane, plate, or buckling
/// family). `m` is the index for indexed ids and is ignored otherwise.
///
/// # Safety
/// `id` must be a NUL-terminated string; `s` a live handle; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_check(
    id: *const c_char,
    s: *const SpecineqSpectrum,
    m: usize,
    result: *mut SpecineqCheck,
) -> SpecineqStatus {
    guard(|| {
        let id = text(id, "id")?;
        let s = &s.as_ref().ok_or_else(|| null("spectrum"))?.0;
        let slot = out(result, "result")?;
        let def = catalog::lookup(id)?;
        let policy = Policy::default();
        let r = match def.family {
            Family::MembraneGap => catalog::eval_membrane_gap(id, s, m, policy)?,
            Family::MembraneLow => catalog::eval_membrane_low(id, s, policy)?,
            Family::Plate => catalog::eval_plate(id, s, m, policy)?,
            Family::Buckling => catalog::eval_buckling(id, s, policy)?,
            Family::Isoperimetric | Family::Polya => {
                return Err(Fail(SpecineqStatus::InvalidArgument, format!("`{id}` needs a bundle")))
            }
        };
        *slot = flat(&r);
        Ok(())
    })
}

/// New empty bundle for a domain of dimension `n` and measure `area`
/// (pass a non-positive area when unknown).
///
/// # Safety
/// `label` must be a NUL-terminated string; `out_handle` writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_bundle_new(
    label: *const c_char,
    n: usize,
    area: f64,
    out_handle: *mut *mut SpecineqBundle,
) -> SpecineqStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let label = text(label, "label")?;
        let area = (area > 0.0).then_some(area);
        *slot = Box::into_raw(Box::new(SpecineqBundle(SpectraBundle::new(label, n, area))));
        Ok(())
    })
}

/// Copies `s` into the bundle, replacing any spectrum of the same kind.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn specineq_bundle_add(b: *mut SpecineqBundle, s: *const SpecineqSpectrum) -> SpecineqStatus {
    guard(|| {
        let b = b.as_mut().ok_or_else(|| null("bundle"))?;
        let s = s.as_ref().ok_or_else(|| null("spectrum"))?;
        b.0.insert(s.0.clone())?;
        Ok(())
    })
}

/// Evaluates an isoperimetric inequality on the bundle.
///
/// # Safety
/// `id` must be a NUL-terminated string; `b` live; `result` writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_bundle_check(
    b: *const SpecineqBundle,
    id: *const c_char,
    result: *mut SpecineqCheck,
) -> SpecineqStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("bundle"))?;
        let id = text(id, "id")?;
        let slot = out(result, "result")?;
        *slot = flat(&catalog::eval_isoperimetric(id, &b.0, Policy::default())?);
        Ok(())
    })
}

/// Number of proven-status reports that fail when the whole catalog is run
/// on the bundle for `m ≤ m_max` and Pólya levels `k ≤ k_max`.
///
/// # Safety
/// `b` live; `failed` and `total` writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_bundle_check_all(
    b: *const SpecineqBundle,
    m_max: usize,
    k_max: usize,
    failed: *mut usize,
    total: *mut usize,
) -> SpecineqStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("bundle"))?;
        let f = out(failed, "failed")?;
        let t = out(total, "total")?;
        let (reports, errors) = catalog::evaluate_all(&b.0, None, m_max, k_max, Policy::default());
        if let Some((id, e)) = errors.into_iter().next() {
            return Err(Fail(code_of(&e), format!("{id}: {e}")));
        }
        *t = reports.len();
        *f = reports.iter().filter(|r| r.status == Status::Proven && !r.holds).count();
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn specineq_bundle_free(b: *mut SpecineqBundle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// `c_n = 2^{2/n} (j_{n/2−1,1}/j_{n/2,1})²`.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_c_constant(n: usize, value: *mut f64) -> SpecineqStatus {
    guard(|| {
        *out(value, "value")? = specineq::two_ball::c_constant(n)?;
        Ok(())
    })
}

/// `d_n` and the volume fraction `t` at which the two-ball minimum occurs.
///
/// # Safety
/// `d` and `t` must be writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_d_constant(n: usize, d: *mut f64, t: *mut f64) -> SpecineqStatus {
    guard(|| {
        let dv = out(d, "d")?;
        let tv = out(t, "t")?;
        let r = specineq::two_ball::d_constant(n)?;
        *dv = r.d;
        *tv = r.minimizer_t;
        Ok(())
    })
}

/// `k`-th positive zero of `J_ν`, `k ≥ 1`.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn specineq_bessel_zero(nu: f64, k: usize, value: *mut f64) -> SpecineqStatus {
    guard(|| {
        *out(value, "value")? = specineq::specfun::bessel_zero(nu, k)?.value;
        Ok(())
    })
}
