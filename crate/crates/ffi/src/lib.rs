//! C ABI over `fmethod-core`.
//!
//! Every entry point returns an [`FmStatus`]. Strings handed out through `out`
//! pointers are owned by the caller and must be released with [`fm_string_free`].
//! On failure the message is kept per thread and read with [`fm_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fmethod_core::coeff::{parse_rational, BigRational};
use fmethod_core::error::Error;
use fmethod_core::geometries::{build_geometry, g_tau_generators, GeometryFamily, GeometrySpec};
use fmethod_core::modforms::{delta, eisenstein, is_proportional, rc_bracket};
use fmethod_core::singular::{
    closed_form, intertwining_check, ode_of_geometry, solve_operator, solve_singular,
};

/// Result of every call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    /// The parameters are degenerate or admit no singular vector.
    NoSolution = 4,
    /// A verification ran and did not pass; the report is still written.
    VerificationFailed = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmFamily {
    So = 0,
    Sp = 1,
    Uu = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmFormat {
    Text = 0,
    Latex = 1,
    Json = 2,
}

/// Opaque geometry handle.
pub struct FmGeometry {
    spec: GeometrySpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_)
            | Error::OutOfRange(_)
            | Error::MissingParameter(_)
            | Error::UnknownGenerator(_) => FmStatus::InvalidArgument,
            Error::Unsupported(_) => FmStatus::Unsupported,
            Error::NoSingularVector | Error::Degenerate(_) => FmStatus::NoSolution,
            Error::Domain(_) => FmStatus::InvalidArgument,
            _ => FmStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(FmStatus::InvalidArgument, msg.into())
}

/// Run `f`, translate its outcome to a status and record failures.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FmStatus::Ok
        }
        Ok(Err(Failure(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            FmStatus::Panic
        }
    }
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FmStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s)
        .map_err(|_| Failure(FmStatus::Internal, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `geo` must be null or a live handle from [`fm_geometry_new`].
unsafe fn geometry<'a>(geo: *const FmGeometry) -> Result<&'a GeometrySpec, Failure> {
    geo.as_ref()
        .map(|g| &g.spec)
        .ok_or_else(|| Failure(FmStatus::NullPointer, "null geometry handle".into()))
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure(FmStatus::Internal, e.to_string()))
}

/// `name=value` pairs separated by commas; null or empty keeps every parameter symbolic.
///
/// # Safety
/// `s` must be null or a NUL-terminated string.
unsafe fn parse_values(
    g: &GeometrySpec,
    s: *const c_char,
) -> Result<Vec<(String, BigRational)>, Failure> {
    if s.is_null() {
        return Ok(Vec::new());
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid("parameter list is not UTF-8"))?;
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected name=value, got '{item}'")))?;
        let k = k.trim();
        if g.space.index_of(k).is_none() {
            return Err(invalid(format!("unknown parameter '{k}'")));
        }
        out.push((k.to_string(), parse_rational(v.trim())?));
    }
    Ok(out)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create a geometry handle; release it with [`fm_geometry_free`].
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn fm_geometry_new(
    family: FmFamily,
    n: usize,
    out: *mut *mut FmGeometry,
) -> FmStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(FmStatus::NullPointer, "null output pointer".into()));
        }
        let family = match family {
            FmFamily::So => GeometryFamily::So,
            FmFamily::Sp => GeometryFamily::Sp,
            FmFamily::Uu => GeometryFamily::Uu,
        };
        let spec = build_geometry(family, n)?;
        *out = Box::into_raw(Box::new(FmGeometry { spec }));
        Ok(())
    })
}

/// # Safety
/// `geo` must be null or a handle from [`fm_geometry_new`] that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fm_geometry_free(geo: *mut FmGeometry) {
    if !geo.is_null() {
        drop(Box::from_raw(geo));
    }
}

/// JSON description of the geometry: parameters, variables and generators.
///
/// # Safety
/// `geo` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn fm_geometry_describe(
    geo: *const FmGeometry,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let g = geometry(geo)?;
        write_string(out, json(&g.to_json())?)
    })
}

/// The differential operator of degree `a`.
///
/// `values` assigns numbers to parameters, e.g. `"l=7/2"` or `"lp=2,lpp=0"`.
///
/// # Safety
/// `geo` must be a live handle, `values` null or NUL-terminated, and `out`
/// valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn fm_singular(
    geo: *const FmGeometry,
    a: u32,
    values: *const c_char,
    format: FmFormat,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let g = geometry(geo)?;
        let values = parse_values(g, values)?;
        let solved = solve_operator(g, a, &values)?;
        let s = match format {
            FmFormat::Json => json(&solved.to_json(&g.space))?,
            FmFormat::Latex => solved.operator().to_latex(),
            FmFormat::Text => solved.operator().to_string(),
        };
        write_string(out, s)
    })
}

/// The radial ODE of degree `a` with symbolic parameters.
///
/// # Safety
/// `geo` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn fm_ode(
    geo: *const FmGeometry,
    a: u32,
    classical: bool,
    format: FmFormat,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let g = geometry(geo)?;
        let mut ode = ode_of_geometry(g, a)?;
        if classical {
            ode = ode.in_classical_variable()?;
        }
        let s = match format {
            FmFormat::Json => json(&ode.to_json())?,
            FmFormat::Latex => ode.to_latex(),
            FmFormat::Text => ode.to_string(),
        };
        write_string(out, s)
    })
}

/// Check the solved operator of degree `a` against its closed form and, where
/// available, the intertwining property on monomials of degree at most `max_degree`.
///
/// Writes a one-line-per-check report to `report` (may be null) and returns
/// [`FmStatus::VerificationFailed`] if any check fails.
///
/// # Safety
/// `geo` must be a live handle and `report` null or valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn fm_verify(
    geo: *const FmGeometry,
    a: u32,
    max_degree: u32,
    report: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let g = geometry(geo)?;
        let mut lines = Vec::new();
        let mut ok = true;
        if !g_tau_generators(g).is_empty() {
            if max_degree < 2 * a {
                return Err(invalid(format!(
                    "degree bound {max_degree} is below 2a = {}",
                    2 * a
                )));
            }
            let r = intertwining_check(g, a, max_degree)?;
            ok &= r.passed();
            lines.push(format!(
                "intertwining: {}",
                if r.passed() { "pass" } else { "FAIL" }
            ));
        }
        let cf = solve_singular(g, a)?.proportional(&closed_form(g, a)?);
        ok &= cf;
        lines.push(format!("closed form: {}", if cf { "pass" } else { "FAIL" }));
        if !report.is_null() {
            write_string(report, lines.join("\n"))?;
        }
        if ok {
            Ok(())
        } else {
            Err(Failure(
                FmStatus::VerificationFailed,
                "verification failed".into(),
            ))
        }
    })
}

/// Rankin–Cohen bracket of `E_{k1}` and `E_{k2}` up to `q^terms`.
///
/// If `delta_ratio` is non-null, the rational `c` with bracket `= c·Δ` is written
/// there, or [`FmStatus::VerificationFailed`] is returned when there is none.
///
/// # Safety
/// `out` must be valid for one pointer write, `delta_ratio` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fm_rc_bracket(
    k1: i64,
    k2: i64,
    a: u32,
    terms: usize,
    format: FmFormat,
    out: *mut *mut c_char,
    delta_ratio: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let b = rc_bracket(&eisenstein(k1, terms)?, k1, &eisenstein(k2, terms)?, k2, a)?;
        let s = match format {
            FmFormat::Json => json(&b.to_json())?,
            _ => b.to_string(),
        };
        write_string(out, s)?;
        if !delta_ratio.is_null() {
            match is_proportional(&b, &delta(terms)) {
                Some(c) => write_string(delta_ratio, c.to_string())?,
                None => {
                    *delta_ratio = ptr::null_mut();
                    return Err(Failure(
                        FmStatus::VerificationFailed,
                        "bracket is not proportional to Delta".into(),
                    ));
                }
            }
        }
        Ok(())
    })
}
