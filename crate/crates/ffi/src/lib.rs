//! C ABI over `monodromy-core`.
//!
//! Every function returns an [`MdStatus`]; on failure a one-line message is
//! available from [`md_last_error_message`] on the same thread. Objects are
//! opaque handles released with their `_free` function; strings returned
//! through `char **` out-parameters are released with [`md_string_free`].
//! Panics never cross the boundary: they are caught and reported as
//! `MD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monodromy_core::json::{parse_input, CertificateJson};
use monodromy_core::linalg::IntMatrix;
use monodromy_core::polytope::{thickness, Covector, Polytope};
use monodromy_core::torus::{certify, verify_certificate, Certificate, CertifyInput};
use monodromy_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    RejectedInput = 3,
    DimensionMismatch = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque certificate handle.
pub struct MdCertificate(Certificate);

/// Opaque polytope handle.
pub struct MdPolytope(Polytope);

type Failure = (MdStatus, String);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MdStatus {
    match e {
        Error::Parse(_) => MdStatus::ParseError,
        Error::DimensionMismatch(_) | Error::NotSquare { .. } => MdStatus::DimensionMismatch,
        Error::CriterionFailed(_) => MdStatus::Internal,
        _ => MdStatus::RejectedInput,
    }
}

fn fail(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (MdStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            MdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (MdStatus::ParseError, format!("{what} is not valid UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (MdStatus::Internal, "string contains NUL".to_string()))
}

unsafe fn rationals(
    num: *const i64,
    den: *const i64,
    len: usize,
) -> Result<Vec<BigRational>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if num.is_null() || den.is_null() {
        return Err(null("numerator or denominator array"));
    }
    let (num, den) = (
        std::slice::from_raw_parts(num, len),
        std::slice::from_raw_parts(den, len),
    );
    num.iter()
        .zip(den)
        .map(|(&n, &d)| {
            if d == 0 {
                Err((MdStatus::RejectedInput, "zero denominator".to_string()))
            } else {
                Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
        })
        .collect()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn md_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Certifies an input given as JSON (`{"matrix": ...}` or
/// `{"rank": g, "images": [...]}`).
///
/// # Safety
/// `input_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_certify_json(
    input_json: *const c_char,
    out: *mut *mut MdCertificate,
) -> MdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let input = parse_input(read_str(input_json, "input_json")?).map_err(fail)?;
        let cert = certify(&input).map_err(fail)?;
        *out = Box::into_raw(Box::new(MdCertificate(cert)));
        Ok(())
    })
}

/// Certifies the `g × g` integer matrix stored row-major in `entries`.
///
/// # Safety
/// `entries` must point to `g * g` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_certify_matrix(
    entries: *const i64,
    g: usize,
    out: *mut *mut MdCertificate,
) -> MdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if entries.is_null() && g > 0 {
            return Err(null("entries"));
        }
        let flat = if g == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(entries, g * g)
        };
        let rows = flat
            .chunks(g.max(1))
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let m = IntMatrix::from_rows(rows).map_err(fail)?;
        let cert = certify(&CertifyInput::Matrix(m)).map_err(fail)?;
        *out = Box::into_raw(Box::new(MdCertificate(cert)));
        Ok(())
    })
}

/// Serializes a certificate; release the string with `md_string_free`.
///
/// # Safety
/// `cert` must come from a certify call; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_certificate_to_json(
    cert: *const MdCertificate,
    out: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let cert = cert.as_ref().ok_or_else(|| null("cert"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serde_json::to_string_pretty(&CertificateJson::from_certificate(&cert.0))
            .map_err(|e| (MdStatus::Internal, e.to_string()))?;
        *out = to_c_string(text)?;
        Ok(())
    })
}

/// Genus, fixed rank `k`, dim H₁(M; ℚ) and dim H₁(W; ℚ). Any output
/// pointer may be NULL.
///
/// # Safety
/// `cert` must come from a certify call; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_certificate_dims(
    cert: *const MdCertificate,
    genus: *mut usize,
    k: *mut usize,
    dim_m: *mut usize,
    dim_w: *mut usize,
) -> MdStatus {
    guard(|| {
        let c = &cert.as_ref().ok_or_else(|| null("cert"))?.0;
        for (p, v) in [
            (genus, c.genus()),
            (k, c.block_form.k),
            (dim_m, c.homology.dim_h1_m),
            (dim_w, c.homology.dim_h1_w),
        ] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `cert` must come from a certify call (or be NULL) and not be used again.
#[no_mangle]
pub unsafe extern "C" fn md_certificate_free(cert: *mut MdCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Re-checks a certificate JSON document. `*ok` is 1 when every invariant
/// holds and 0 otherwise (the violated checks go to the last error message).
///
/// # Safety
/// `cert_json` must be a NUL-terminated string; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_verify_json(cert_json: *const c_char, ok: *mut c_int) -> MdStatus {
    guard(|| {
        if ok.is_null() {
            return Err(null("ok"));
        }
        let raw: CertificateJson = serde_json::from_str(read_str(cert_json, "cert_json")?)
            .map_err(|e| (MdStatus::ParseError, e.to_string()))?;
        let failed = match raw.to_certificate() {
            Ok(c) => verify_certificate(&c),
            Err(e) => vec![e.to_string()],
        };
        *ok = failed.is_empty() as c_int;
        if !failed.is_empty() {
            set_last_error(failed.join("; "));
        }
        Ok(())
    })
}

/// Builds the convex hull of `count` points in ℚ^dim, given as row-major
/// numerator and denominator arrays of length `count * dim`.
///
/// # Safety
/// `num` and `den` must point to `count * dim` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_polytope_new(
    dim: usize,
    num: *const i64,
    den: *const i64,
    count: usize,
    out: *mut *mut MdPolytope,
) -> MdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let coords = rationals(num, den, dim * count)?;
        let points = if dim == 0 {
            vec![Vec::new(); count]
        } else {
            coords.chunks(dim).map(<[BigRational]>::to_vec).collect()
        };
        let p = Polytope::new(dim, points).map_err(fail)?;
        *out = Box::into_raw(Box::new(MdPolytope(p)));
        Ok(())
    })
}

/// Number of vertices left after pruning.
///
/// # Safety
/// `polytope` must come from `md_polytope_new`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_polytope_vertex_count(
    polytope: *const MdPolytope,
    out: *mut usize,
) -> MdStatus {
    guard(|| {
        let p = polytope.as_ref().ok_or_else(|| null("polytope"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = p.0.vertices().len();
        Ok(())
    })
}

/// Thickness `max ω − min ω` of a rational covector, written as an exact
/// `"p/q"` (or `"p"`) string; release it with `md_string_free`.
///
/// # Safety
/// `polytope` must come from `md_polytope_new`; `num`/`den` must point to
/// `dim` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn md_polytope_thickness(
    polytope: *const MdPolytope,
    num: *const i64,
    den: *const i64,
    dim: usize,
    out: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let p = polytope.as_ref().ok_or_else(|| null("polytope"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let w = Covector(rationals(num, den, dim)?);
        let t = thickness(&p.0, &w).map_err(fail)?;
        *out = to_c_string(t.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `polytope` must come from `md_polytope_new` (or be NULL) and not be used
/// again.
#[no_mangle]
pub unsafe extern "C" fn md_polytope_free(polytope: *mut MdPolytope) {
    if !polytope.is_null() {
        drop(Box::from_raw(polytope));
    }
}

/// # Safety
/// `s` must be a string returned by this library (or NULL).
#[no_mangle]
pub unsafe extern "C" fn md_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
