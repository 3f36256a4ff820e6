//! C interface to the BiHom-Poisson toolkit.
//!
//! Algebras cross the boundary as opaque [`BhpAlgebra`] handles. Rationals,
//! matrices and reports cross as UTF-8 strings in the same JSON format the
//! command line tool reads and writes. Every entry point returns a
//! [`BhpStatus`]; on failure a description is available from
//! [`bhp_last_error_message`] until the next call on the same thread.
//!
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`bhp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bihom_poisson::algebra::{check_bihom_poisson, BiHomPoissonAlgebra};
use bihom_poisson::cohomology::cohomology_dims;
use bihom_poisson::constructions::{build_example_e1, build_sl2, polarize_minus, sl2_twisting_pair, yau_twist, TwistingPair};
use bihom_poisson::derivations::{solve_space, OperatorSpaceKind};
use bihom_poisson::io::{algebra_to_json, matrix_from_json, parse_algebra_str, TensorEncoding};
use bihom_poisson::linalg::{parse_rational, Rational};
use bihom_poisson::Error;

/// Opaque handle to an algebra.
pub struct BhpAlgebra {
    inner: BiHomPoissonAlgebra,
}

/// Result code of every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BhpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DimensionMismatch = 4,
    InvalidArgument = 5,
    /// The input is well formed but a required identity or hypothesis fails.
    AlgebraicFailure = 6,
    SingularMatrix = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BhpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Io(_) => BhpStatus::ParseError,
            Error::DimensionMismatch(_) => BhpStatus::DimensionMismatch,
            Error::InvalidArgument(_) | Error::ParameterOutOfDomain(_) => BhpStatus::InvalidArgument,
            Error::SingularMatrix { .. } => BhpStatus::SingularMatrix,
            _ => BhpStatus::AlgebraicFailure,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BhpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BhpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BhpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            BhpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(BhpStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_opt_rational(p: *const c_char, what: &str) -> Result<Option<Rational>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    Ok(Some(parse_rational(read_str(p, what)?)?))
}

unsafe fn algebra<'a>(p: *const BhpAlgebra) -> Result<&'a BiHomPoissonAlgebra, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("algebra"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle(out: *mut *mut BhpAlgebra, a: BiHomPoissonAlgebra) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(BhpAlgebra { inner: a })), "out")
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(BhpStatus::InvalidArgument, e.to_string()))?;
    write_out(out, c.into_raw(), "out")
}

fn parse_json(text: &str, what: &str) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure(BhpStatus::ParseError, format!("{what}: {e}")))
}

/// Message describing the last failure on this thread, or null if the last
/// call succeeded. The pointer stays valid until the next call.
#[no_mangle]
pub extern "C" fn bhp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bhp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra from its JSON description.
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_algebra_from_json(json: *const c_char, out: *mut *mut BhpAlgebra) -> BhpStatus {
    guard(|| {
        let a = parse_algebra_str(read_str(json, "json")?)?;
        write_handle(out, a)
    })
}

/// Serializes an algebra. Tensors of large algebras use the sparse encoding.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_algebra_to_json(a: *const BhpAlgebra, out: *mut *mut c_char) -> BhpStatus {
    guard(|| {
        let v = algebra_to_json(algebra(a)?, TensorEncoding::Auto);
        write_string(out, serde_json::to_string_pretty(&v).expect("json values serialize"))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bhp_algebra_free(a: *mut BhpAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the underlying space, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhp_algebra_dim(a: *const BhpAlgebra) -> usize {
    a.as_ref().map_or(0, |h| h.inner.dim)
}

/// Runs every BiHom-Poisson identity. `passed` receives the verdict;
/// `report_json`, if not null, receives the full report.
///
/// # Safety
/// `a` must be a live handle, `passed` writable, `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_check_poisson(
    a: *const BhpAlgebra,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> BhpStatus {
    guard(|| {
        let r = check_bihom_poisson(algebra(a)?);
        write_out(passed, r.passed, "passed")?;
        if !report_json.is_null() {
            write_string(report_json, serde_json::to_string(&r).expect("reports serialize"))?;
        }
        Ok(())
    })
}

/// Yau twist by the pair of matrices given as JSON arrays of rational strings.
///
/// # Safety
/// `a` must be a live handle, the matrices valid C strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_yau_twist(
    a: *const BhpAlgebra,
    alpha_prime_json: *const c_char,
    beta_prime_json: *const c_char,
    out: *mut *mut BhpAlgebra,
) -> BhpStatus {
    guard(|| {
        let a = algebra(a)?;
        let ap = matrix_from_json(&parse_json(read_str(alpha_prime_json, "alpha_prime")?, "alpha_prime")?, a.dim)?;
        let bp = matrix_from_json(&parse_json(read_str(beta_prime_json, "beta_prime")?, "beta_prime")?, a.dim)?;
        write_handle(out, yau_twist(a, &TwistingPair::new(ap, bp))?)
    })
}

/// The polarized algebra with bracket built from the commutator of the product.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_polarize(a: *const BhpAlgebra, out: *mut *mut BhpAlgebra) -> BhpStatus {
    guard(|| write_handle(out, polarize_minus(algebra(a)?)?))
}

/// Dimension of an operator space such as `"der"`, `"qder"` or `"centroid"`
/// with twist exponents `k` and `l`.
///
/// # Safety
/// `a` must be a live handle, `kind` a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_operator_space_dim(
    a: *const BhpAlgebra,
    kind: *const c_char,
    k: u32,
    l: u32,
    out: *mut usize,
) -> BhpStatus {
    guard(|| {
        let kind: OperatorSpaceKind = read_str(kind, "kind")?.parse()?;
        write_out(out, solve_space(algebra(a)?, kind, k, l).dim(), "out")
    })
}

/// Cochain, cocycle and cohomology dimensions in degrees one and two as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_cohomology_json(a: *const BhpAlgebra, strict: bool, out: *mut *mut c_char) -> BhpStatus {
    guard(|| {
        let r = cohomology_dims(algebra(a)?, strict)?;
        write_string(out, serde_json::to_string(&r).expect("reports serialize"))
    })
}

/// The two-dimensional example with parameters `a` and `b` given as rational strings.
///
/// # Safety
/// `a_param` and `b_param` must be valid C strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_example_e1(
    a_param: *const c_char,
    b_param: *const c_char,
    out: *mut *mut BhpAlgebra,
) -> BhpStatus {
    guard(|| {
        let a = parse_rational(read_str(a_param, "a")?)?;
        let b = parse_rational(read_str(b_param, "b")?)?;
        write_handle(out, build_example_e1(&a, &b)?)
    })
}

/// Truncated symmetric algebra of sl(2) up to degree `deg`. When `lambda` or
/// `gamma` is not null the result is twisted by the matching diagonal maps;
/// a null parameter counts as 1.
///
/// # Safety
/// `lambda` and `gamma` must be null or valid C strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bhp_example_sl2(
    deg: u32,
    lambda: *const c_char,
    gamma: *const c_char,
    out: *mut *mut BhpAlgebra,
) -> BhpStatus {
    guard(|| {
        let l = read_opt_rational(lambda, "lambda")?;
        let g = read_opt_rational(gamma, "gamma")?;
        let base = build_sl2(deg)?;
        let alg = if l.is_none() && g.is_none() {
            base
        } else {
            let one = Rational::from_integer(1.into());
            let tp = sl2_twisting_pair(l.as_ref().unwrap_or(&one), g.as_ref().unwrap_or(&one), deg)?;
            yau_twist(&base, &tp)?
        };
        write_handle(out, alg)
    })
}
