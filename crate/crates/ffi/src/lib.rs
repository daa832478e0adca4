//! C ABI over `gradpi`.
//!
//! Algebras are opaque `GpAlgebra` handles built from the same JSON documents
//! the command line reads. Every function returns a `GpStatus`; on failure
//! `gp_last_error` describes what went wrong on the calling thread. Strings
//! handed out by the library are released with `gp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gradpi::basis::basis_generators;
use gradpi::config::{ConfigError, Job, JobConfig, Overrides};
use gradpi::free::{parse, parse_degree_list, Notation, ParseContext};
use gradpi::generic::is_graded_identity;
use gradpi::monomial::{
    classify_grading, is_monomial_identity, is_strong, minimal_monomial_basis, Classification,
};
use serde_json::json;
use thiserror::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ConfigError = 3,
    ParseError = 4,
    ComputeError = 5,
    Panic = 6,
}

/// A graded subalgebra together with its coefficient mode and degree
/// universe.
pub struct GpAlgebra {
    job: Job,
}

#[derive(Debug, Error)]
enum FfiError {
    #[error("null pointer passed as `{0}`")]
    Null(&'static str),
    #[error("`{0}` is not valid UTF-8")]
    Utf8(&'static str),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("{0}")]
    Compute(String),
}

impl FfiError {
    fn status(&self) -> GpStatus {
        match self {
            FfiError::Null(_) => GpStatus::NullPointer,
            FfiError::Utf8(_) => GpStatus::InvalidUtf8,
            FfiError::Config(_) => GpStatus::ConfigError,
            FfiError::Parse { .. } => GpStatus::ParseError,
            FfiError::Compute(_) => GpStatus::ComputeError,
        }
    }
}

fn compute(e: impl std::fmt::Display) -> FfiError {
    FfiError::Compute(e.to_string())
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), FfiError>) -> GpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GpStatus::Ok
        }
        Ok(Err(err)) => {
            set_last_error(err.to_string());
            err.status()
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            GpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, FfiError> {
    if p.is_null() {
        return Err(FfiError::Null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| FfiError::Utf8(name))
}

unsafe fn algebra_arg<'a>(p: *const GpAlgebra) -> Result<&'a GpAlgebra, FfiError> {
    p.as_ref().ok_or(FfiError::Null("algebra"))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, FfiError> {
    p.as_mut().ok_or(FfiError::Null(name))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library output has no NUL bytes")
        .into_raw()
}

/// Builds an algebra from a JSON configuration document. Bicharacter files
/// named in a tensor section are resolved against the working directory.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_from_json(
    config_json: *const c_char,
    out: *mut *mut GpAlgebra,
) -> GpStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(config_json, "config_json")?;
        let job = JobConfig::from_json(text)?.build(&Overrides::default(), None)?;
        *out = Box::into_raw(Box::new(GpAlgebra { job }));
        Ok(())
    })
}

/// Releases an algebra. Null is accepted.
///
/// # Safety
/// `algebra` must come from `gp_algebra_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gp_algebra_free(algebra: *mut GpAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Decides whether `expr`, e.g. `"x[1,1]x[1,2] - x[1,2]x[1,1]"`, is a graded
/// identity.
///
/// # Safety
/// Pointers must be valid; `expr` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gp_is_graded_identity(
    algebra: *const GpAlgebra,
    expr: *const c_char,
    out: *mut bool,
) -> GpStatus {
    guard(|| {
        let a = algebra_arg(algebra)?;
        let text = str_arg(expr, "expr")?;
        let out = out_arg(out, "out")?;
        let b = &a.job.algebra;
        let f = parse(text, &ParseContext::new(b.group())).map_err(|e| FfiError::Parse {
            what: "expression",
            detail: e.to_string(),
        })?;
        *out = is_graded_identity(b, &f, a.job.mode).map_err(compute)?;
        Ok(())
    })
}

/// Decides whether the monomial with the given comma-separated degrees, e.g.
/// `"1,0,1"`, is an identity.
///
/// # Safety
/// Pointers must be valid; `degrees` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gp_is_monomial_identity(
    algebra: *const GpAlgebra,
    degrees: *const c_char,
    out: *mut bool,
) -> GpStatus {
    guard(|| {
        let a = algebra_arg(algebra)?;
        let text = str_arg(degrees, "degrees")?;
        let out = out_arg(out, "out")?;
        let b = &a.job.algebra;
        let parse_err = |detail: String| FfiError::Parse {
            what: "degrees",
            detail,
        };
        let word = parse_degree_list(text)
            .map_err(|e| parse_err(e.to_string()))?
            .iter()
            .map(|lit| b.group().element_from_literal(lit, false))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| parse_err(e.to_string()))?;
        *out = is_monomial_identity(b, &word).map_err(compute)?;
        Ok(())
    })
}

/// Classifies the grading. `witness` receives the shortest identity
/// monomial when degenerate and null otherwise. Infinite groups are
/// reported as not strong.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gp_classify(
    algebra: *const GpAlgebra,
    degenerate: *mut bool,
    strong: *mut bool,
    witness: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let a = algebra_arg(algebra)?;
        let degenerate = out_arg(degenerate, "degenerate")?;
        let strong = out_arg(strong, "strong")?;
        let witness = out_arg(witness, "witness")?;
        let b = &a.job.algebra;
        *strong = b.group().is_finite() && is_strong(b).map_err(compute)?;
        match classify_grading(b) {
            Classification::Nondegenerate => {
                *degenerate = false;
                *witness = ptr::null_mut();
            }
            Classification::Degenerate(w) => {
                *degenerate = true;
                *witness = owned_string(w.display_monomial(b.group()));
            }
        }
        Ok(())
    })
}

/// Writes a JSON array of `{"tag", "polynomial"}` objects generating the
/// graded identities over the configured degree universe.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gp_basis_generators(
    algebra: *const GpAlgebra,
    out_json: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let a = algebra_arg(algebra)?;
        let out = out_arg(out_json, "out_json")?;
        *out = ptr::null_mut();
        let b = &a.job.algebra;
        let gens = basis_generators(b, &a.job.universe).map_err(compute)?;
        let items: Vec<_> = gens
            .iter()
            .map(|g| json!({"tag": g.tag(b), "polynomial": g.polynomial.pretty(b.group(), Notation::Plain)}))
            .collect();
        *out = owned_string(serde_json::Value::from(items).to_string());
        Ok(())
    })
}

/// Writes a JSON array of `{"degrees", "monomial"}` objects, the minimal
/// monomial identities in shortlex order.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gp_minimal_monomial_basis(
    algebra: *const GpAlgebra,
    out_json: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let a = algebra_arg(algebra)?;
        let out = out_arg(out_json, "out_json")?;
        *out = ptr::null_mut();
        let b = &a.job.algebra;
        let items: Vec<_> = minimal_monomial_basis(b)
            .iter()
            .map(|w| {
                let degrees: Vec<String> = w.as_slice().iter().map(|g| b.display(g)).collect();
                json!({"degrees": degrees, "monomial": w.display_monomial(b.group())})
            })
            .collect();
        *out = owned_string(serde_json::Value::from(items).to_string());
        Ok(())
    })
}

/// Releases a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn gp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
