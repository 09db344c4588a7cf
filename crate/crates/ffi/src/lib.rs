//! C interface to `lcl-core`.
//!
//! Terms are passed as opaque `LclTerm` handles; everything else crosses
//! the boundary as NUL-terminated UTF-8 text. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released
//! with `lcl_string_free`. On any status other than `LCL_STATUS_OK`,
//! `lcl_last_error` describes what happened on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lcl_core::cli::parse_theory;
use lcl_core::kernel::{ext_equal, normalize, Normalization};
use lcl_core::logic::{check_proof, entails, Entailment, ProofVerdict};
use lcl_core::semantics::{satisfies, term_model, Environment};
use lcl_core::types::infer_type;
use lcl_core::{Basis, Bounds, Formula, HilbertProof, Term, TriBool};

/// Result codes shared by every function. The first four mirror the exit
/// codes of the `lcl` tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LclStatus {
    /// Positive verdict, or plain success.
    Ok = 0,
    /// Definitive negative verdict: false, rejected, refuted, untypable.
    Negative = 1,
    /// Undecided within the given bounds.
    Unknown = 2,
    /// Input text did not parse or was otherwise malformed.
    ParseError = 3,
    /// A null pointer or invalid UTF-8 was passed.
    InvalidArgument = 4,
    /// An internal failure was caught at the boundary.
    Internal = 5,
}

/// Resource limits; see `lcl_bounds_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LclBounds {
    pub fuel: u64,
    pub arity: usize,
    pub depth: usize,
}

impl From<LclBounds> for Bounds {
    fn from(b: LclBounds) -> Self {
        Bounds::new(b.fuel, b.arity, b.depth)
    }
}

/// Opaque handle to a term.
pub struct LclTerm(Term);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(LclStatus, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(LclStatus::ParseError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<LclStatus, Fail>) -> LclStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            LclStatus::Internal
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LclStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(LclStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a handle from this library.
unsafe fn term<'a>(p: *const LclTerm, what: &str) -> Result<&'a Term, Fail> {
    p.as_ref()
        .map(|t| &t.0)
        .ok_or_else(|| Fail(LclStatus::InvalidArgument, format!("{what} is null")))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s.replace('\0', " "))
            .unwrap_or_default()
            .into_raw();
    }
}

fn tri(v: &TriBool) -> LclStatus {
    match v {
        TriBool::True => LclStatus::Ok,
        TriBool::False => LclStatus::Negative,
        TriBool::Unknown(r) => {
            set_error(r.clone());
            LclStatus::Unknown
        }
    }
}

/// The default bounds: fuel 10000, arity 3, depth 2.
#[no_mangle]
pub extern "C" fn lcl_bounds_default() -> LclBounds {
    let b = Bounds::default();
    LclBounds {
        fuel: b.fuel,
        arity: b.arity,
        depth: b.depth,
    }
}

/// Message for the last failure on this thread; empty after success. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn lcl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcl_term_parse(src: *const c_char, out: *mut *mut LclTerm) -> LclStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(LclStatus::InvalidArgument, "out is null".into()));
        }
        *out = ptr::null_mut();
        let m = Term::parse(text(src, "src")?)?;
        *out = Box::into_raw(Box::new(LclTerm(m)));
        Ok(LclStatus::Ok)
    })
}

/// Releases a term handle.
///
/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcl_term_free(t: *mut LclTerm) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Canonical text of a term, or null for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcl_term_to_string(t: *const LclTerm) -> *mut c_char {
    match t.as_ref() {
        Some(t) => CString::new(t.0.to_string()).unwrap_or_default().into_raw(),
        None => ptr::null_mut(),
    }
}

/// Reduces `t` leftmost-outermost. `LCL_STATUS_OK` with the normal form,
/// or `LCL_STATUS_UNKNOWN` with the reduct reached when the fuel ran out.
/// `steps` may be null.
///
/// # Safety
/// `t` must be a live handle; `out` writable; `steps` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lcl_term_normalize(
    t: *const LclTerm,
    fuel: u64,
    out: *mut *mut LclTerm,
    steps: *mut u64,
) -> LclStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(LclStatus::InvalidArgument, "out is null".into()));
        }
        let m = term(t, "term")?;
        let r = normalize(m, fuel);
        let status = match &r {
            Normalization::NormalForm { .. } => LclStatus::Ok,
            Normalization::FuelExhausted { steps, .. } => {
                set_error(format!("fuel exhausted after {steps} steps"));
                LclStatus::Unknown
            }
        };
        if !steps.is_null() {
            *steps = r.steps();
        }
        *out = Box::into_raw(Box::new(LclTerm(r.term().clone())));
        Ok(status)
    })
}

/// Extensional equality within the bounds: OK for equal, NEGATIVE for
/// distinct, UNKNOWN when undecided.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn lcl_ext_equal(
    m: *const LclTerm,
    n: *const LclTerm,
    bounds: LclBounds,
) -> LclStatus {
    guard(|| {
        let (m, n) = (term(m, "m")?, term(n, "n")?);
        Ok(tri(&ext_equal(m, n, bounds.fuel, bounds.arity)))
    })
}

/// Principal type of `t` under a basis such as `"x : a, y : a -> b"`.
/// NEGATIVE when untypable.
///
/// # Safety
/// `basis` must be a NUL-terminated string, `t` a live handle, `out` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lcl_infer_type(
    basis: *const c_char,
    t: *const LclTerm,
    out: *mut *mut c_char,
) -> LclStatus {
    guard(|| {
        let gamma = Basis::parse(text(basis, "basis")?)?;
        let m = term(t, "term")?;
        match infer_type(&gamma, m) {
            Ok(ty) => {
                put_string(out, ty.to_string());
                Ok(LclStatus::Ok)
            }
            Err(e) => Err(Fail(LclStatus::Negative, e.to_string())),
        }
    })
}

/// Checks a proof given in the proof file format. `report` (may be null)
/// receives a one-line verdict.
///
/// # Safety
/// `proof` must be a NUL-terminated string; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lcl_check_proof(
    proof: *const c_char,
    bounds: LclBounds,
    report: *mut *mut c_char,
) -> LclStatus {
    guard(|| {
        let p = HilbertProof::parse(text(proof, "proof")?)?;
        let r = check_proof(&p, &bounds.into());
        put_string(report, r.verdict.to_string());
        Ok(match r.verdict {
            ProofVerdict::Accepted => LclStatus::Ok,
            ProofVerdict::Rejected { .. } => LclStatus::Negative,
            ProofVerdict::Inconclusive { .. } => LclStatus::Unknown,
        })
    })
}

/// Bounded entailment. `theory` holds one formula per line. On OK, `proof`
/// (may be null) receives a proof file; on NEGATIVE it receives the
/// countervaluation; on UNKNOWN the reason.
///
/// # Safety
/// `theory` and `goal` must be NUL-terminated strings; `proof` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lcl_entails(
    theory: *const c_char,
    goal: *const c_char,
    bounds: LclBounds,
    proof: *mut *mut c_char,
) -> LclStatus {
    guard(|| {
        let theory = parse_theory(text(theory, "theory")?)?;
        let goal = Formula::parse(text(goal, "goal")?)?;
        Ok(match entails(&theory, &goal, &bounds.into())? {
            Entailment::Proved(p) => {
                put_string(proof, p.to_string());
                LclStatus::Ok
            }
            Entailment::Refuted(c) => {
                put_string(proof, c.to_string());
                LclStatus::Negative
            }
            Entailment::Unknown(r) => {
                put_string(proof, r.clone());
                set_error(r);
                LclStatus::Unknown
            }
        })
    })
}

/// Truth of `formula` in the term model over `basis` under the standard
/// environment.
///
/// # Safety
/// Both arguments must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn lcl_model_sat(
    basis: *const c_char,
    formula: *const c_char,
    bounds: LclBounds,
) -> LclStatus {
    guard(|| {
        let gamma = Basis::parse(text(basis, "basis")?)?;
        let f = Formula::parse(text(formula, "formula")?)?;
        let b: Bounds = bounds.into();
        let model = term_model(gamma, b);
        let v = satisfies(&model, &Environment::standard(), &f, &b);
        Ok(tri(&v.verdict))
    })
}
