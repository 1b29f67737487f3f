//! C interface to `bp-engine`.
//!
//! An engine is an opaque handle bound to one prime. Every call returns a
//! [`BpStatus`]; results come back as NUL-terminated JSON strings that the
//! caller releases with [`bp_string_free`]. When a call fails,
//! [`bp_last_error`] describes why.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bp_engine::coproduct::{check_relations, RelationSet};
use bp_engine::output::{to_json, ChecksRecord, CoproductRecord, ElementRecord, ObstructionRecord, TensorRecord};
use bp_engine::{
    admissible_basis, check_coassociativity, check_counit, coproduct, cp_square_check, parse_expression,
    square_obstruction, Algebra, CheckReport, CoproductScheme, Element, Error, Grading, ObstructionReport, Prime,
    Strategy,
};
use libc::c_char;

/// Opaque engine handle.
pub struct BpEngine {
    alg: Algebra,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    /// A check ran to completion and found a violation. The report is still written.
    CheckFailed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    InvalidPrime = 4,
    Parse = 5,
    FuelExhausted = 6,
    InvalidGrading = 7,
    UnsupportedScheme = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpScheme {
    /// `b ⊗ 1 + 1 ⊗ b`
    Singer = 0,
    /// `b ⊗ P0 + P0 ⊗ b` with the parities given alongside
    Geometric = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BpStatus {
    match e {
        Error::InvalidPrime(_) => BpStatus::InvalidPrime,
        Error::FuelExhausted { .. } => BpStatus::FuelExhausted,
        Error::InvalidGrading | Error::SymbolicGrading => BpStatus::InvalidGrading,
        Error::UnsupportedScheme(_) => BpStatus::UnsupportedScheme,
        Error::Parse(_) => BpStatus::Parse,
    }
}

struct Failure(BpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, stores its JSON in `*out` and converts errors and panics to
/// status codes. A `(json, false)` result is reported as `CheckFailed`.
fn guarded<F>(out: *mut *mut c_char, body: F) -> BpStatus
where
    F: FnOnce() -> Result<(String, bool), Failure>,
{
    if out.is_null() {
        set_error("output pointer is null".into());
        return BpStatus::NullPointer;
    }
    // SAFETY: checked non-null above; the caller owns the slot.
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok((json, passed))) => {
            let s = CString::new(json).expect("JSON has no interior NUL");
            // SAFETY: as above.
            unsafe { *out = s.into_raw() };
            if passed {
                BpStatus::Ok
            } else {
                set_error("check failed".into());
                BpStatus::CheckFailed
            }
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BpStatus::Internal
        }
    }
}

unsafe fn handle<'a>(e: *const BpEngine) -> Result<&'a BpEngine, Failure> {
    e.as_ref().ok_or_else(|| Failure(BpStatus::NullPointer, "engine is null".into()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(BpStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(BpStatus::InvalidUtf8, e.to_string()))
}

fn scheme(p: Prime, kind: BpScheme, beta_odd: bool, p0_odd: bool) -> CoproductScheme {
    match kind {
        BpScheme::Singer => CoproductScheme::singer(p),
        BpScheme::Geometric => CoproductScheme::geometric(p, beta_odd, p0_odd),
    }
}

fn checks_json(p: Prime, reports: &[CheckReport]) -> (String, bool) {
    let passed = reports.iter().all(CheckReport::passed);
    (to_json(&ChecksRecord { p: p.get(), passed, reports }), passed)
}

fn element_json(p: Prime, e: &Element) -> (String, bool) {
    (ElementRecord::new(p, e).to_json(), true)
}

/// Creates an engine for the odd prime `p`. A `fuel` of 0 selects the
/// default rewrite budget.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_engine_new(p: u32, fuel: u64, out: *mut *mut BpEngine) -> BpStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return BpStatus::NullPointer;
    }
    *out = ptr::null_mut();
    match Prime::new(p) {
        Ok(p) => {
            let fuel = if fuel == 0 { bp_engine::DEFAULT_FUEL } else { fuel };
            let alg = Algebra::with_options(p, Strategy::Leftmost, fuel);
            *out = Box::into_raw(Box::new(BpEngine { alg }));
            BpStatus::Ok
        }
        Err(e) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
    }
}

/// # Safety
/// `engine` must be null or a handle from [`bp_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_engine_free(engine: *mut BpEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// The prime an engine was built for, or 0 for a null handle.
///
/// # Safety
/// `engine` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_engine_prime(engine: *const BpEngine) -> u32 {
    engine.as_ref().map_or(0, |e| e.alg.prime().get())
}

/// Normal form of `expr` as `{"p":..,"terms":[..]}`.
///
/// # Safety
/// `engine` must be a live handle, `expr` a NUL-terminated string and
/// `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_normalize(engine: *const BpEngine, expr: *const c_char, out: *mut *mut c_char) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        let p = alg.prime();
        let e = parse_expression(text(expr)?, p).map_err(Error::from)?;
        Ok(element_json(p, &alg.normalize(&e)?))
    })
}

/// Normal form of the product `left * right`.
///
/// # Safety
/// As for [`bp_normalize`], with both strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bp_multiply(
    engine: *const BpEngine,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        let p = alg.prime();
        let x = parse_expression(text(left)?, p).map_err(Error::from)?;
        let y = parse_expression(text(right)?, p).map_err(Error::from)?;
        Ok(element_json(p, &alg.multiply(&x, &y)?))
    })
}

/// Admissible words of bidegree `(n, s)` as a JSON array of strings.
///
/// # Safety
/// `engine` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_basis(engine: *const BpEngine, n: u64, s: u64, out: *mut *mut c_char) -> BpStatus {
    guarded(out, || {
        let p = handle(engine)?.alg.prime();
        let words: Vec<String> =
            admissible_basis(p, n, s, &Grading::standard(p))?.iter().map(|m| m.to_string()).collect();
        Ok((to_json(&words), true))
    })
}

/// Normalized coproduct of `expr` under the chosen scheme. The parity flags
/// only matter for [`BpScheme::Geometric`].
///
/// # Safety
/// As for [`bp_normalize`].
#[no_mangle]
pub unsafe extern "C" fn bp_coproduct(
    engine: *const BpEngine,
    expr: *const c_char,
    kind: BpScheme,
    beta_odd: bool,
    p0_odd: bool,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        let p = alg.prime();
        let scheme = scheme(p, kind, beta_odd, p0_odd);
        let e = parse_expression(text(expr)?, p).map_err(Error::from)?;
        let t = coproduct(&e, &scheme, alg)?;
        let record = CoproductRecord { p: p.get(), scheme: scheme.name(), tensor: TensorRecord::new(p, &t) };
        Ok((to_json(&record), true))
    })
}

/// Checks every relation instance with `a, b <= max`, then counit and
/// coassociativity up to internal degree `n_max` and `s <= s_max` when the
/// scheme has a concrete grading. Returns `CheckFailed` on any violation.
///
/// # Safety
/// `engine` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_check_coproduct(
    engine: *const BpEngine,
    kind: BpScheme,
    beta_odd: bool,
    p0_odd: bool,
    max: u32,
    n_max: u64,
    s_max: u64,
    out: *mut *mut c_char,
) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        let p = alg.prime();
        let scheme = scheme(p, kind, beta_odd, p0_odd);
        let mut reports = check_relations(&scheme, alg, max, max, RelationSet::ALL, 1)?;
        if scheme.grading().is_standard(p) {
            for s in 0..=s_max {
                reports.push(check_counit(&scheme, alg, n_max, s)?);
            }
            reports.push(check_coassociativity(&scheme, alg, n_max, s_max)?);
        }
        Ok(checks_json(p, &reports))
    })
}

/// The four parity cases of `(b ⊗ P0 + P0 ⊗ b)^2`. `Ok` means the
/// obstruction was reproduced in every case.
///
/// # Safety
/// `engine` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_obstruction(engine: *const BpEngine, out: *mut *mut c_char) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        let cases = [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .map(|(b, t)| square_obstruction(alg, b, t))
            .collect::<Result<Vec<_>, _>>()?;
        let reproduced = cases.iter().all(ObstructionReport::reproduced);
        let verdict = if reproduced { "obstruction reproduced" } else { "obstruction not reproduced" };
        Ok((to_json(&ObstructionRecord { p: alg.prime().get(), verdict, cases: &cases }), reproduced))
    })
}

/// Squares `b P0 ⊗ P0 P0 + P0 P0 ⊗ b P0` and reports the trace.
///
/// # Safety
/// `engine` must be a live handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bp_cp_check(engine: *const BpEngine, out: *mut *mut c_char) -> BpStatus {
    guarded(out, || {
        let alg = &handle(engine)?.alg;
        Ok(checks_json(alg.prime(), &[cp_square_check(alg)?]))
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string produced here and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
