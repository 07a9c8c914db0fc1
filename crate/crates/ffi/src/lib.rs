//! C interface to `hbknot`.
//!
//! Knots live behind the opaque [`HbkKnot`] handle. Every fallible function
//! returns an [`HbkStatus`]; on failure a description is available from
//! [`hbk_last_error`] until the next call on the same thread. Strings
//! returned by the library are freed with [`hbk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hbknot::classify::{self, JsjType, Mcg};
use hbknot::cli::invariants_output;
use hbknot::emknot::{canonicalize, mirror};
use hbknot::equivalence;
use hbknot::invariants::{characteristic_slopes, SlopeData};
use hbknot::verify::{self, Suite};
use hbknot::{Error, HandlebodyKnot, ProjRat};

/// Opaque handle to a validated handlebody-knot.
pub struct HbkKnot(HandlebodyKnot);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParams = 4,
    Overflow = 5,
    Precondition = 6,
    RequiresTypeK = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbkJsjType {
    M = 0,
    K = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbkMcg {
    Z2 = 0,
    Z2xZ2 = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbkSuite {
    Lemmas = 0,
    Oracles = 1,
    Collisions = 2,
    All = 3,
}

/// `num/den` in lowest terms with `den >= 0`; `1/0` is ∞.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HbkRational {
    pub num: i64,
    pub den: i64,
}

/// Slope invariants. Type M fills `r_a`, `r_b`; type K fills `r1`, `r2`,
/// `r_c`. Unused fields are `0/0`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HbkSlopes {
    pub jsj_type: HbkJsjType,
    pub r_a: HbkRational,
    pub r_b: HbkRational,
    pub r1: HbkRational,
    pub r2: HbkRational,
    pub r_c: HbkRational,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HbkVerifyResult {
    pub passed: bool,
    pub checks: u64,
    pub violations: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HbkStatus {
    match e {
        Error::Overflow => HbkStatus::Overflow,
        Error::InvalidParams { .. } => HbkStatus::InvalidParams,
        Error::Parse(_) => HbkStatus::Parse,
        Error::Precondition(_) | Error::NoRotation(_) => HbkStatus::Precondition,
        Error::RequiresTypeK => HbkStatus::RequiresTypeK,
        Error::Indeterminate
        | Error::InfiniteResidue
        | Error::UnexpectedInfinity(_)
        | Error::Internal(_) => HbkStatus::Internal,
    }
}

/// Runs `f`, records any error or panic and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), HbkStatus>) -> HbkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HbkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_last_error("panic inside hbknot".into());
            HbkStatus::Internal
        }
    }
}

fn lib<T>(r: hbknot::Result<T>) -> Result<T, HbkStatus> {
    r.map_err(|e| {
        set_last_error(e.to_string());
        status_of(&e)
    })
}

fn fail<T>(status: HbkStatus, msg: &str) -> Result<T, HbkStatus> {
    set_last_error(msg.into());
    Err(status)
}

unsafe fn knot_ref<'a>(k: *const HbkKnot) -> Result<&'a HandlebodyKnot, HbkStatus> {
    match k.as_ref() {
        Some(k) => Ok(&k.0),
        None => fail(HbkStatus::NullPointer, "null knot handle"),
    }
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, HbkStatus> {
    match p.as_mut() {
        Some(p) => Ok(p),
        None => fail(HbkStatus::NullPointer, "null output pointer"),
    }
}

fn boxed(k: HandlebodyKnot) -> *mut HbkKnot {
    Box::into_raw(Box::new(HbkKnot(k)))
}

fn rational(r: ProjRat) -> Result<HbkRational, HbkStatus> {
    match (i64::try_from(r.num()), i64::try_from(r.den())) {
        (Ok(num), Ok(den)) => Ok(HbkRational { num, den }),
        _ => fail(HbkStatus::Overflow, &format!("{r} does not fit in 64 bits")),
    }
}

fn c_string(s: String) -> Result<*mut c_char, HbkStatus> {
    match CString::new(s) {
        Ok(c) => Ok(c.into_raw()),
        Err(_) => fail(HbkStatus::Internal, "string contains a NUL byte"),
    }
}

/// Parses `R:l,m,n,p` or `L:m,n,p` into a new handle.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_parse(spec: *const c_char, out: *mut *mut HbkKnot) -> HbkStatus {
    guard(|| {
        let out = out_ref(out)?;
        if spec.is_null() {
            return fail(HbkStatus::NullPointer, "null spec");
        }
        let s = match CStr::from_ptr(spec).to_str() {
            Ok(s) => s,
            Err(_) => return fail(HbkStatus::InvalidUtf8, "spec is not UTF-8"),
        };
        *out = boxed(lib(s.parse())?);
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_new_right(
    l: i64,
    m: i64,
    n: i64,
    p: i64,
    out: *mut *mut HbkKnot,
) -> HbkStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = boxed(lib(HandlebodyKnot::right(l, m, n, p))?);
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_new_left(m: i64, n: i64, p: i64, out: *mut *mut HbkKnot) -> HbkStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = boxed(lib(HandlebodyKnot::left(m, n, p))?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `knot` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_free(knot: *mut HbkKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// Writes `l, m, n, p` and whether the knot is a left knot (whose `l` is a
/// placeholder).
///
/// # Safety
/// `knot` must be a live handle and `params` point to four `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_params(
    knot: *const HbkKnot,
    params: *mut i64,
    is_left: *mut bool,
) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        if params.is_null() {
            return fail(HbkStatus::NullPointer, "null params");
        }
        let left = out_ref(is_left)?;
        let q = k.params();
        ptr::copy_nonoverlapping([q.l, q.m, q.n, q.p].as_ptr(), params, 4);
        *left = k.is_left();
        Ok(())
    })
}

/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_jsj_type(knot: *const HbkKnot, out: *mut HbkJsjType) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        *out = match lib(classify::jsj_type(k))? {
            JsjType::TypeM => HbkJsjType::M,
            JsjType::TypeK => HbkJsjType::K,
        };
        Ok(())
    })
}

/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_mcg(knot: *const HbkKnot, out: *mut HbkMcg) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        *out = match lib(classify::mcg(k))? {
            Mcg::Z2 => HbkMcg::Z2,
            Mcg::Z2xZ2 => HbkMcg::Z2xZ2,
        };
        Ok(())
    })
}

/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_slopes(knot: *const HbkKnot, out: *mut HbkSlopes) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        let none = HbkRational::default();
        *out = match lib(characteristic_slopes(k))? {
            SlopeData::TypeM { r_a, r_b } => HbkSlopes {
                jsj_type: HbkJsjType::M,
                r_a: rational(r_a)?,
                r_b: rational(r_b)?,
                r1: none,
                r2: none,
                r_c: none,
            },
            SlopeData::TypeK { r1, r2, r_c } => HbkSlopes {
                jsj_type: HbkJsjType::K,
                r_a: none,
                r_b: none,
                r1: rational(r1)?,
                r2: rational(r2)?,
                r_c: rational(r_c)?,
            },
        };
        Ok(())
    })
}

/// New handle for the left form of a type K knot (a copy otherwise).
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_canonicalize(knot: *const HbkKnot, out: *mut *mut HbkKnot) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        *out = boxed(lib(canonicalize(k))?);
        Ok(())
    })
}

/// New handle for the mirror image.
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_mirror(knot: *const HbkKnot, out: *mut *mut HbkKnot) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        *out = boxed(lib(mirror(k))?);
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_equivalent(a: *const HbkKnot, b: *const HbkKnot, out: *mut bool) -> HbkStatus {
    guard(|| {
        let (a, b) = (knot_ref(a)?, knot_ref(b)?);
        let out = out_ref(out)?;
        *out = lib(equivalence::equivalent(a, b))?.equivalent;
        Ok(())
    })
}

/// Whether `b` is equivalent to the mirror image of `a`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_mirror_equivalent(
    a: *const HbkKnot,
    b: *const HbkKnot,
    out: *mut bool,
) -> HbkStatus {
    guard(|| {
        let (a, b) = (knot_ref(a)?, knot_ref(b)?);
        let out = out_ref(out)?;
        *out = lib(equivalence::mirror_equivalent(a, b))?.equivalent;
        Ok(())
    })
}

/// Type K knots only; returns `RequiresTypeK` otherwise.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_exteriors_homeomorphic(
    a: *const HbkKnot,
    b: *const HbkKnot,
    out: *mut bool,
) -> HbkStatus {
    guard(|| {
        let (a, b) = (knot_ref(a)?, knot_ref(b)?);
        let out = out_ref(out)?;
        *out = lib(equivalence::exteriors_homeomorphic(a, b))?;
        Ok(())
    })
}

/// `R:l,m,n,p` or `L:m,n,p`. Free with [`hbk_string_free`].
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_to_string(knot: *const HbkKnot, out: *mut *mut c_char) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        *out = c_string(k.to_string())?;
        Ok(())
    })
}

/// The JSON document printed by `hbk --format json invariants`. Free with
/// [`hbk_string_free`].
///
/// # Safety
/// `knot` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_knot_invariants_json(knot: *const HbkKnot, out: *mut *mut c_char) -> HbkStatus {
    guard(|| {
        let k = knot_ref(knot)?;
        let out = out_ref(out)?;
        let doc = lib(invariants_output(k))?;
        match serde_json::to_string(&doc) {
            Ok(s) => *out = c_string(s)?,
            Err(e) => return fail(HbkStatus::Internal, &e.to_string()),
        }
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hbk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs verification suites. `bound <= 0` selects each suite's default.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hbk_verify(suite: HbkSuite, bound: i64, out: *mut HbkVerifyResult) -> HbkStatus {
    guard(|| {
        let out = out_ref(out)?;
        let suite = match suite {
            HbkSuite::Lemmas => Suite::Lemmas,
            HbkSuite::Oracles => Suite::Oracles,
            HbkSuite::Collisions => Suite::Collisions,
            HbkSuite::All => Suite::All,
        };
        let reports = lib(verify::run(suite, (bound > 0).then_some(bound)))?;
        *out = HbkVerifyResult {
            passed: reports.iter().all(|r| r.passed()),
            checks: reports.iter().map(|r| r.checks.len() as u64).sum(),
            violations: reports.iter().map(|r| r.violation_count() as u64).sum(),
        };
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn hbk_status_message(status: HbkStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HbkStatus::Ok => c"ok",
        HbkStatus::NullPointer => c"null pointer argument",
        HbkStatus::InvalidUtf8 => c"string is not valid UTF-8",
        HbkStatus::Parse => c"could not parse knot specification",
        HbkStatus::InvalidParams => c"parameters violate the admissibility constraints",
        HbkStatus::Overflow => c"integer overflow",
        HbkStatus::Precondition => c"precondition not met",
        HbkStatus::RequiresTypeK => c"operation requires type K knots",
        HbkStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Details of the last failure on this thread, or null. Valid until the next
/// call into the library on the same thread.
#[no_mangle]
pub extern "C" fn hbk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
