//! C ABI for equivch.
//!
//! Every entry point returns an `EquivchStatus`; results come back through out
//! parameters. Rationals cross the boundary as NUL-terminated `"p/q"` or
//! decimal strings. On failure, `equivch_last_error` describes what went wrong
//! on the calling thread. Strings returned through `char **` are owned by the
//! caller and released with `equivch_string_free`; handles are released with
//! their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use equivch::assembler::{default_window, predict_closed_form, run_pipeline, GradingParams};
use equivch::cli::{assembly_error_code, profile_error_code, squeeze_error_code, EXIT_DEGENERATE, EXIT_MISMATCH};
use equivch::complexes::HomologyTable;
use equivch::groupring::PrimeModulus;
use equivch::ladder::{propagate_units, validate_commutativity, CommutativityVerdict, LadderSpec};
use equivch::profiles::{build_standard_profile, extract_orbits, filter_window, PLProfile, StandardFamilyParams};
use equivch::rational::Rational;
use equivch::squeeze::{certify_nonsqueezing, room_report};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Degenerate = 3,
    Mismatch = 4,
    Panic = 5,
}

/// A validated piecewise-linear profile.
pub struct EquivchProfile {
    inner: PLProfile,
}

/// A homology table over a closed degree window.
pub struct EquivchHomology {
    inner: HomologyTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Error {
    status: EquivchStatus,
    message: String,
}

impl Error {
    fn new(status: EquivchStatus, message: impl Into<String>) -> Self {
        Error { status, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Error::new(EquivchStatus::InvalidInput, message)
    }

    fn from_code(code: i32, message: String) -> Self {
        let status = match code {
            EXIT_DEGENERATE => EquivchStatus::Degenerate,
            EXIT_MISMATCH => EquivchStatus::Mismatch,
            _ => EquivchStatus::InvalidInput,
        };
        Error::new(status, message)
    }
}

impl From<equivch::profiles::ProfileError> for Error {
    fn from(e: equivch::profiles::ProfileError) -> Self {
        Error::from_code(profile_error_code(&e), e.to_string())
    }
}

impl From<equivch::assembler::AssemblyError> for Error {
    fn from(e: equivch::assembler::AssemblyError) -> Self {
        Error::from_code(assembly_error_code(&e), e.to_string())
    }
}

impl From<equivch::complexes::ComplexError> for Error {
    fn from(e: equivch::complexes::ComplexError) -> Self {
        equivch::assembler::AssemblyError::from(e).into()
    }
}

impl From<equivch::squeeze::SqueezeError> for Error {
    fn from(e: equivch::squeeze::SqueezeError) -> Self {
        Error::from_code(squeeze_error_code(&e), e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any error or panic, and converts the outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> EquivchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            EquivchStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(_) => {
            set_last_error("internal panic");
            EquivchStatus::Panic
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error::new(EquivchStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Error::input(format!("{what} is not UTF-8")))
}

/// # Safety
/// As for `read_str`.
unsafe fn read_rational(s: *const c_char, what: &str) -> Result<Rational, Error> {
    read_str(s, what)?.parse().map_err(|e| Error::input(format!("{what}: {e}")))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error::new(EquivchStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_json(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string(v).map_err(|e| Error::input(e.to_string()))?;
    let c = CString::new(text).map_err(|e| Error::input(e.to_string()))?;
    if out.is_null() {
        return Err(Error::new(EquivchStatus::NullPointer, "output pointer is null"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// # Safety
/// `p` must be null or a live handle from this library.
unsafe fn profile_ref<'a>(p: *const EquivchProfile) -> Result<&'a PLProfile, Error> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| Error::new(EquivchStatus::NullPointer, "profile handle is null"))
}

/// Message for the most recent failure on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn equivch_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn equivch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer previously returned through a `char **` out
/// parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equivch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a profile document `{"corners": [["u", "y"], ...], "plateau": "y"}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_profile_from_json(json: *const c_char, out: *mut *mut EquivchProfile) -> EquivchStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner: PLProfile = serde_json::from_str(text).map_err(|e| Error::input(e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(EquivchProfile { inner })))
    })
}

/// Builds the three-piece standard profile on `B(radius)`.
///
/// # Safety
/// The string arguments must be valid NUL-terminated strings; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_profile_standard(
    radius: *const c_char,
    delta: *const c_char,
    c: *const c_char,
    out: *mut *mut EquivchProfile,
) -> EquivchStatus {
    guard(|| {
        let params =
            StandardFamilyParams::new(read_rational(radius, "radius")?, read_rational(delta, "delta")?, read_rational(c, "c")?);
        let inner = build_standard_profile(&params)?;
        write_out(out, Box::into_raw(Box::new(EquivchProfile { inner })))
    })
}

/// Serializes a profile to its JSON document.
///
/// # Safety
/// `profile` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_profile_to_json(profile: *const EquivchProfile, out: *mut *mut c_char) -> EquivchStatus {
    guard(|| {
        let p = profile_ref(profile)?;
        write_json(out, &serde_json::to_value(p).map_err(|e| Error::input(e.to_string()))?)
    })
}

/// Releases a profile handle. Null is ignored.
///
/// # Safety
/// `profile` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equivch_profile_free(profile: *mut EquivchProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Orbit families on `B(radius)` as a JSON array. `epsilon` may be null for no window.
///
/// # Safety
/// `profile` must be a live handle; `radius` a valid string; `epsilon` null or
/// a valid string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_orbits_json(
    profile: *const EquivchProfile,
    radius: *const c_char,
    epsilon: *const c_char,
    out: *mut *mut c_char,
) -> EquivchStatus {
    guard(|| {
        let p = profile_ref(profile)?;
        let r = read_rational(radius, "radius")?;
        let mut orbits = extract_orbits(p, &r)?;
        if !epsilon.is_null() {
            orbits = filter_window(&orbits, &read_rational(epsilon, "epsilon")?)?;
        }
        write_json(out, &serde_json::to_value(orbits).map_err(|e| Error::input(e.to_string()))?)
    })
}

/// Runs the pipeline on `profile` and computes homology over `[lo, hi]`. If
/// `lo > hi` the default window for `n` and `radius` is used.
///
/// # Safety
/// `profile` must be a live handle; `radius` and `epsilon` valid strings;
/// `out` valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn equivch_homology_compute(
    profile: *const EquivchProfile,
    n: u32,
    k: u32,
    radius: *const c_char,
    epsilon: *const c_char,
    lo: i64,
    hi: i64,
    equivariant: bool,
    out: *mut *mut EquivchHomology,
) -> EquivchStatus {
    guard(|| {
        let p = profile_ref(profile)?;
        if n == 0 {
            return Err(Error::input("n must be positive"));
        }
        let modulus = PrimeModulus::new(k).map_err(|e| Error::input(e.to_string()))?;
        let r = read_rational(radius, "radius")?;
        let eps = read_rational(epsilon, "epsilon")?;
        let outcome = run_pipeline(p, &r, &eps, &GradingParams::new(n, modulus))?;
        let (lo, hi) = if lo > hi { default_window(n, &r) } else { (lo, hi) };
        let inner =
            if equivariant { outcome.complex.equivariant_homology(lo, hi)? } else { outcome.complex.homology(lo, hi)? };
        write_out(out, Box::into_raw(Box::new(EquivchHomology { inner })))
    })
}

/// Dimension over `Z_k` in `degree`; zero outside the window.
///
/// # Safety
/// `h` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_homology_dim(h: *const EquivchHomology, degree: i64, out: *mut usize) -> EquivchStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| Error::new(EquivchStatus::NullPointer, "homology handle is null"))?;
        write_out(out, h.inner.dim(degree))
    })
}

/// The degree window of a homology table.
///
/// # Safety
/// `h` must be a live handle; `lo` and `hi` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_homology_window(h: *const EquivchHomology, lo: *mut i64, hi: *mut i64) -> EquivchStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| Error::new(EquivchStatus::NullPointer, "homology handle is null"))?;
        write_out(lo, h.inner.window.0)?;
        write_out(hi, h.inner.window.1)
    })
}

/// Releases a homology handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn equivch_homology_free(h: *mut EquivchHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The unique degree `-n - 2n[1/R]` carrying non-equivariant homology.
///
/// # Safety
/// `radius` must be a valid string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_predicted_degree(n: u32, radius: *const c_char, out: *mut i64) -> EquivchStatus {
    guard(|| {
        let p = predict_closed_form(n, &read_rational(radius, "radius")?)?;
        write_out(out, p.noneq_degree)
    })
}

/// Non-squeezing certificate as JSON. `k = 0` searches for the prime.
///
/// # Safety
/// `r1` and `r2` must be valid strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_certify_json(
    n: u32,
    r1: *const c_char,
    r2: *const c_char,
    k: u32,
    out: *mut *mut c_char,
) -> EquivchStatus {
    guard(|| {
        let cert = certify_nonsqueezing(n, &read_rational(r1, "R1")?, &read_rational(r2, "R2")?, (k != 0).then_some(k))?;
        write_json(out, &serde_json::to_value(cert).map_err(|e| Error::input(e.to_string()))?)
    })
}

/// Squeezing-room report as JSON.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_room_json(m: u64, kappa: u64, b: u64, out: *mut *mut c_char) -> EquivchStatus {
    guard(|| {
        let r = room_report(m, kappa, b)?;
        write_json(out, &serde_json::to_value(r).map_err(|e| Error::input(e.to_string()))?)
    })
}

/// Checks a ladder document. Writes the verdict as JSON and returns
/// `EQUIVCH_STATUS_MISMATCH` for a non-commuting ladder or a counterexample.
///
/// # Safety
/// `json` must be a valid string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn equivch_ladder_check_json(json: *const c_char, out: *mut *mut c_char) -> EquivchStatus {
    guard(|| {
        let l: LadderSpec = serde_json::from_str(read_str(json, "json")?).map_err(|e| Error::input(e.to_string()))?;
        let c = validate_commutativity(&l).map_err(|e| Error::input(e.to_string()))?;
        let units = match c {
            CommutativityVerdict::Ok => Some(propagate_units(&l).map_err(|e| Error::input(e.to_string()))?),
            CommutativityVerdict::FailingSquare { .. } => None,
        };
        let valid = c == CommutativityVerdict::Ok && !units.is_some_and(|u| u.is_counterexample());
        write_json(out, &serde_json::json!({ "commutativity": c, "units": units, "valid": valid }))?;
        if valid {
            Ok(())
        } else {
            Err(Error::new(EquivchStatus::Mismatch, "ladder fails commutativity or unit propagation"))
        }
    })
}
