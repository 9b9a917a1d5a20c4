//! C ABI over `pnil-core`.
//!
//! Rings and groups are opaque handles created by `*_from_spec` or
//! `*_from_json` and released with the matching `*_free`. Every fallible
//! call returns a [`PnilStatus`]; on failure the message is available from
//! [`pnil_last_error`]. Strings handed out by the library are released with
//! [`pnil_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pnil_core::corpus::CorpusManifest;
use pnil_core::group::{builtin_group, FiniteGroup, DEFAULT_SUBGROUP_BOUND};
use pnil_core::morphisms::{aut_group, DEFAULT_AUT_BOUND, DEFAULT_AUT_COUNT_BOUND};
use pnil_core::ring::{builtin_ring, FiniteRing};
use pnil_core::runner::{parse_checks, run, to_json_lines, RunOptions, Summary};
use pnil_core::verify::{GroupProfile, RingProfile, VerifyConfig};
use pnil_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PnilStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidStructure = 4,
    BudgetExceeded = 5,
    HypothesisViolation = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque ring handle.
pub struct PnilRing {
    ring: FiniteRing,
}

/// Opaque group handle.
pub struct PnilGroup {
    group: FiniteGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PnilStatus {
    match e {
        Error::InvalidArgument(_) => PnilStatus::InvalidArgument,
        Error::Parse(_) | Error::Json(_) => PnilStatus::Parse,
        Error::InvalidElement(_) | Error::InvalidRing(_) | Error::InvalidGroup(_) => PnilStatus::InvalidStructure,
        Error::BudgetExceeded { .. } => PnilStatus::BudgetExceeded,
        Error::HypothesisViolation(_) => PnilStatus::HypothesisViolation,
        Error::Io { .. } => PnilStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), PnilStatus>) -> PnilStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => PnilStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            PnilStatus::Panic
        }
    }
}

fn core<T>(r: pnil_core::Result<T>) -> Result<T, PnilStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PnilStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PnilStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        PnilStatus::InvalidArgument
    })
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn out_ptr<'a, T>(out: *mut T) -> Result<&'a mut T, PnilStatus> {
    out.as_mut().ok_or_else(|| {
        set_error("null output pointer");
        PnilStatus::NullPointer
    })
}

/// # Safety
/// `h` must be null or a live handle from this library.
unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, PnilStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("null handle");
        PnilStatus::NullPointer
    })
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pnil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pnil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a ring from a builtin spec such as `3z27`.
///
/// # Safety
/// `spec` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_from_spec(spec: *const c_char, out: *mut *mut PnilRing) -> PnilStatus {
    guard(|| {
        let spec = read_str(spec)?;
        let out = out_ptr(out)?;
        let ring = core(builtin_ring(spec))?;
        *out = Box::into_raw(Box::new(PnilRing { ring }));
        Ok(())
    })
}

/// Builds a ring from `{"p": .., "exps": [..], "mul": [[[..]]]}`.
///
/// # Safety
/// `json` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_from_json(json: *const c_char, out: *mut *mut PnilRing) -> PnilStatus {
    guard(|| {
        let json = read_str(json)?;
        let out = out_ptr(out)?;
        let ring = core(FiniteRing::from_json(json))?;
        *out = Box::into_raw(Box::new(PnilRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_free(ring: *mut PnilRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Writes the number of elements.
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_order(ring: *const PnilRing, out: *mut usize) -> PnilStatus {
    guard(|| {
        *out_ptr(out)? = handle(ring)?.ring.order();
        Ok(())
    })
}

/// Writes the p-nil flags: bit 0 left, bit 1 right.
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_p_nil_flags(ring: *const PnilRing, out: *mut u32) -> PnilStatus {
    guard(|| {
        let r = &handle(ring)?.ring;
        *out_ptr(out)? = r.is_left_p_nil() as u32 | (r.is_right_p_nil() as u32) << 1;
        Ok(())
    })
}

/// The ring profile as a JSON object; release with `pnil_string_free`.
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_ring_profile_json(ring: *const PnilRing, out: *mut *mut c_char) -> PnilStatus {
    guard(|| {
        let profile = RingProfile::of(&handle(ring)?.ring);
        *out_ptr(out)? = give_string(serde_json::to_string(&profile).expect("profile serializes"));
        Ok(())
    })
}

/// Builds a group from a builtin spec such as `q8` or `c4xc2`.
///
/// # Safety
/// `spec` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_from_spec(spec: *const c_char, out: *mut *mut PnilGroup) -> PnilStatus {
    guard(|| {
        let spec = read_str(spec)?;
        let out = out_ptr(out)?;
        let group = core(builtin_group(spec))?;
        *out = Box::into_raw(Box::new(PnilGroup { group }));
        Ok(())
    })
}

/// Builds a group from a Cayley table or permutation-generator JSON file body.
///
/// # Safety
/// `json` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_from_json(json: *const c_char, out: *mut *mut PnilGroup) -> PnilStatus {
    guard(|| {
        let json = read_str(json)?;
        let out = out_ptr(out)?;
        let group = core(FiniteGroup::from_json(json))?;
        *out = Box::into_raw(Box::new(PnilGroup { group }));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_free(group: *mut PnilGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Writes the number of elements.
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_order(group: *const PnilGroup, out: *mut usize) -> PnilStatus {
    guard(|| {
        *out_ptr(out)? = handle(group)?.group.order();
        Ok(())
    })
}

/// The p-group profile as a JSON object; release with `pnil_string_free`.
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_profile_json(group: *const PnilGroup, out: *mut *mut c_char) -> PnilStatus {
    guard(|| {
        let profile = core(GroupProfile::of(&handle(group)?.group, DEFAULT_SUBGROUP_BOUND))?;
        *out_ptr(out)? = give_string(serde_json::to_string(&profile).expect("profile serializes"));
        Ok(())
    })
}

/// `|Aut(G)|`; `bound` caps the group order searched (0 selects the default).
///
/// # Safety
/// The handle must be null or live; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_group_aut_order(group: *const PnilGroup, bound: usize, out: *mut usize) -> PnilStatus {
    guard(|| {
        let bound = if bound == 0 { DEFAULT_AUT_BOUND } else { bound };
        let aut = core(aut_group(&handle(group)?.group, bound, DEFAULT_AUT_COUNT_BOUND))?;
        *out_ptr(out)? = aut.order();
        Ok(())
    })
}

/// Runs checks over a manifest (null selects the builtin corpus). `checks`
/// is a comma list or null for all. Writes the JSON-lines report and the
/// number of non-probe failures.
///
/// # Safety
/// `manifest_json` and `checks` must be null or valid C strings; `report`
/// and `failures` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pnil_verify(
    manifest_json: *const c_char,
    checks: *const c_char,
    jobs: usize,
    report: *mut *mut c_char,
    failures: *mut usize,
) -> PnilStatus {
    guard(|| {
        let manifest = if manifest_json.is_null() {
            CorpusManifest::default_corpus()
        } else {
            core(CorpusManifest::from_json(read_str(manifest_json)?))?
        };
        let checks = if checks.is_null() { "all" } else { read_str(checks)? };
        let report = out_ptr(report)?;
        let failures = out_ptr(failures)?;
        let opts = RunOptions {
            checks: core(parse_checks(checks))?,
            config: VerifyConfig::default(),
            jobs: jobs.max(1),
        };
        let reports = core(manifest.instances().and_then(|i| run(&i, &opts)))?;
        *failures = Summary::of(&reports).failures();
        *report = give_string(to_json_lines(&reports));
        Ok(())
    })
}
