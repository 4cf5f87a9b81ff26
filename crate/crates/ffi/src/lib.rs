//! C ABI over `dicaut`.
//!
//! Every function returns a [`DicautStatus`]; on failure the message is
//! available from [`dicaut_last_error`] on the same thread. Groups are
//! opaque handles created by [`dicaut_group_new`] and released by
//! [`dicaut_group_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dicaut::census::{CensusOptions, Classifier, Provenance};
use dicaut::cayley::inverse_closed_log2;
use dicaut::{run_exhaustive, run_sampled, CensusRecord, CensusSummary, ConnectionSet, DicyclicGroup, Error, Verdict};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DicautStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    OutOfRange = 5,
    CapExceeded = 6,
    ContainmentViolation = 7,
    BufferTooSmall = 8,
    Aborted = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DicautVerdict {
    Equal = 0,
    ProperSupergroup = 1,
}

/// Opaque group handle.
pub struct DicautGroup {
    inner: DicyclicGroup,
}

/// One classified set. Orders above `u64::MAX` are reported as `u64::MAX`
/// with the matching `_saturated` flag set; the JSON form is exact.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct DicautClassification {
    pub aut_order: u64,
    pub aut_order_saturated: bool,
    pub b_order: u64,
    pub b_order_saturated: bool,
    pub verdict: DicautVerdict,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct DicautSummary {
    pub n: u64,
    pub m: u64,
    pub total: u64,
    pub exceptional: u64,
    pub proportion: f64,
    pub ci_halfwidth: f64,
    /// The ε fields below are meaningful only when this is set
    /// (exhaustive undirected runs).
    pub has_bound: bool,
    pub bound_log2: f64,
    pub vacuous: bool,
    pub satisfied: bool,
}

/// Receives each record as a NUL-terminated JSON line. A nonzero return
/// stops the run with `DICAUT_STATUS_ABORTED`.
pub type DicautRecordCallback = Option<unsafe extern "C" fn(record_json: *const c_char, user_data: *mut c_void) -> i32>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
    Ok(v) => v,
    Err(_) => panic!("version string"),
};

struct Failure(DicautStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => DicautStatus::Parse,
            Error::Domain(_) => DicautStatus::Domain,
            Error::DimensionMismatch { .. } | Error::CoordinateOutOfRange { .. } | Error::DegreeMismatch { .. } => {
                DicautStatus::OutOfRange
            }
            Error::CapExceeded { .. } => DicautStatus::CapExceeded,
            Error::ContainmentViolation { .. } => DicautStatus::ContainmentViolation,
            Error::Io(msg) if msg == ABORT_MSG => DicautStatus::Aborted,
            Error::Io(_) => DicautStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

const ABORT_MSG: &str = "record callback requested stop";

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DicautStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            DicautStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            DicautStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(DicautStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DicautStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn group_arg<'a>(g: *const DicautGroup) -> Result<&'a DicyclicGroup, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn saturate(v: &impl ToPrimitive) -> (u64, bool) {
    match v.to_u64() {
        Some(x) => (x, false),
        None => (u64::MAX, true),
    }
}

fn options(jobs: u32) -> CensusOptions {
    CensusOptions {
        jobs: if jobs == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            jobs as usize
        },
        ..CensusOptions::default()
    }
}

fn summary_out(s: &CensusSummary) -> DicautSummary {
    let (has_bound, bound_log2, vacuous, satisfied) = match (&s.epsilon, &s.bound) {
        (Some(e), Some(b)) => (true, e.bound_log2, e.vacuous, b.satisfied),
        _ => (false, 0.0, false, false),
    };
    DicautSummary {
        n: s.n as u64,
        m: s.m as u64,
        total: s.total,
        exceptional: s.exceptional,
        proportion: s.proportion,
        ci_halfwidth: s.ci_halfwidth,
        has_bound,
        bound_log2,
        vacuous,
        satisfied,
    }
}

fn record_sink(
    callback: DicautRecordCallback,
    user_data: *mut c_void,
) -> impl FnMut(&CensusRecord) -> dicaut::Result<()> {
    move |r| {
        let Some(cb) = callback else { return Ok(()) };
        let line = CString::new(r.to_json()).expect("JSON has no NUL");
        // SAFETY: the caller guarantees the callback is valid for the run.
        if unsafe { cb(line.as_ptr(), user_data) } != 0 {
            return Err(Error::Io(ABORT_MSG.into()));
        }
        Ok(())
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dicaut_version() -> *const c_char {
    VERSION.as_ptr()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dicaut_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a group spec such as `q8e:1` or `dic:C6:y=3`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_new(spec: *const c_char, out: *mut *mut DicautGroup) -> DicautStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g: DicyclicGroup = str_arg(spec)?.parse()?;
        out.write(Box::into_raw(Box::new(DicautGroup { inner: g })));
        Ok(())
    })
}

/// Releases a handle from [`dicaut_group_new`]. Null is ignored.
///
/// # Safety
/// `group` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_free(group: *mut DicautGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Writes the canonical spec string into `buf` (NUL-terminated). `needed`,
/// if non-null, receives the required size including the NUL.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_spec(
    group: *const DicautGroup,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> DicautStatus {
    guard(|| {
        let g = group_arg(group)?;
        copy_string(&g.spec(), buf, len, needed)
    })
}

/// `n = |R|`.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_order(group: *const DicautGroup, out: *mut u64) -> DicautStatus {
    guard(|| write_out(out, group_arg(group)?.order() as u64))
}

/// `m`, the number of elements of order at most 2.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_m(group: *const DicautGroup, out: *mut u64) -> DicautStatus {
    guard(|| write_out(out, group_arg(group)?.element_order_le2_count() as u64))
}

/// Whether the group is isomorphic to `Q8 × C2^ℓ`.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_is_q8e(group: *const DicautGroup, out: *mut bool) -> DicautStatus {
    guard(|| write_out(out, group_arg(group)?.is_q8_x_c2l()))
}

/// log₂ of the number of inverse-closed subsets.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dicaut_group_inverse_closed_log2(group: *const DicautGroup, out: *mut u64) -> DicautStatus {
    guard(|| write_out(out, inverse_closed_log2(group_arg(group)?)))
}

unsafe fn classify_record(
    group: *const DicautGroup,
    set_hex: *const c_char,
    directed: bool,
) -> Result<CensusRecord, Failure> {
    let g = group_arg(group)?;
    let s = ConnectionSet::from_hex(g.order(), str_arg(set_hex)?)?;
    // Timing is off so that a size query and the following call agree.
    Ok(Classifier::new(g, directed)
        .with_timing(false)
        .classify(&s, Provenance::Adhoc)?)
}

/// Classifies the set given as a lowercase hex bitmask (bit i = element i).
///
/// # Safety
/// `group` must be a live handle, `set_hex` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dicaut_classify(
    group: *const DicautGroup,
    set_hex: *const c_char,
    directed: bool,
    out: *mut DicautClassification,
) -> DicautStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let r = classify_record(group, set_hex, directed)?;
        let (aut_order, aut_order_saturated) = saturate(&r.aut_order);
        let (b_order, b_order_saturated) = saturate(&r.b_order);
        let verdict = match r.verdict {
            Verdict::Equal => DicautVerdict::Equal,
            Verdict::ProperSupergroup => DicautVerdict::ProperSupergroup,
        };
        write_out(
            out,
            DicautClassification {
                aut_order,
                aut_order_saturated,
                b_order,
                b_order_saturated,
                verdict,
            },
        )
    })
}

/// As [`dicaut_classify`], writing the JSON record into `buf`. The record's
/// `elapsed_us` is always 0 here.
/// Returns `DICAUT_STATUS_BUFFER_TOO_SMALL` with `*needed` set when `len`
/// is insufficient.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn dicaut_classify_json(
    group: *const DicautGroup,
    set_hex: *const c_char,
    directed: bool,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> DicautStatus {
    guard(|| {
        let r = classify_record(group, set_hex, directed)?;
        copy_string(&r.to_json(), buf, len, needed)
    })
}

unsafe fn copy_string(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    let size = s.len() + 1;
    if !needed.is_null() {
        needed.write(size);
    }
    if len < size {
        return Err(Failure(
            DicautStatus::BufferTooSmall,
            format!("buffer of {len} bytes, {size} needed"),
        ));
    }
    if buf.is_null() {
        return Err(null());
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Classifies every inverse-closed set (or every subset when `directed`).
/// `jobs == 0` uses the available parallelism. `callback` may be null.
///
/// # Safety
/// `group` must be a live handle and `out` valid; `callback` must be safe
/// to call with `user_data` from the calling thread.
#[no_mangle]
pub unsafe extern "C" fn dicaut_census_exhaustive(
    group: *const DicautGroup,
    directed: bool,
    jobs: u32,
    callback: DicautRecordCallback,
    user_data: *mut c_void,
    out: *mut DicautSummary,
) -> DicautStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = group_arg(group)?;
        let mut sink = record_sink(callback, user_data);
        let s = run_exhaustive(g, directed, &options(jobs), &mut sink)?;
        write_out(out, summary_out(&s))
    })
}

/// `trials` seeded uniform draws.
///
/// # Safety
/// As for [`dicaut_census_exhaustive`].
#[no_mangle]
pub unsafe extern "C" fn dicaut_census_sampled(
    group: *const DicautGroup,
    trials: u64,
    seed: u64,
    directed: bool,
    jobs: u32,
    callback: DicautRecordCallback,
    user_data: *mut c_void,
    out: *mut DicautSummary,
) -> DicautStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = group_arg(group)?;
        let mut sink = record_sink(callback, user_data);
        let s = run_sampled(g, trials, seed, directed, &options(jobs), &mut sink)?;
        write_out(out, summary_out(&s))
    })
}
