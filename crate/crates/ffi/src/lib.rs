//! C ABI over `sqdist`.
//!
//! Partitions live behind the opaque [`SqdistPartition`] handle. Every
//! fallible call returns a [`SqdistStatus`]; on failure a description is
//! available from [`sqdist_last_error`] on the same thread. Strings handed
//! out by the library are freed with [`sqdist_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use sqdist::charpoly::RootSign;
use sqdist::{Error, Partition};

/// Opaque partition handle.
pub struct SqdistPartition(Partition);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqdistStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidPartition = 2,
    InvalidArgument = 3,
    DomainError = 4,
    VerificationFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SqdistShape {
    pub n: usize,
    pub t: usize,
    pub h: usize,
    pub s: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SqdistInertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

/// `value` lies in `[lo, hi]`; `lo == hi` means the value is exact.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqdistRoot {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

/// `value = integer_part + 2 * theta.value` when `has_theta`, else
/// `integer_part`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqdistEnergy {
    pub integer_part: i64,
    pub has_theta: bool,
    pub theta: SqdistRoot,
    pub value: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqdistSweep {
    pub partitions: usize,
    pub failures: usize,
    pub worst_eigenvalue_deviation: f64,
    pub worst_energy_deviation: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> SqdistStatus {
    match err {
        Error::EmptyInput
        | Error::PartCountBelowTwo(_)
        | Error::NonPositivePart(_)
        | Error::Parse { .. } => SqdistStatus::InvalidPartition,
        Error::InfeasibleParameters(_) => SqdistStatus::InvalidArgument,
        _ => SqdistStatus::DomainError,
    }
}

/// Runs `f`, recording any error or panic for [`sqdist_last_error`].
fn guard(f: impl FnOnce() -> Result<(), (SqdistStatus, String)>) -> SqdistStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqdistStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            SqdistStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SqdistStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (SqdistStatus, String) {
    (SqdistStatus::NullPointer, format!("{name} is null"))
}

/// # Safety
/// `handle` is null or a live pointer from this library.
unsafe fn handle_ref<'a>(
    handle: *const SqdistPartition,
) -> Result<&'a Partition, (SqdistStatus, String)> {
    handle
        .as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| null("partition"))
}

/// # Safety
/// `out` is null or valid for writes of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (SqdistStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library strings have no nul bytes")
        .into_raw()
}

fn root(r: sqdist::IsolatedRoot) -> SqdistRoot {
    SqdistRoot {
        value: r.value,
        lo: r.lo,
        hi: r.hi,
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sqdist_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn sqdist_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a partition from `len` part sizes; order does not matter.
///
/// # Safety
/// `parts` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_partition_new(
    parts: *const usize,
    len: usize,
    out: *mut *mut SqdistPartition,
) -> SqdistStatus {
    guard(|| {
        if parts.is_null() && len > 0 {
            return Err(null("parts"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(parts, len)
        };
        let p = Partition::new(slice).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(SqdistPartition(p))))
    })
}

/// Parses a comma-separated list such as `"3,2,2"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_partition_parse(
    text: *const c_char,
    out: *mut *mut SqdistPartition,
) -> SqdistStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            (
                SqdistStatus::InvalidPartition,
                "text is not UTF-8".to_string(),
            )
        })?;
        let p: Partition = s.parse().map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(SqdistPartition(p))))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `handle` is null or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn sqdist_partition_free(handle: *mut SqdistPartition) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_partition_shape(
    handle: *const SqdistPartition,
    out: *mut SqdistShape,
) -> SqdistStatus {
    guard(|| {
        let p = handle_ref(handle)?;
        write_out(
            out,
            SqdistShape {
                n: p.n(),
                t: p.t(),
                h: p.h(),
                s: p.s(),
            },
        )
    })
}

/// Canonical form such as `"3,2,2"`; free with [`sqdist_string_free`].
///
/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_partition_to_string(
    handle: *const SqdistPartition,
    out: *mut *mut c_char,
) -> SqdistStatus {
    guard(|| {
        let p = handle_ref(handle)?;
        write_out(out, to_c_string(p.to_string()))
    })
}

/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_inertia(
    handle: *const SqdistPartition,
    out: *mut SqdistInertia,
) -> SqdistStatus {
    guard(|| {
        let (n_plus, n_zero, n_minus) = sqdist::inertia(handle_ref(handle)?).counts();
        write_out(
            out,
            SqdistInertia {
                n_plus,
                n_zero,
                n_minus,
            },
        )
    })
}

/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_energy(
    handle: *const SqdistPartition,
    out: *mut SqdistEnergy,
) -> SqdistStatus {
    guard(|| {
        let e = sqdist::energy(handle_ref(handle)?).map_err(lib_err)?;
        let integer_part = e.integer_part.to_i64().ok_or((
            SqdistStatus::DomainError,
            "integer part exceeds 64 bits".to_string(),
        ))?;
        let theta = e.theta.map_or(SqdistRoot::default(), |t| SqdistRoot {
            value: t.value,
            lo: t.lo,
            hi: t.hi,
        });
        write_out(
            out,
            SqdistEnergy {
                integer_part,
                has_theta: e.theta.is_some(),
                theta,
                value: e.value,
            },
        )
    })
}

/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_spectral_radius(
    handle: *const SqdistPartition,
    out: *mut SqdistRoot,
) -> SqdistStatus {
    guard(|| {
        let r = sqdist::spectral_radius(handle_ref(handle)?).map_err(lib_err)?;
        write_out(out, root(r))
    })
}

/// Sign of `λ_{s+1}` as -1, 0 or 1; needs at least one singleton part and
/// one larger part.
///
/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_lambda_sign(
    handle: *const SqdistPartition,
    out: *mut i32,
) -> SqdistStatus {
    guard(|| {
        let sign = sqdist::lambda_s1_sign(handle_ref(handle)?).map_err(lib_err)?;
        let v = match sign {
            RootSign::Negative => -1,
            RootSign::Zero => 0,
            RootSign::Positive => 1,
        };
        write_out(out, v)
    })
}

/// Exact determinant as a decimal string.
///
/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_determinant(
    handle: *const SqdistPartition,
    out: *mut *mut c_char,
) -> SqdistStatus {
    guard(|| {
        let det = sqdist::det_delta_exact(handle_ref(handle)?);
        write_out(out, to_c_string(det.to_string()))
    })
}

/// Spectrum as JSON: `{"exact":[{"value","mult"}],"isolated":[{"value","lo","hi"}]}`.
///
/// # Safety
/// `handle` is a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_spectrum_json(
    handle: *const SqdistPartition,
    out: *mut *mut c_char,
) -> SqdistStatus {
    guard(|| {
        let spec = sqdist::full_spectrum(handle_ref(handle)?).map_err(lib_err)?;
        let json = serde_json::to_string(&spec).expect("spectrum serializes");
        write_out(out, to_c_string(json))
    })
}

/// Energy scan over all partitions of `n` into `t` parts as JSON. Returns
/// `VerificationFailed` (with `out` still set) when an expected extremum
/// fails to appear.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_scan_energy_json(
    n: usize,
    t: usize,
    out: *mut *mut c_char,
) -> SqdistStatus {
    guard(|| {
        let report = sqdist::scan_energy(n, t).map_err(lib_err)?;
        let json = serde_json::to_string(&report).expect("report serializes");
        write_out(out, to_c_string(json))?;
        if report.passed() {
            Ok(())
        } else {
            Err((
                SqdistStatus::VerificationFailed,
                report.violations.join("; "),
            ))
        }
    })
}

/// Oracle sweep over every partition with `n <= n_max`; `tol` bounds the
/// eigenvalue deviation. Fills `out` and returns `VerificationFailed` when
/// any partition disagrees.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqdist_verify_sweep(
    n_max: usize,
    tol: f64,
    out: *mut SqdistSweep,
) -> SqdistStatus {
    guard(|| {
        if tol.is_nan() || tol <= 0.0 {
            return Err((
                SqdistStatus::InvalidArgument,
                format!("tol must be positive, got {tol}"),
            ));
        }
        let s = sqdist::oracle::sweep_with_tol(n_max, tol).map_err(lib_err)?;
        write_out(
            out,
            SqdistSweep {
                partitions: s.partitions,
                failures: s.failures,
                worst_eigenvalue_deviation: s.worst_eigenvalue_deviation,
                worst_energy_deviation: s.worst_energy_deviation,
            },
        )?;
        if s.failures == 0 {
            Ok(())
        } else {
            Err((
                SqdistStatus::VerificationFailed,
                format!("{} of {} partitions failed", s.failures, s.partitions),
            ))
        }
    })
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn sqdist_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
