//! C ABI over `iselab`. Every fallible function returns an
//! [`IselabStatus`]; on failure the thread's last error message is set and
//! can be read with [`iselab_last_error_message`]. Objects are opaque
//! handles created by `*_new`/`*_sample` and released by `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iselab::genfun::{exact_moment, float_moment, ProfileCorrelation};
use iselab::grand::{abs_moment_ise, density0_moment, grand_number, limit_moment, Kind};
use iselab::numerics::{density_mgf, mean_density, mean_density_series};
use iselab::sampler::{label_moment, sample, SeedSpec};
use iselab::tree::LabelledTree;
use iselab::{Error, ExtendedPartition, TreeFamily};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IselabStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument is outside the supported domain.
    InvalidArgument = 2,
    /// A caller-supplied buffer is too short; the needed length was reported.
    BufferTooSmall = 3,
    /// A numerical routine failed (non-convergence, pole, branch loss).
    Numeric = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IselabFamily {
    Binary = 0,
    CompleteBinary = 1,
    PlanePm1 = 2,
    Plane0pm1 = 3,
}

impl From<IselabFamily> for TreeFamily {
    fn from(f: IselabFamily) -> Self {
        match f {
            IselabFamily::Binary => TreeFamily::Binary,
            IselabFamily::CompleteBinary => TreeFamily::CompleteBinary,
            IselabFamily::PlanePm1 => TreeFamily::PlanePM1,
            IselabFamily::Plane0pm1 => TreeFamily::Plane0PM1,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IselabKind {
    /// Vertical profile; limit ISE.
    Ise = 0,
    /// Horizontal profile; limit Brownian excursion.
    Exc = 1,
}

impl From<IselabKind> for Kind {
    fn from(k: IselabKind) -> Self {
        match k {
            IselabKind::Ise => Kind::Ise,
            IselabKind::Exc => Kind::Exc,
        }
    }
}

/// Exact profile-correlation polynomials of one family.
pub struct IselabCorrelation {
    inner: ProfileCorrelation,
}

/// One random labelled tree.
pub struct IselabTree {
    inner: LabelledTree,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(IselabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NonConvergence { .. } | Error::BranchTracking { .. } | Error::Pole(_) | Error::Numeric(_) => {
                IselabStatus::Numeric
            }
            _ => IselabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(IselabStatus::NullPointer, format!("{what} is NULL"))
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IselabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IselabStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            IselabStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    unsafe { p.as_mut() }.ok_or_else(|| null(what))
}

unsafe fn partition(parts: *const u32, len: usize) -> Result<ExtendedPartition, Failure> {
    if len == 0 {
        return Ok(ExtendedPartition::empty());
    }
    if parts.is_null() {
        return Err(null("parts"));
    }
    Ok(ExtendedPartition::new(unsafe { std::slice::from_raw_parts(parts, len) }.to_vec()))
}

/// Copies `s` plus a NUL into `buf`; `needed` (if non-NULL) receives the
/// required size including the NUL.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    if let Some(n) = unsafe { needed.as_mut() } {
        *n = s.len() + 1;
    }
    if len < s.len() + 1 {
        return Err(Failure(IselabStatus::BufferTooSmall, format!("buffer needs {} bytes", s.len() + 1)));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    unsafe {
        ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, s.len());
        *buf.add(s.len()) = 0;
    }
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn iselab_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

/// Message of the last failure on this thread ("" if none). Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn iselab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Exact `E Π_i Σ_v ℓ(v)^{parts_i}` over objects of size `n`, written as
/// "p/q" into `buf`, and the normalised moment `E m_{λ,n}` into
/// `normalized` (may be NULL).
///
/// # Safety
/// `parts` must point to `parts_len` integers; `buf` to `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn iselab_exact_moment(
    family: IselabFamily,
    parts: *const u32,
    parts_len: usize,
    n: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
    normalized: *mut f64,
) -> IselabStatus {
    guard(|| {
        let lambda = unsafe { partition(parts, parts_len) }?;
        let m = exact_moment(family.into(), &lambda, n)?;
        if let Some(v) = unsafe { normalized.as_mut() } {
            *v = m.normalized;
        }
        unsafe { write_str(&m.rational.to_string(), buf, buf_len, needed) }
    })
}

/// Normalised moment `E m_{λ,n}` from the double-precision series.
///
/// # Safety
/// `parts` must point to `parts_len` integers.
#[no_mangle]
pub unsafe extern "C" fn iselab_float_moment(
    family: IselabFamily,
    parts: *const u32,
    parts_len: usize,
    n: usize,
    result: *mut f64,
) -> IselabStatus {
    guard(|| {
        let r = unsafe { out(result, "result") }?;
        *r = float_moment(family.into(), &unsafe { partition(parts, parts_len) }?, n)?;
        Ok(())
    })
}

/// Grand-moment number `c_λ` or `d_λ` as "p/q".
///
/// # Safety
/// `parts` must point to `parts_len` integers; `buf` to `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn iselab_grand_number(
    kind: IselabKind,
    parts: *const u32,
    parts_len: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> IselabStatus {
    guard(|| {
        let lambda = unsafe { partition(parts, parts_len) }?;
        unsafe { write_str(&grand_number(kind.into(), &lambda).to_string(), buf, buf_len, needed) }
    })
}

/// Limit moment `E m_λ` of ISE or of the Brownian excursion.
///
/// # Safety
/// `parts` must point to `parts_len` integers.
#[no_mangle]
pub unsafe extern "C" fn iselab_limit_moment(
    kind: IselabKind,
    parts: *const u32,
    parts_len: usize,
    result: *mut f64,
) -> IselabStatus {
    guard(|| {
        let r = unsafe { out(result, "result") }?;
        *r = limit_moment(kind.into(), &unsafe { partition(parts, parts_len) }?);
        Ok(())
    })
}

/// Mean ISE density by quadrature.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iselab_mean_density(x: f64, result: *mut f64) -> IselabStatus {
    guard(|| {
        *unsafe { out(result, "result") }? = mean_density(x)?;
        Ok(())
    })
}

/// Mean ISE density by its power series (`|x| ≤ 4.5`).
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iselab_mean_density_series(x: f64, result: *mut f64) -> IselabStatus {
    guard(|| {
        *unsafe { out(result, "result") }? = mean_density_series(x)?;
        Ok(())
    })
}

/// `E exp(a f_ISE(x))`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iselab_density_mgf(x: f64, a: f64, result: *mut f64) -> IselabStatus {
    guard(|| {
        *unsafe { out(result, "result") }? = density_mgf(x, a, &Default::default())?;
        Ok(())
    })
}

/// `E f_ISE(0)^r` for `r > -4/3`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iselab_density0_moment(r: f64, result: *mut f64) -> IselabStatus {
    guard(|| {
        *unsafe { out(result, "result") }? = density0_moment(r)?;
        Ok(())
    })
}

/// `E ∫ |x|^a dμ_ISE` for `a > -1`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iselab_abs_moment_ise(a: f64, result: *mut f64) -> IselabStatus {
    guard(|| {
        *unsafe { out(result, "result") }? = abs_moment_ise(a)?;
        Ok(())
    })
}

/// Builds the exact correlation polynomials up to size `order`.
///
/// # Safety
/// `handle` must be a valid pointer; release the result with
/// [`iselab_correlation_free`].
#[no_mangle]
pub unsafe extern "C" fn iselab_correlation_new(
    family: IselabFamily,
    order: usize,
    handle: *mut *mut IselabCorrelation,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { out(handle, "handle") }?;
        *h = Box::into_raw(Box::new(IselabCorrelation { inner: ProfileCorrelation::new(family.into(), order) }));
        Ok(())
    })
}

/// Releases a correlation handle; NULL is ignored.
///
/// # Safety
/// `handle` must come from [`iselab_correlation_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn iselab_correlation_free(handle: *mut IselabCorrelation) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// `E |X̂_n(u)|²`.
///
/// # Safety
/// `handle` and `result` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn iselab_correlation_fourier_second_moment(
    handle: *const IselabCorrelation,
    n: usize,
    u: f64,
    result: *mut f64,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { handle.as_ref() }.ok_or_else(|| null("handle"))?;
        *unsafe { out(result, "result") }? = h.inner.fourier_second_moment(n, u)?;
        Ok(())
    })
}

/// `(1 + N u⁴) E |X̂_n(u) / N|²`.
///
/// # Safety
/// `handle` and `result` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn iselab_correlation_l3_ratio(
    handle: *const IselabCorrelation,
    n: usize,
    u: f64,
    result: *mut f64,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { handle.as_ref() }.ok_or_else(|| null("handle"))?;
        *unsafe { out(result, "result") }? = h.inner.lemma_l3_ratio(n, u)?;
        Ok(())
    })
}

/// Draws a uniform tree of size `n` from stream `stream_id` of
/// `master_seed`.
///
/// # Safety
/// `handle` must be a valid pointer; release the result with
/// [`iselab_tree_free`].
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_sample(
    family: IselabFamily,
    n: usize,
    master_seed: u64,
    stream_id: u64,
    handle: *mut *mut IselabTree,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { out(handle, "handle") }?;
        let tree = sample(family.into(), n, SeedSpec::new(master_seed, stream_id))?;
        *h = Box::into_raw(Box::new(IselabTree { inner: tree }));
        Ok(())
    })
}

/// Releases a tree handle; NULL is ignored.
///
/// # Safety
/// `handle` must come from [`iselab_tree_sample`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_free(handle: *mut IselabTree) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Number of nodes (0 for a NULL handle).
///
/// # Safety
/// `handle` must be NULL or a valid tree handle.
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_node_count(handle: *const IselabTree) -> usize {
    unsafe { handle.as_ref() }.map_or(0, |h| h.inner.node_count())
}

/// Copies the labels in preorder into `labels` (`len` entries available).
///
/// # Safety
/// `handle` must be valid; `labels` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_labels(handle: *const IselabTree, labels: *mut i64, len: usize) -> IselabStatus {
    guard(|| {
        let h = unsafe { handle.as_ref() }.ok_or_else(|| null("handle"))?;
        let src = h.inner.labels();
        if len < src.len() {
            return Err(Failure(IselabStatus::BufferTooSmall, format!("labels need {} entries", src.len())));
        }
        if labels.is_null() {
            return Err(null("labels"));
        }
        unsafe { ptr::copy_nonoverlapping(src.as_ptr(), labels, src.len()) };
        Ok(())
    })
}

/// Vertical profile: `offset` receives the smallest label and `counts` the
/// occupation numbers from there on; `needed` receives their number.
///
/// # Safety
/// `handle` and `offset` must be valid; `counts` must point to `len`
/// writable entries.
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_profile(
    handle: *const IselabTree,
    offset: *mut i64,
    counts: *mut u64,
    len: usize,
    needed: *mut usize,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { handle.as_ref() }.ok_or_else(|| null("handle"))?;
        let p = h.inner.vertical_profile();
        if let Some(n) = unsafe { needed.as_mut() } {
            *n = p.counts.len();
        }
        *unsafe { out(offset, "offset") }? = p.offset;
        if len < p.counts.len() {
            return Err(Failure(IselabStatus::BufferTooSmall, format!("profile needs {} entries", p.counts.len())));
        }
        if counts.is_null() {
            return Err(null("counts"));
        }
        unsafe { ptr::copy_nonoverlapping(p.counts.as_ptr(), counts, p.counts.len()) };
        Ok(())
    })
}

/// Normalised moment `m_λ` of one tree.
///
/// # Safety
/// `handle` and `result` must be valid; `parts` must point to `parts_len`
/// integers.
#[no_mangle]
pub unsafe extern "C" fn iselab_tree_label_moment(
    handle: *const IselabTree,
    parts: *const u32,
    parts_len: usize,
    result: *mut f64,
) -> IselabStatus {
    guard(|| {
        let h = unsafe { handle.as_ref() }.ok_or_else(|| null("handle"))?;
        let lambda = unsafe { partition(parts, parts_len) }?;
        *unsafe { out(result, "result") }? = label_moment(&h.inner, &lambda);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(iselab_last_error_message()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn exact_moment_round_trip() {
        let parts = [2u32];
        let mut buf = [0 as c_char; 32];
        let mut needed = 0usize;
        let mut norm = 0.0;
        let s = unsafe {
            iselab_exact_moment(
                IselabFamily::Binary,
                parts.as_ptr(),
                1,
                3,
                buf.as_mut_ptr(),
                buf.len(),
                &mut needed,
                &mut norm,
            )
        };
        assert_eq!(s, IselabStatus::Ok);
        assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "14/5");
        assert_eq!(needed, 5);
        assert!(norm > 0.0);
    }

    #[test]
    fn small_buffer_reports_size() {
        let parts = [2u32];
        let mut buf = [0 as c_char; 2];
        let mut needed = 0usize;
        let s = unsafe {
            iselab_exact_moment(
                IselabFamily::Binary,
                parts.as_ptr(),
                1,
                3,
                buf.as_mut_ptr(),
                buf.len(),
                &mut needed,
                ptr::null_mut(),
            )
        };
        assert_eq!(s, IselabStatus::BufferTooSmall);
        assert_eq!(needed, 5);
        assert!(last_error().contains("5 bytes"));
    }

    #[test]
    fn errors_set_message() {
        let mut r = 0.0;
        assert_eq!(unsafe { iselab_density0_moment(-2.0, &mut r) }, IselabStatus::InvalidArgument);
        assert!(last_error().contains("-4/3"));
        assert_eq!(unsafe { iselab_density0_moment(1.0, ptr::null_mut()) }, IselabStatus::NullPointer);
        let mut buf = [0 as c_char; 8];
        let s = unsafe { iselab_grand_number(IselabKind::Ise, ptr::null(), 2, buf.as_mut_ptr(), 8, ptr::null_mut()) };
        assert_eq!(s, IselabStatus::NullPointer);
    }

    #[test]
    fn grand_and_limit() {
        let parts = [4u32];
        let mut buf = [0 as c_char; 8];
        assert_eq!(
            unsafe { iselab_grand_number(IselabKind::Ise, parts.as_ptr(), 1, buf.as_mut_ptr(), 8, ptr::null_mut()) },
            IselabStatus::Ok
        );
        assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "6");
        let mut v = 0.0;
        let one = [1u32];
        assert_eq!(unsafe { iselab_limit_moment(IselabKind::Exc, one.as_ptr(), 1, &mut v) }, IselabStatus::Ok);
        assert!((v - (std::f64::consts::PI / 8.0).sqrt()).abs() < 1e-14);
        assert_eq!(unsafe { iselab_mean_density(0.0, &mut v) }, IselabStatus::Ok);
        assert!((v - 0.4110894793312293).abs() < 1e-12);
    }

    #[test]
    fn tree_handle_lifecycle() {
        let mut h: *mut IselabTree = ptr::null_mut();
        assert_eq!(unsafe { iselab_tree_sample(IselabFamily::PlanePm1, 20, 7, 3, &mut h) }, IselabStatus::Ok);
        assert_eq!(unsafe { iselab_tree_node_count(h) }, 21);
        let mut labels = [0i64; 21];
        assert_eq!(unsafe { iselab_tree_labels(h, labels.as_mut_ptr(), 21) }, IselabStatus::Ok);
        assert_eq!(labels[0], 0);
        let (mut offset, mut needed) = (0i64, 0usize);
        assert_eq!(
            unsafe { iselab_tree_profile(h, &mut offset, ptr::null_mut(), 0, &mut needed) },
            IselabStatus::BufferTooSmall
        );
        let mut counts = vec![0u64; needed];
        assert_eq!(
            unsafe { iselab_tree_profile(h, &mut offset, counts.as_mut_ptr(), needed, &mut needed) },
            IselabStatus::Ok
        );
        assert_eq!(counts.iter().sum::<u64>(), 21);
        assert_eq!(offset, *labels.iter().min().unwrap());
        unsafe { iselab_tree_free(h) };
        unsafe { iselab_tree_free(ptr::null_mut()) };
        assert_eq!(unsafe { iselab_tree_node_count(ptr::null()) }, 0);
    }

    #[test]
    fn correlation_handle() {
        let mut h: *mut IselabCorrelation = ptr::null_mut();
        assert_eq!(unsafe { iselab_correlation_new(IselabFamily::Binary, 10, &mut h) }, IselabStatus::Ok);
        let mut v = 0.0;
        assert_eq!(unsafe { iselab_correlation_fourier_second_moment(h, 2, 0.0, &mut v) }, IselabStatus::Ok);
        assert!((v - 4.0).abs() < 1e-14);
        assert_eq!(unsafe { iselab_correlation_l3_ratio(h, 11, 0.0, &mut v) }, IselabStatus::InvalidArgument);
        unsafe { iselab_correlation_free(h) };
    }

    #[test]
    fn version_string() {
        let v = unsafe { CStr::from_ptr(iselab_version()) }.to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
