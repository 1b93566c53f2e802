//! C interface to `treelike`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`TlStatus`]; on failure a message is kept per thread and can be read
//! with [`tl_last_error`]. Strings returned through `char **` out-parameters
//! are owned by the caller and released with [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treelike::bijection::{phi, phi_inverse, run_to_triplet, triplet_words_to_run, Triplet};
use treelike::verify::Check;
use treelike::{BorderPath, PermutationTableau, TreeLikeTableau};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    Parse = 2,
    /// The input parsed but violates an invariant.
    Invalid = 3,
    Range = 4,
    Utf8 = 5,
    Panic = 6,
    /// An enumerator has no more items.
    Done = 7,
}

#[derive(Debug, thiserror::Error)]
enum FfiError {
    #[error("null pointer passed as {0}")]
    Null(&'static str),
    #[error("string is not UTF-8: {0}")]
    Utf8(#[from] std::str::Utf8Error),
    #[error("string contains a NUL byte")]
    Nul(#[from] std::ffi::NulError),
    #[error(transparent)]
    Core(#[from] treelike::Error),
}

impl FfiError {
    fn status(&self) -> TlStatus {
        use treelike::Error as E;
        match self {
            FfiError::Null(_) => TlStatus::Null,
            FfiError::Utf8(_) | FfiError::Nul(_) => TlStatus::Utf8,
            FfiError::Core(e) => match e {
                E::EmptyPath | E::BadStep(_) | E::Parse(_) => TlStatus::Parse,
                E::TooWide(_) | E::OutOfRange(_) | E::Overflow(_) | E::MissingTable(_) => {
                    TlStatus::Range
                }
                _ => TlStatus::Invalid,
            },
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<TlStatus, FfiError>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            e.status()
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            TlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, FfiError> {
    if p.is_null() {
        return Err(FfiError::Null(what));
    }
    Ok(CStr::from_ptr(p).to_str()?)
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<TlStatus, FfiError> {
    if out.is_null() {
        return Err(FfiError::Null(what));
    }
    out.write(value);
    Ok(TlStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<TlStatus, FfiError> {
    let c = CString::new(s)?;
    write_out(out, c.into_raw(), "out")
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, FfiError> {
    p.as_ref().ok_or(FfiError::Null(what))
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A tree-like tableau.
pub struct TlTableau(TreeLikeTableau);

/// A permutation tableau.
pub struct TlPermTableau(PermutationTableau);

/// Statistics of a tree-like tableau.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TlStats {
    pub size: usize,
    pub corners: usize,
    pub occupied_corners: usize,
    pub non_occupied_corners: usize,
    pub top: usize,
    pub left: usize,
    pub first_row_points: usize,
    pub first_column_points: usize,
}

/// Parses a tree-like tableau from its text form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tableau_parse(
    text: *const c_char,
    out: *mut *mut TlTableau,
) -> TlStatus {
    guard(|| {
        let t = TreeLikeTableau::parse(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(TlTableau(t))), "out")
    })
}

/// # Safety
/// `t` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_tableau_free(t: *mut TlTableau) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tableau_to_text(
    t: *const TlTableau,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| write_string(out, borrow(t, "tableau")?.0.to_text()))
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tableau_stats(t: *const TlTableau, out: *mut TlStats) -> TlStatus {
    guard(|| {
        let t = &borrow(t, "tableau")?.0;
        let s = t.stats();
        let stats = TlStats {
            size: t.size(),
            corners: s.corners,
            occupied_corners: s.occupied_corners,
            non_occupied_corners: s.non_occupied_corners,
            top: s.top,
            left: s.left,
            first_row_points: s.first_row_points,
            first_column_points: s.first_column_points,
        };
        write_out(out, stats, "out")
    })
}

/// Applies φ.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_phi(t: *const TlTableau, out: *mut *mut TlPermTableau) -> TlStatus {
    guard(|| {
        let p = phi(&borrow(t, "tableau")?.0);
        write_out(out, Box::into_raw(Box::new(TlPermTableau(p))), "out")
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_perm_tableau_parse(
    text: *const c_char,
    out: *mut *mut TlPermTableau,
) -> TlStatus {
    guard(|| {
        let p = PermutationTableau::parse(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(TlPermTableau(p))), "out")
    })
}

/// # Safety
/// `p` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_perm_tableau_free(p: *mut TlPermTableau) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_perm_tableau_to_text(
    p: *const TlPermTableau,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| write_string(out, borrow(p, "tableau")?.0.to_text()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_perm_tableau_corners(
    p: *const TlPermTableau,
    out: *mut usize,
) -> TlStatus {
    guard(|| write_out(out, borrow(p, "tableau")?.0.num_corners(), "out"))
}

/// Inverse of [`tl_phi`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_phi_inverse(
    p: *const TlPermTableau,
    out: *mut *mut TlTableau,
) -> TlStatus {
    guard(|| {
        let t = phi_inverse(&borrow(p, "tableau")?.0)?;
        write_out(out, Box::into_raw(Box::new(TlTableau(t))), "out")
    })
}

/// Streams the tree-like tableaux of one size in canonical order.
pub struct TlEnumerator(Box<dyn Iterator<Item = TreeLikeTableau> + Send>);

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_enumerator_new(size: usize, out: *mut *mut TlEnumerator) -> TlStatus {
    guard(|| {
        let it = treelike::enumerate::tree_like_tableaux(size)?;
        write_out(
            out,
            Box::into_raw(Box::new(TlEnumerator(Box::new(it)))),
            "out",
        )
    })
}

/// Stores the next tableau in `out`, or returns `TL_STATUS_DONE`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_enumerator_next(
    e: *mut TlEnumerator,
    out: *mut *mut TlTableau,
) -> TlStatus {
    guard(|| {
        let e = e.as_mut().ok_or(FfiError::Null("enumerator"))?;
        if out.is_null() {
            return Err(FfiError::Null("out"));
        }
        match e.0.next() {
            Some(t) => write_out(out, Box::into_raw(Box::new(TlTableau(t))), "out"),
            None => Ok(TlStatus::Done),
        }
    })
}

/// # Safety
/// `e` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tl_enumerator_free(e: *mut TlEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of corners of a border path given as an `S`/`W` string.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_path_corners(path: *const c_char, out: *mut usize) -> TlStatus {
    guard(|| {
        let p: BorderPath = read_str(path, "path")?.parse()?;
        write_out(out, p.num_corners(), "out")
    })
}

/// Maps a triplet (three lines: left cycles, right cycles, colored word)
/// to a permutation with a marked run, as `"perm\nmark k"`.
///
/// # Safety
/// `triplet` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_triplet_to_run(
    triplet: *const c_char,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let t = Triplet::parse(read_str(triplet, "triplet")?)?;
        write_string(out, triplet_words_to_run(&t)?.to_text())
    })
}

/// Inverse of [`tl_triplet_to_run`]. `perm` holds `len` values in one-line
/// notation and `k` is the 1-based marked position.
///
/// # Safety
/// `perm` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_run_to_triplet(
    perm: *const usize,
    len: usize,
    k: usize,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        if perm.is_null() {
            return Err(FfiError::Null("perm"));
        }
        let values = std::slice::from_raw_parts(perm, len).to_vec();
        let p = treelike::bijection::MarkedRunPermutation::new(values, k)?;
        write_string(out, run_to_triplet(&p)?.to_text())
    })
}

/// Runs one verification check at size `n`. `matched` receives whether the
/// closed form agrees with the exhaustive computation.
///
/// # Safety
/// `check` must be a NUL-terminated string; `matched` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_verify(check: *const c_char, n: usize, matched: *mut bool) -> TlStatus {
    guard(|| {
        let c: Check = read_str(check, "check")?.parse()?;
        let row = treelike::verify::run_one(c, n, false)?;
        write_out(matched, row.matches, "matched")
    })
}
