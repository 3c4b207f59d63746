//! C interface to `gallerysheaf`.
//!
//! Objects are opaque handles created by `*_new` and released by the
//! matching `*_free`. Every fallible call returns a [`GsStatus`]; on failure
//! a message is available from [`gs_last_error_message`] on the same thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use gallerysheaf::cli::{run, Settings};
use gallerysheaf::galleries::{Galleries, Word};
use gallerysheaf::momentsheaf::{build_sheaf, decompose, purity_check, word_global_sections, BmCache, WordSheaf};
use gallerysheaf::rootsys::{CartanType, ElemId, RootSystem};
use gallerysheaf::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    /// Bad input: unknown type, letter out of range, envelope exceeded.
    ConfigError = 1,
    /// A checked identity failed.
    InvariantError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A root system with its Weyl group.
pub struct GsRootSystem {
    inner: Arc<RootSystem>,
}

/// The galleries of a word.
pub struct GsGalleries {
    inner: Galleries,
}

/// The sheaf of fibre modules of a word.
pub struct GsSheaf {
    inner: WordSheaf,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> GsStatus {
    if e.is_config() {
        GsStatus::ConfigError
    } else {
        GsStatus::InvariantError
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), GsStatus>) -> GsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GsStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            GsStatus::Panic
        }
    }
}

fn lib<T>(r: gallerysheaf::Result<T>) -> Result<T, GsStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T) -> Result<(), GsStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        Err(GsStatus::NullPointer)
    } else {
        Ok(())
    }
}

/// # Safety
/// `letters` must point to `len` readable bytes unless `len` is zero.
unsafe fn word_from(rank: usize, letters: *const u8, len: usize) -> Result<Word, GsStatus> {
    let slice = if len == 0 {
        &[][..]
    } else {
        non_null(letters)?;
        std::slice::from_raw_parts(letters, len)
    };
    lib(Word::new(slice.to_vec(), rank))
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a root system of the given type letter (`'A'`..`'G'`) and rank.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn gs_root_system_new(type_letter: c_char, rank: u32, out: *mut *mut GsRootSystem) -> GsStatus {
    guard(|| {
        non_null(out)?;
        let t = lib(CartanType::from_letter(type_letter as u8 as char))?;
        let rs = lib(RootSystem::new(t, rank as usize))?;
        *out = Box::into_raw(Box::new(GsRootSystem { inner: Arc::new(rs) }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`gs_root_system_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_root_system_free(h: *mut GsRootSystem) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Order of the Weyl group.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_root_system_weyl_order(h: *const GsRootSystem, out: *mut u64) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = (*h).inner.weyl().order() as u64;
        Ok(())
    })
}

/// Number of positive roots.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_root_system_num_positive_roots(h: *const GsRootSystem, out: *mut u32) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = (*h).inner.num_positive_roots() as u32;
        Ok(())
    })
}

/// Enumerates the galleries of a word given as 1-based letters.
///
/// # Safety
/// `rs` must be a live handle, `letters` must hold `len` bytes and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_galleries_new(
    rs: *const GsRootSystem,
    letters: *const u8,
    len: usize,
    out: *mut *mut GsGalleries,
) -> GsStatus {
    guard(|| {
        non_null(rs)?;
        non_null(out)?;
        let r = &(*rs).inner;
        let word = word_from(r.rank(), letters, len)?;
        let gs = lib(Galleries::new(r.clone(), word))?;
        *out = Box::into_raw(Box::new(GsGalleries { inner: gs }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`gs_galleries_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_galleries_free(h: *mut GsGalleries) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of galleries, `2^r`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_galleries_count(h: *const GsGalleries, out: *mut u64) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = (*h).inner.len() as u64;
        Ok(())
    })
}

/// Number of distinct endpoints.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_galleries_support_size(h: *const GsGalleries, out: *mut u64) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = (*h).inner.support().len() as u64;
        Ok(())
    })
}

/// Load-bearing and defect masks of the gallery with the given bits
/// (bit `i-1` set when step `i` crosses).
///
/// # Safety
/// `h` must be a live handle; `j` and `d` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_galleries_stats(h: *const GsGalleries, bits: u32, j: *mut u32, d: *mut u32) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(j)?;
        non_null(d)?;
        let gs = &(*h).inner;
        if (bits as u64) >= gs.len() as u64 {
            set_error("gallery bits out of range");
            return Err(GsStatus::ConfigError);
        }
        let g = gallerysheaf::galleries::Gallery(bits);
        *j = gs.j(g);
        *d = gs.d(g);
        Ok(())
    })
}

/// Builds the sheaf of fibre modules of a word.
///
/// # Safety
/// `rs` must be a live handle, `letters` must hold `len` bytes and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_new(
    rs: *const GsRootSystem,
    letters: *const u8,
    len: usize,
    out: *mut *mut GsSheaf,
) -> GsStatus {
    guard(|| {
        non_null(rs)?;
        non_null(out)?;
        let r = &(*rs).inner;
        let word = word_from(r.rank(), letters, len)?;
        if word.len() > gallerysheaf::cli::MAX_SHEAF_LENGTH {
            set_error("word too long for sheaf construction");
            return Err(GsStatus::ConfigError);
        }
        let ws = lib(build_sheaf(r.clone(), &word))?;
        *out = Box::into_raw(Box::new(GsSheaf { inner: ws }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`gs_sheaf_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_free(h: *mut GsSheaf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Stalk rank at the element with the given id (0 is the identity).
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_stalk_rank(h: *const GsSheaf, elem: u32, out: *mut u32) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        let s = &(*h).inner.sheaf;
        *out = s.stalks.get(&ElemId(elem)).map_or(0, |d| d.len() as u32);
        Ok(())
    })
}

/// Number of minimal generators of the global sections, searched up to
/// `max_degree`, after cross-checking against the total-space congruences.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_global_section_rank(h: *const GsSheaf, max_degree: u32, out: *mut u64) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        let g = lib(word_global_sections(&(*h).inner, max_degree))?;
        *out = g.rank() as u64;
        Ok(())
    })
}

/// Whether the purity axioms hold up to `max_degree`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_is_pure(h: *const GsSheaf, max_degree: u32, out: *mut bool) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = purity_check(&(*h).inner.sheaf, max_degree).passed();
        Ok(())
    })
}

/// Decomposition formula such as `B(s1s2s1) ⊕ B(s1)⟨1⟩`, as a new string
/// to be released with [`gs_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_sheaf_decompose(h: *const GsSheaf, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        let sheaf = &(*h).inner.sheaf;
        let rs = sheaf.root_system().clone();
        let mut cache = BmCache::new(rs.clone());
        let rep = lib(decompose(sheaf, &mut cache))?;
        if !rep.complete() {
            set_error(rep.render(&rs));
            return Err(GsStatus::InvariantError);
        }
        *out = CString::new(rep.formula(&rs)).expect("no interior nul").into_raw();
        Ok(())
    })
}

/// Runs a job given as `key=value` text. The report is returned as a new
/// string and the exit status (0, 1 or 2) through `status`.
///
/// # Safety
/// `config` must be a nul-terminated string; `report` and `status` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_run_job(config: *const c_char, report: *mut *mut c_char, status: *mut i32) -> GsStatus {
    guard(|| {
        non_null(config)?;
        non_null(report)?;
        non_null(status)?;
        let text = CStr::from_ptr(config).to_str().map_err(|_| {
            set_error("config is not UTF-8");
            GsStatus::InvalidUtf8
        })?;
        let cfg = lib(Settings::parse(text).and_then(|s| s.resolve()))?;
        let outcome = run(&cfg);
        if outcome.error {
            set_error(outcome.report.trim_end());
        }
        *status = outcome.status;
        *report = CString::new(outcome.report.replace('\0', " ")).expect("nul removed").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
