//! C interface.
//!
//! Every function returns a [`SchubcalcStatus`]; results come back through
//! out-pointers. Handles are opaque and must be released with the matching
//! `_free` function. After a non-OK status, `schubcalc_last_error` gives a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schubcalc::bpd::enumerate_bpds_in;
use schubcalc::pipedream::enumerate_pds_in;
use schubcalc::puzzle::{self, TileCatalog, YbeValuations};
use schubcalc::schubert::{schubert_double, schubert_single};
use schubcalc::{Error, Permutation, Polynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchubcalcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidPermutation = 3,
    InvalidArgument = 4,
    Catalog = 5,
    Overflow = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchubcalcKind {
    PipeDream = 0,
    Bumpless = 1,
}

/// Opaque polynomial handle.
pub struct SchubcalcPolynomial {
    inner: Polynomial,
}

/// Opaque tile catalog handle.
pub struct SchubcalcCatalog {
    inner: TileCatalog,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> SchubcalcStatus {
    match e {
        Error::InvalidPermutation(_) => SchubcalcStatus::InvalidPermutation,
        Error::Catalog { .. } => SchubcalcStatus::Catalog,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::Board(_) | Error::Rule(_) => {
            SchubcalcStatus::InvalidArgument
        }
        _ => SchubcalcStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SchubcalcStatus>) -> SchubcalcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SchubcalcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            SchubcalcStatus::Panic
        }
    }
}

fn fail(e: Error) -> SchubcalcStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SchubcalcStatus> {
    if s.is_null() {
        set_error("null string");
        return Err(SchubcalcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        SchubcalcStatus::InvalidUtf8
    })
}

fn non_null<T>(p: *const T) -> Result<(), SchubcalcStatus> {
    if p.is_null() {
        set_error("null pointer");
        Err(SchubcalcStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn parse_perm(s: &str) -> Result<Permutation, SchubcalcStatus> {
    s.parse::<Permutation>().map_err(fail)
}

fn ambient(w: &Permutation, n: usize) -> Result<usize, SchubcalcStatus> {
    let n = if n == 0 { w.size().max(1) } else { n };
    if !w.in_sn(n) {
        return Err(fail(Error::InvalidArgument(format!("{w} is not in S_{n}"))));
    }
    Ok(n)
}

/// Message for the last failed call on this thread, or NULL. The string
/// belongs to the library and stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn schubcalc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Schubert polynomial of `w` (one-line notation such as "3,1,2"). With
/// `n == 0` the size of `w` is used.
///
/// # Safety
/// `w` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_schubert(
    w: *const c_char,
    double_: bool,
    n: usize,
    out: *mut *mut SchubcalcPolynomial,
) -> SchubcalcStatus {
    guard(|| {
        non_null(out)?;
        let w = parse_perm(read_str(w)?)?;
        let n = ambient(&w, n)?;
        let p = if double_ {
            schubert_double(&w, n).map_err(fail)?
        } else {
            schubert_single(&w)
        };
        *out = Box::into_raw(Box::new(SchubcalcPolynomial { inner: p }));
        Ok(())
    })
}

/// Parse a polynomial such as "x1^2*x2 - y1".
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_polynomial_parse(
    text: *const c_char,
    out: *mut *mut SchubcalcPolynomial,
) -> SchubcalcStatus {
    guard(|| {
        non_null(out)?;
        let p: Polynomial = read_str(text)?.parse().map_err(fail)?;
        *out = Box::into_raw(Box::new(SchubcalcPolynomial { inner: p }));
        Ok(())
    })
}

/// Canonical text of a polynomial; release with `schubcalc_string_free`.
///
/// # Safety
/// `p` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_polynomial_to_string(
    p: *const SchubcalcPolynomial,
    out: *mut *mut c_char,
) -> SchubcalcStatus {
    guard(|| {
        non_null(p)?;
        non_null(out)?;
        let s = CString::new((*p).inner.to_string()).map_err(|_| SchubcalcStatus::Internal)?;
        *out = s.into_raw();
        Ok(())
    })
}

/// Value at integer points; fails with `OVERFLOW` if it does not fit in 64
/// bits.
///
/// # Safety
/// `x` and `y` must point to `nx` and `ny` integers (or be NULL when the
/// length is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_polynomial_evaluate(
    p: *const SchubcalcPolynomial,
    x: *const i64,
    nx: usize,
    y: *const i64,
    ny: usize,
    out: *mut i64,
) -> SchubcalcStatus {
    guard(|| {
        non_null(p)?;
        non_null(out)?;
        let slice = |ptr: *const i64, n: usize| -> Result<&[i64], SchubcalcStatus> {
            if n == 0 {
                return Ok(&[]);
            }
            non_null(ptr)?;
            Ok(std::slice::from_raw_parts(ptr, n))
        };
        let (xs, ys) = (slice(x, nx)?, slice(y, ny)?);
        let (p, needed_x, needed_y) = (
            &(*p).inner,
            (*p).inner.max_x_index(),
            (*p).inner.max_y_index(),
        );
        if xs.len() < needed_x || ys.len() < needed_y {
            return Err(fail(Error::InvalidArgument(
                "not enough variable values".into(),
            )));
        }
        let v = p.evaluate(xs, ys);
        *out = i64::try_from(v).map_err(|_| {
            set_error("value does not fit in 64 bits");
            SchubcalcStatus::Overflow
        })?;
        Ok(())
    })
}

/// # Safety
/// Both handles must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_polynomial_equal(
    a: *const SchubcalcPolynomial,
    b: *const SchubcalcPolynomial,
    out: *mut bool,
) -> SchubcalcStatus {
    guard(|| {
        non_null(a)?;
        non_null(b)?;
        non_null(out)?;
        *out = (*a).inner == (*b).inner;
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_polynomial_free(p: *mut SchubcalcPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of reduced pipe dreams or bumpless pipe dreams of `w` in `S_n`.
///
/// # Safety
/// `w` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_count_diagrams(
    w: *const c_char,
    kind: SchubcalcKind,
    n: usize,
    out: *mut usize,
) -> SchubcalcStatus {
    guard(|| {
        non_null(out)?;
        let w = parse_perm(read_str(w)?)?;
        let n = ambient(&w, n)?;
        if n > 7 {
            return Err(fail(Error::InvalidArgument(format!(
                "n = {n} is too large"
            ))));
        }
        *out = match kind {
            SchubcalcKind::PipeDream => enumerate_pds_in(&w, n).len(),
            SchubcalcKind::Bumpless => enumerate_bpds_in(&w, n).len(),
        };
        Ok(())
    })
}

/// Load a catalog document (JSON).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_catalog_load(
    json: *const c_char,
    out: *mut *mut SchubcalcCatalog,
) -> SchubcalcStatus {
    guard(|| {
        non_null(out)?;
        let cat = puzzle::load_catalog(read_str(json)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(SchubcalcCatalog { inner: cat }));
        Ok(())
    })
}

/// One of the shipped catalogs: "full", "alt", "pd" or "bpd".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_catalog_builtin(
    name: *const c_char,
    out: *mut *mut SchubcalcCatalog,
) -> SchubcalcStatus {
    guard(|| {
        non_null(out)?;
        let name = read_str(name)?;
        let cat = TileCatalog::builtin(name)
            .ok_or_else(|| fail(Error::InvalidArgument(format!("no catalog named {name}"))))?;
        *out = Box::into_raw(Box::new(SchubcalcCatalog { inner: cat }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_catalog_tile_count(
    c: *const SchubcalcCatalog,
    out: *mut usize,
) -> SchubcalcStatus {
    guard(|| {
        non_null(c)?;
        non_null(out)?;
        *out = (*c).inner.tiles.len();
        Ok(())
    })
}

/// Exchange-relation sweep for `k` strip columns; writes the number of
/// counterexamples.
///
/// # Safety
/// `c` must come from this library; `counterexamples` must be valid.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_ybe_check(
    c: *const SchubcalcCatalog,
    k: usize,
    constraints: bool,
    counterexamples: *mut usize,
) -> SchubcalcStatus {
    guard(|| {
        non_null(c)?;
        non_null(counterexamples)?;
        if k == 0 || k > 3 {
            return Err(fail(Error::InvalidArgument("k must be 1, 2 or 3".into())));
        }
        let r = puzzle::ybe_check(&(*c).inner, &YbeValuations::standard(k), constraints)
            .map_err(fail)?;
        *counterexamples = r.counterexamples.len();
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn schubcalc_catalog_free(c: *mut SchubcalcCatalog) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
