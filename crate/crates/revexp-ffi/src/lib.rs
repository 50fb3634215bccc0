//! C ABI over the revexp workbench.
//!
//! Terms live behind opaque handles created by `revexp_*_parse` or
//! `revexp_encode` and released with the matching `*_free`. Every fallible
//! call returns a [`RevexpStatus`]; on failure the message is available from
//! [`revexp_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use revexp::bisim::{check, check_brs, Variant};
use revexp::encoding::{default_order, encode, BrsProcess};
use revexp::equational::{normalize_f, prove_eq, Theory};
use revexp::lts::{build_brs_lts, build_lts, export, Format};
use revexp::syntax::{parse, parse_brs, render_brs_with, render_with, Style};
use revexp::terms::{to_initial, Process};
use revexp::Error;

/// Opaque process handle.
pub struct RevexpProcess(Process);

/// Opaque handle for an encoded (sequential, ready-set annotated) term.
pub struct RevexpBrs(BrsProcess);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RevexpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    IllFormed = 4,
    NotReachable = 5,
    StateBudget = 6,
    OrderIncomparable = 7,
    NotNormal = 8,
    Invalid = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RevexpVariant {
    Fb = 0,
    Fbps = 1,
    Rb = 2,
    Frb = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RevexpTheory {
    F = 0,
    R = 1,
    Fr = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RevexpFormat {
    Dot = 0,
    Json = 1,
}

impl From<RevexpVariant> for Variant {
    fn from(v: RevexpVariant) -> Self {
        match v {
            RevexpVariant::Fb => Variant::FB,
            RevexpVariant::Fbps => Variant::FBps,
            RevexpVariant::Rb => Variant::RB,
            RevexpVariant::Frb => Variant::FRB,
        }
    }
}

impl From<RevexpTheory> for Theory {
    fn from(t: RevexpTheory) -> Self {
        match t {
            RevexpTheory::F => Theory::F,
            RevexpTheory::R => Theory::R,
            RevexpTheory::Fr => Theory::FR,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: RevexpStatus, message: String) -> RevexpStatus {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
    status
}

fn status_of(e: Error) -> RevexpStatus {
    let status = match &e {
        Error::Syntax { .. } => RevexpStatus::Syntax,
        Error::IllFormed(_) | Error::UndefinedSync { .. } => RevexpStatus::IllFormed,
        Error::NotReachable(_) => RevexpStatus::NotReachable,
        Error::StateBudget(_) => RevexpStatus::StateBudget,
        Error::OrderIncomparable(..) => RevexpStatus::OrderIncomparable,
        Error::NotNormal { .. } => RevexpStatus::NotNormal,
        Error::UnknownState(_) | Error::Invalid(_) => RevexpStatus::Invalid,
    };
    fail(status, e.to_string())
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return status_of(e),
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(RevexpStatus::NullArgument, format!("{} is null", stringify!($p)));
        })+
    };
}

unsafe fn text<'a>(src: *const c_char) -> Result<&'a str, RevexpStatus> {
    CStr::from_ptr(src)
        .to_str()
        .map_err(|e| fail(RevexpStatus::InvalidUtf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("NUL bytes removed")
        .into_raw()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn revexp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a well-formed process.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_process_parse(src: *const c_char, out: *mut *mut RevexpProcess) -> RevexpStatus {
    non_null!(src, out);
    let src = match text(src) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let p = try_ffi!(parse(src));
    *out = Box::into_raw(Box::new(RevexpProcess(p)));
    RevexpStatus::Ok
}

/// Releases a process handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn revexp_process_free(p: *mut RevexpProcess) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Renders a process; free the result with [`revexp_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_process_render(
    p: *const RevexpProcess,
    unicode: bool,
    out: *mut *mut c_char,
) -> RevexpStatus {
    non_null!(p, out);
    *out = into_c_string(render_with(&(*p).0, Style { unicode }));
    RevexpStatus::Ok
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn revexp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides a bisimilarity between two processes.
///
/// # Safety
/// Handles must be live; `out_equivalent` a valid pointer to write to.
/// Enum arguments must hold one of their declared values.
#[no_mangle]
pub unsafe extern "C" fn revexp_check(
    p1: *const RevexpProcess,
    p2: *const RevexpProcess,
    variant: RevexpVariant,
    out_equivalent: *mut bool,
) -> RevexpStatus {
    non_null!(p1, p2, out_equivalent);
    let v = try_ffi!(check(&(*p1).0, &(*p2).0, variant.into()));
    *out_equivalent = v.equivalent;
    RevexpStatus::Ok
}

/// Encodes a reachable process with the default execution order.
///
/// # Safety
/// `p` must be a live handle; `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_encode(p: *const RevexpProcess, out: *mut *mut RevexpBrs) -> RevexpStatus {
    non_null!(p, out);
    let p = &(*p).0;
    let u = try_ffi!(encode(p, &default_order(p)));
    *out = Box::into_raw(Box::new(RevexpBrs(u)));
    RevexpStatus::Ok
}

/// Parses an encoded term such as `<a!,{a}>.0`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_brs_parse(src: *const c_char, out: *mut *mut RevexpBrs) -> RevexpStatus {
    non_null!(src, out);
    let src = match text(src) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let u = try_ffi!(parse_brs(src));
    *out = Box::into_raw(Box::new(RevexpBrs(u)));
    RevexpStatus::Ok
}

/// Releases an encoded-term handle. Null is ignored.
///
/// # Safety
/// `u` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn revexp_brs_free(u: *mut RevexpBrs) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Renders an encoded term; free the result with [`revexp_string_free`].
///
/// # Safety
/// `u` must be a live handle; `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_brs_render(u: *const RevexpBrs, unicode: bool, out: *mut *mut c_char) -> RevexpStatus {
    non_null!(u, out);
    *out = into_c_string(render_brs_with(&(*u).0, Style { unicode }));
    RevexpStatus::Ok
}

/// Decides a bisimilarity between encoded terms, observing ready sets.
///
/// # Safety
/// Handles must be live; `out_equivalent` a valid pointer to write to.
/// Enum arguments must hold one of their declared values.
#[no_mangle]
pub unsafe extern "C" fn revexp_check_brs(
    u1: *const RevexpBrs,
    u2: *const RevexpBrs,
    variant: RevexpVariant,
    out_equivalent: *mut bool,
) -> RevexpStatus {
    non_null!(u1, u2, out_equivalent);
    let v = try_ffi!(check_brs(&(*u1).0, &(*u2).0, variant.into()));
    *out_equivalent = v.equivalent;
    RevexpStatus::Ok
}

/// Decides derivable equality of two processes in an axiom system.
///
/// # Safety
/// Handles must be live; `out_equal` a valid pointer to write to.
/// Enum arguments must hold one of their declared values.
#[no_mangle]
pub unsafe extern "C" fn revexp_prove_eq(
    p1: *const RevexpProcess,
    p2: *const RevexpProcess,
    theory: RevexpTheory,
    out_equal: *mut bool,
) -> RevexpStatus {
    non_null!(p1, p2, out_equal);
    *out_equal = try_ffi!(prove_eq(&(*p1).0, &(*p2).0, theory.into()));
    RevexpStatus::Ok
}

/// Forward normal form of a process as a new handle.
///
/// # Safety
/// `p` must be a live handle; `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn revexp_normalize_f(p: *const RevexpProcess, out: *mut *mut RevexpProcess) -> RevexpStatus {
    non_null!(p, out);
    let q = try_ffi!(normalize_f(&(*p).0));
    *out = Box::into_raw(Box::new(RevexpProcess(q)));
    RevexpStatus::Ok
}

/// Exports the transition system of the initial version of `p`, or of its
/// encoding when `brs` is set. Free the result with [`revexp_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` a valid pointer to write to.
/// Enum arguments must hold one of their declared values.
#[no_mangle]
pub unsafe extern "C" fn revexp_lts_export(
    p: *const RevexpProcess,
    format: RevexpFormat,
    brs: bool,
    out: *mut *mut c_char,
) -> RevexpStatus {
    non_null!(p, out);
    let p = &(*p).0;
    let format = match format {
        RevexpFormat::Dot => Format::Dot,
        RevexpFormat::Json => Format::Json,
    };
    let text = if brs {
        let u = try_ffi!(encode(p, &default_order(p)));
        export(&try_ffi!(build_brs_lts(&u.to_initial())), format)
    } else {
        export(&try_ffi!(build_lts(&to_initial(p))), format)
    };
    *out = into_c_string(text);
    RevexpStatus::Ok
}
