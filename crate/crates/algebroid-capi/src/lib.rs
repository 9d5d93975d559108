//! C ABI for the algebroid engine.
//!
//! Conventions: every function returns an `algv_status` code; results are
//! passed back through out-pointers. Strings returned by the library are
//! heap-allocated and must be released with `algv_string_free`. Models are
//! opaque handles released with their `_free` function. The last error
//! message is kept per thread and fetched with `algv_last_error`.

use algebroid::courant::{check_courant_axioms, CourantModel};
use algebroid::parse::{
    parse_value, value_as_courant_section, value_as_field, value_as_form, value_as_polynomial,
    value_as_vertex_section,
};
use algebroid::report::SuiteConfig;
use algebroid::symcalc::Form;
use algebroid::vertex::{
    check_truncated_axioms, sign_search_report, TwistedVertexModel, VertexModel,
};
use libc::{c_char, c_int, c_uint, c_ulonglong};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

pub const ALGV_OK: c_int = 0;
pub const ALGV_ERR_INPUT: c_int = 2;
pub const ALGV_ERR_NULL: c_int = 3;
pub const ALGV_ERR_UTF8: c_int = 4;
pub const ALGV_ERR_PANIC: c_int = 5;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn out_string(s: String, out: *mut *mut c_char) -> c_int {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("result contained an interior NUL");
            return ALGV_ERR_PANIC;
        }
    };
    unsafe { *out = c.into_raw() };
    ALGV_OK
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, c_int> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(ALGV_ERR_NULL);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        ALGV_ERR_UTF8
    })
}

fn guard<F: FnOnce() -> c_int>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            ALGV_ERR_PANIC
        }
    }
}

/// Opaque Courant model handle.
pub struct AlgvCourant(CourantModel);

/// Opaque vertex model handle (shipped sign conventions).
pub struct AlgvVertex(TwistedVertexModel);

/// Version string of the engine. Static; do not free.
#[no_mangle]
pub extern "C" fn algv_version() -> *const c_char {
    concat!("algebroid ", env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Last error message for this thread, or null. Free with `algv_string_free`.
#[no_mangle]
pub extern "C" fn algv_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by the library.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn algv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn parse_twist(n: usize, twist: *const c_char) -> Result<Form, c_int> {
    if twist.is_null() {
        return Ok(Form::zero(n, 3));
    }
    let src = read_str(twist)?;
    if src.is_empty() {
        return Ok(Form::zero(n, 3));
    }
    parse_value(src, n)
        .and_then(|v| value_as_form(&v, n, Some(3)))
        .map_err(|e| {
            set_error(e.to_string());
            ALGV_ERR_INPUT
        })
}

/// Create a Courant model from a twist expression (null or empty = flat).
///
/// # Safety
/// `twist` must be null or a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn algv_courant_new(
    n: c_uint,
    twist: *const c_char,
    out: *mut *mut AlgvCourant,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return ALGV_ERR_NULL;
        }
        let n = n as usize;
        let form = match parse_twist(n, twist) {
            Ok(f) => f,
            Err(c) => return c,
        };
        match CourantModel::new(n, form) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(AlgvCourant(m)));
                ALGV_OK
            }
            Err(e) => {
                set_error(e.to_string());
                ALGV_ERR_INPUT
            }
        }
    })
}

/// # Safety
/// `m` must come from `algv_courant_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn algv_courant_free(m: *mut AlgvCourant) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn courant_binop(
    m: *const AlgvCourant,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
    pairing: bool,
) -> c_int {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return ALGV_ERR_NULL;
        }
        let model = &(*m).0;
        let n = model.n();
        let (l, r) = match (read_str(left), read_str(right)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        let parse = |s: &str| parse_value(s, n).and_then(|v| value_as_courant_section(&v, n));
        match (parse(l), parse(r)) {
            (Ok(a), Ok(b)) => {
                let text = if pairing {
                    model.pairing(&a, &b).to_string()
                } else {
                    model.bracket(&a, &b).to_string()
                };
                out_string(text, out)
            }
            (Err(e), _) | (_, Err(e)) => {
                set_error(e.to_string());
                ALGV_ERR_INPUT
            }
        }
    })
}

/// Dorfman bracket of two sections, canonical text result.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_courant_bracket(
    m: *const AlgvCourant,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    courant_binop(m, left, right, out, false)
}

/// Symmetric pairing of two sections, canonical text result.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_courant_pairing(
    m: *const AlgvCourant,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    courant_binop(m, left, right, out, true)
}

/// Run the Courant axiom suite; the JSON report goes to `out`.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_courant_check(
    m: *const AlgvCourant,
    maxdeg: c_uint,
    trials: c_ulonglong,
    seed: c_ulonglong,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return ALGV_ERR_NULL;
        }
        let model = &(*m).0;
        let cfg = SuiteConfig::new(model.n(), maxdeg, trials, seed);
        out_string(check_courant_axioms(model, &cfg).to_json(), out)
    })
}

/// Create a vertex model with the shipped sign conventions and an optional
/// closed twist.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_vertex_new(
    n: c_uint,
    twist: *const c_char,
    out: *mut *mut AlgvVertex,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return ALGV_ERR_NULL;
        }
        let n = n as usize;
        let form = match parse_twist(n, twist) {
            Ok(f) => f,
            Err(c) => return c,
        };
        if !form.d().is_zero() {
            set_error("twist 3-form is not closed");
            return ALGV_ERR_INPUT;
        }
        let model = VertexModel::shipped(n).twisted(form);
        *out = Box::into_raw(Box::new(AlgvVertex(model)));
        ALGV_OK
    })
}

/// # Safety
/// `m` must come from `algv_vertex_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn algv_vertex_free(m: *mut AlgvVertex) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Bracket (`op` = 0), pairing (`op` = 1) or star action (`op` = 2, with
/// `left` a polynomial) on vertex sections.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_vertex_op(
    m: *const AlgvVertex,
    op: c_int,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return ALGV_ERR_NULL;
        }
        let model = &(*m).0;
        let n = model.n();
        let (l, r) = match (read_str(left), read_str(right)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        let section = |s: &str| parse_value(s, n).and_then(|v| value_as_vertex_section(&v, n));
        let result = match op {
            0 => section(l).and_then(|a| section(r).map(|b| model.bracket(&a, &b).to_string())),
            1 => section(l).and_then(|a| section(r).map(|b| model.pairing(&a, &b).to_string())),
            2 => parse_value(l, n)
                .and_then(|v| value_as_polynomial(&v))
                .and_then(|f| section(r).map(|b| model.star(&f, &b).to_string())),
            _ => {
                set_error("op must be 0 (bracket), 1 (pairing) or 2 (star)");
                return ALGV_ERR_INPUT;
            }
        };
        match result {
            Ok(text) => out_string(text, out),
            Err(e) => {
                set_error(e.to_string());
                ALGV_ERR_INPUT
            }
        }
    })
}

/// Run the truncated axiom suite of a vertex model; JSON report to `out`.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_vertex_check(
    m: *const AlgvVertex,
    maxdeg: c_uint,
    trials: c_ulonglong,
    seed: c_ulonglong,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer argument");
            return ALGV_ERR_NULL;
        }
        let model = &(*m).0;
        let cfg = SuiteConfig::new(model.n(), maxdeg, trials, seed);
        out_string(check_truncated_axioms(model, &cfg).to_json(), out)
    })
}

/// Enumerate the 64 sign assignments; JSON report (survivor list) to `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn algv_sign_search(
    n: c_uint,
    seed: c_ulonglong,
    trials: c_ulonglong,
    maxdeg: c_uint,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return ALGV_ERR_NULL;
        }
        let rep = sign_search_report(n as usize, seed, trials.max(50), maxdeg);
        out_string(serde_json::to_string_pretty(&rep).expect("report"), out)
    })
}

/// Evaluate a calculus operator on expressions: `op` is one of
/// "d", "wedge", "iota", "lie", "kappa". `right` may be null for unary ops.
///
/// # Safety
/// Pointer arguments as in `algv_courant_new`.
#[no_mangle]
pub unsafe extern "C" fn algv_calc(
    op: *const c_char,
    n: c_uint,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return ALGV_ERR_NULL;
        }
        let n = n as usize;
        let op = match read_str(op) {
            Ok(s) => s,
            Err(c) => return c,
        };
        let l = match read_str(left) {
            Ok(s) => s,
            Err(c) => return c,
        };
        let rhs = if right.is_null() {
            None
        } else {
            match read_str(right) {
                Ok(s) => Some(s),
                Err(c) => return c,
            }
        };
        let run = || -> Result<String, String> {
            let lv = parse_value(l, n).map_err(|e| e.to_string())?;
            let need_rhs = || -> Result<algebroid::parse::Value, String> {
                let r = rhs.ok_or("this operator needs a right operand")?;
                parse_value(r, n).map_err(|e| e.to_string())
            };
            Ok(match op {
                "d" => value_as_form(&lv, n, None)
                    .map_err(|e| e.to_string())?
                    .d()
                    .to_string(),
                "wedge" => {
                    let rv = need_rhs()?;
                    value_as_form(&lv, n, None)
                        .map_err(|e| e.to_string())?
                        .wedge(&value_as_form(&rv, n, None).map_err(|e| e.to_string())?)
                        .to_string()
                }
                "iota" => {
                    let rv = need_rhs()?;
                    value_as_form(&rv, n, None)
                        .map_err(|e| e.to_string())?
                        .contract(&value_as_field(&lv, n).map_err(|e| e.to_string())?)
                        .to_string()
                }
                "lie" => {
                    let rv = need_rhs()?;
                    value_as_form(&rv, n, None)
                        .map_err(|e| e.to_string())?
                        .lie_derivative(&value_as_field(&lv, n).map_err(|e| e.to_string())?)
                        .to_string()
                }
                "kappa" => value_as_form(&lv, n, None)
                    .map_err(|e| e.to_string())?
                    .poincare_homotopy()
                    .map_err(|e| e.to_string())?
                    .to_string(),
                other => return Err(format!("unknown calc op `{other}`")),
            })
        };
        match run() {
            Ok(text) => out_string(text, out),
            Err(e) => {
                set_error(e);
                ALGV_ERR_INPUT
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        algv_string_free(p);
        s
    }

    #[test]
    fn courant_surface() {
        unsafe {
            let mut m: *mut AlgvCourant = ptr::null_mut();
            let twist = c("dx1^dx2^dx3");
            assert_eq!(algv_courant_new(3, twist.as_ptr(), &mut m), ALGV_OK);
            let mut out: *mut c_char = ptr::null_mut();
            let l = c("[0|e1]");
            let r = c("[0|e2]");
            assert_eq!(
                algv_courant_bracket(m, l.as_ptr(), r.as_ptr(), &mut out),
                ALGV_OK
            );
            assert_eq!(take(out), "[dx3|0]");
            let mut rep: *mut c_char = ptr::null_mut();
            assert_eq!(algv_courant_check(m, 3, 10, 7, &mut rep), ALGV_OK);
            let json = take(rep);
            assert!(json.contains("\"status\": \"pass\""));
            algv_courant_free(m);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut m: *mut AlgvCourant = ptr::null_mut();
            // non-closed twist on n=4
            let twist = c("x4*dx1^dx2^dx3");
            assert_eq!(algv_courant_new(4, twist.as_ptr(), &mut m), ALGV_ERR_INPUT);
            let err = algv_last_error();
            assert!(!err.is_null());
            let msg = take(err);
            assert!(msg.contains("closed"));
            // null pointer
            assert_eq!(
                algv_courant_bracket(ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()),
                ALGV_ERR_NULL
            );
        }
    }

    #[test]
    fn vertex_surface_and_calc() {
        unsafe {
            let mut m: *mut AlgvVertex = ptr::null_mut();
            assert_eq!(algv_vertex_new(1, ptr::null(), &mut m), ALGV_OK);
            let mut out: *mut c_char = ptr::null_mut();
            let f = c("x1");
            let v = c("[0|e1]");
            assert_eq!(
                algv_vertex_op(m, 2, f.as_ptr(), v.as_ptr(), &mut out),
                ALGV_OK
            );
            assert_eq!(take(out), "[0|x1*e1]");
            algv_vertex_free(m);

            let op = c("kappa");
            let l = c("dx1^dx2");
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                algv_calc(op.as_ptr(), 2, l.as_ptr(), ptr::null(), &mut out),
                ALGV_OK
            );
            assert_eq!(take(out), "-1/2*x2*dx1+1/2*x1*dx2");
        }
    }

    #[test]
    fn sign_search_surface() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(algv_sign_search(1, 7, 50, 3, &mut out), ALGV_OK);
            let json = take(out);
            assert!(json.contains("+-+---"));
        }
    }
}
