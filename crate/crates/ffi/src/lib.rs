//! C ABI over `ghpq`.
//!
//! Every entry point returns a [`GhpqStatus`]; on anything but
//! `GHPQ_STATUS_OK` the thread-local message from
//! [`ghpq_last_error_message`] describes the failure. Polynomials are opaque
//! [`GhpqPoly`] handles released with [`ghpq_poly_free`]; strings handed out
//! by the library are released with [`ghpq_string_free`]. Input strings are
//! NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ghpq::cli::{parse_bindings, parse_pq_set};
use ghpq::error::Error;
use ghpq::expr::{parse_poly_expr, parse_scalar};
use ghpq::family::{construct, FamilyParams, Strategy};
use ghpq::format::{poly_to_json_terms, poly_to_latex, poly_to_text};
use ghpq::heat::{solve, HeatProblem};
use ghpq::identity::{audit_grid, GridRanges, Tag, VariantPolicy};
use ghpq::poly::Poly;
use ghpq::var::Var;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhpqStatus {
    Ok = 0,
    /// Null pointer or non-UTF-8 string.
    InvalidArgument = 1,
    InvalidParams = 2,
    Unsupported = 3,
    ParseError = 4,
    /// `ghpq_verify` found a failing identity.
    IdentityFailed = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// Opaque exact polynomial.
pub struct GhpqPoly {
    inner: Poly,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GhpqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::DisallowedVariable(_) | Error::UnknownTag(_) => GhpqStatus::ParseError,
            Error::Unsupported(_) => GhpqStatus::Unsupported,
            _ => GhpqStatus::InvalidParams,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: &str) -> Failure {
    Failure(GhpqStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<GhpqStatus, Failure>) -> GhpqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == GhpqStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GhpqStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn read_poly<'a>(p: *const GhpqPoly) -> Result<&'a Poly, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| invalid("polynomial handle is null"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    *out = value;
    Ok(())
}

fn into_handle(p: Poly) -> *mut GhpqPoly {
    Box::into_raw(Box::new(GhpqPoly { inner: p }))
}

fn into_cstring(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| invalid("output contains NUL"))
}

/// Builds H_{n,m}^{(p,q)}(z,w|gamma). `strategy` is one of explicit,
/// operational, creation, recurrence, genfun, hypergeom; null means explicit.
///
/// # Safety
/// `strategy` is null or a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_compute(
    p: u32,
    q: u32,
    n: u32,
    m: u32,
    strategy: *const c_char,
    out: *mut *mut GhpqPoly,
) -> GhpqStatus {
    guard(|| {
        let strategy = if strategy.is_null() {
            Strategy::Explicit
        } else {
            read_str(strategy, "strategy")?.parse()?
        };
        let g = construct(FamilyParams::new(p, q, n, m)?, strategy)?;
        write_out(out, into_handle(g.poly))?;
        Ok(GhpqStatus::Ok)
    })
}

/// Parses a polynomial in z, w, gamma, t.
///
/// # Safety
/// `src` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_parse(src: *const c_char, out: *mut *mut GhpqPoly) -> GhpqStatus {
    guard(|| {
        let p = parse_poly_expr(read_str(src, "src")?, &[Var::Z, Var::W, Var::Gamma, Var::T])?;
        write_out(out, into_handle(p))?;
        Ok(GhpqStatus::Ok)
    })
}

/// Simultaneous substitution, e.g. `"z=1/2,gamma=-1"`; right-hand sides may
/// use z, w, gamma, t.
///
/// # Safety
/// `poly` is a live handle, `bindings` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_subst(
    poly: *const GhpqPoly,
    bindings: *const c_char,
    out: *mut *mut GhpqPoly,
) -> GhpqStatus {
    guard(|| {
        let p = read_poly(poly)?;
        let b = parse_bindings(read_str(bindings, "bindings")?, &[Var::Z, Var::W, Var::Gamma, Var::T])?;
        write_out(out, into_handle(p.subst(&b)))?;
        Ok(GhpqStatus::Ok)
    })
}

/// Writes true to `out` when the two polynomials are identical.
///
/// # Safety
/// Both handles are live; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_equal(a: *const GhpqPoly, b: *const GhpqPoly, out: *mut bool) -> GhpqStatus {
    guard(|| {
        let eq = read_poly(a)? == read_poly(b)?;
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        *out = eq;
        Ok(GhpqStatus::Ok)
    })
}

/// Number of nonzero terms.
///
/// # Safety
/// `poly` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_term_count(poly: *const GhpqPoly) -> usize {
    poly.as_ref().map_or(0, |h| h.inner.len())
}

unsafe fn render(poly: *const GhpqPoly, out: *mut *mut c_char, f: impl FnOnce(&Poly) -> String) -> GhpqStatus {
    guard(|| {
        let s = into_cstring(f(read_poly(poly)?))?;
        if out.is_null() {
            drop(CString::from_raw(s));
            return Err(invalid("output pointer is null"));
        }
        *out = s;
        Ok(GhpqStatus::Ok)
    })
}

/// ASCII text such as `z^2*w + 2*z*gamma`. Free with [`ghpq_string_free`].
///
/// # Safety
/// `poly` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_to_text(poly: *const GhpqPoly, out: *mut *mut c_char) -> GhpqStatus {
    render(poly, out, poly_to_text)
}

/// LaTeX such as `z^{2}w + 2\gamma z`.
///
/// # Safety
/// `poly` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_to_latex(poly: *const GhpqPoly, out: *mut *mut c_char) -> GhpqStatus {
    render(poly, out, poly_to_latex)
}

/// JSON array of `{"exps": {...}, "num": "...", "den": "..."}` terms.
///
/// # Safety
/// `poly` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_to_json(poly: *const GhpqPoly, out: *mut *mut c_char) -> GhpqStatus {
    render(poly, out, |p| serde_json::to_string(&poly_to_json_terms(p)).unwrap_or_default())
}

/// Solves c d_z^p d_w^q u = d_t u with u(z,w;0) = `initial`. `c` is a
/// rational such as `"-3/7"`.
///
/// # Safety
/// `c` and `initial` are valid C strings; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ghpq_heat_solve(
    p: u32,
    q: u32,
    c: *const c_char,
    initial: *const c_char,
    out: *mut *mut GhpqPoly,
) -> GhpqStatus {
    guard(|| {
        let c = parse_scalar(read_str(c, "c")?)?;
        let f = parse_poly_expr(read_str(initial, "initial")?, &[Var::Z, Var::W])?;
        let u = solve(&HeatProblem::new(p, q, c, f)?)?.u;
        write_out(out, into_handle(u))?;
        Ok(GhpqStatus::Ok)
    })
}

/// Checks one identity tag (or `"all"`) over n ≤ `nmax`, m ≤ `mmax` and the
/// (p,q) list `pq` (e.g. `"1,1;2,1"`). `variant` is printed, corrected or
/// both. Returns `GHPQ_STATUS_IDENTITY_FAILED` if any cell fails. When
/// `report_json` is non-null it receives the JSON report array.
///
/// # Safety
/// String arguments are valid C strings; `report_json` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn ghpq_verify(
    tag: *const c_char,
    pq: *const c_char,
    nmax: u32,
    mmax: u32,
    order: usize,
    variant: *const c_char,
    report_json: *mut *mut c_char,
) -> GhpqStatus {
    guard(|| {
        let tag = read_str(tag, "tag")?;
        let tags: Vec<Tag> = if tag.eq_ignore_ascii_case("all") {
            Tag::ALL.to_vec()
        } else {
            vec![tag.parse()?]
        };
        let ranges = GridRanges::new(nmax, mmax, parse_pq_set(read_str(pq, "pq")?)?);
        let policy: VariantPolicy = read_str(variant, "variant")?.parse()?;
        let results = audit_grid(&tags, &ranges, order, policy)?;
        if !report_json.is_null() {
            let reports: Vec<_> = results.iter().flat_map(|v| v.reports.iter()).collect();
            let doc = serde_json::to_string(&reports).map_err(|e| Failure(GhpqStatus::Internal, e.to_string()))?;
            *report_json = into_cstring(doc)?;
        }
        Ok(if results.iter().all(|v| v.passed()) {
            GhpqStatus::Ok
        } else {
            GhpqStatus::IdentityFailed
        })
    })
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ghpq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `poly` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ghpq_poly_free(poly: *mut GhpqPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ghpq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
