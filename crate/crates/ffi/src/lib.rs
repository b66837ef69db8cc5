//! C ABI over the `updown` library.
//!
//! Diagrams and cocycles cross the boundary as opaque handles. Every function
//! returns a [`UdStatus`]; on anything other than `UD_STATUS_OK` a message is
//! available from [`ud_last_error`] on the same thread. Strings returned
//! through out-pointers are owned by the caller and released with
//! [`ud_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use updown::cocycle::{builtin_by_name, check_cocycle, is_shiftable, CocycleTable};
use updown::coloring::{count_colorings, maxord, ColoringSpec};
use updown::diagram::{Diagram, SemiArcId};
use updown::invariant::{phi_multiset, phi_shift, rii_report};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    Panic = 5,
}

/// Opaque handle to a validated diagram.
pub struct UdDiagram {
    inner: Diagram,
}

/// Opaque handle to a cocycle table.
pub struct UdCocycle {
    inner: CocycleTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

struct Failure(UdStatus, String);

impl Failure {
    fn domain(e: impl ToString) -> Self {
        Failure(UdStatus::DomainError, e.to_string())
    }

    fn parse(e: impl ToString) -> Self {
        Failure(UdStatus::ParseError, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            UdStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            UdStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(UdStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(UdStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(UdStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(UdStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(Failure::domain)?;
    write(out, c.into_raw())
}

/// Message for the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ud_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ud_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a signed Gauss code such as `"O1+ O2+ ; U1+ U2+"`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_diagram_parse(code: *const c_char, out: *mut *mut UdDiagram) -> UdStatus {
    guard(|| {
        let d: Diagram = text(code)?.parse().map_err(Failure::parse)?;
        write(out, Box::into_raw(Box::new(UdDiagram { inner: d })))
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ud_diagram_free(d: *mut UdDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical Gauss code text; free with [`ud_string_free`].
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_diagram_serialize(d: *const UdDiagram, out: *mut *mut c_char) -> UdStatus {
    guard(|| write_string(out, handle(d)?.inner.serialize()))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_diagram_component_count(d: *const UdDiagram, out: *mut usize) -> UdStatus {
    guard(|| write(out, handle(d)?.inner.component_count()))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_maxord(d: *const UdDiagram, out: *mut u64) -> UdStatus {
    guard(|| write(out, maxord(&handle(d)?.inner)))
}

/// Number of `(n; positive, negative)` colorings. Fails if it exceeds 2^64 - 1.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_count_colorings(
    d: *const UdDiagram,
    n: u32,
    positive: i64,
    negative: i64,
    out: *mut u64,
) -> UdStatus {
    guard(|| {
        let spec = ColoringSpec::new(n, positive, negative).map_err(Failure::domain)?;
        let count = count_colorings(&handle(d)?.inner, spec).map_err(Failure::domain)?;
        let count = u64::try_from(count).map_err(|_| Failure::domain(format!("count {count} exceeds 64 bits")))?;
        write(out, count)
    })
}

/// Connected sum of two knot diagrams, cut open at the given semi-arcs.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_connected_sum(
    a: *const UdDiagram,
    a_position: usize,
    b: *const UdDiagram,
    b_position: usize,
    out: *mut *mut UdDiagram,
) -> UdStatus {
    guard(|| {
        let sum = handle(a)?
            .inner
            .connected_sum(&handle(b)?.inner, SemiArcId::new(0, a_position), SemiArcId::new(0, b_position))
            .map_err(Failure::domain)?;
        write(out, Box::into_raw(Box::new(UdDiagram { inner: sum })))
    })
}

/// Looks up `example-f`, `example-g` or `zero(n,m)`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_cocycle_builtin(name: *const c_char, out: *mut *mut UdCocycle) -> UdStatus {
    guard(|| {
        let t = builtin_by_name(text(name)?).map_err(Failure::parse)?;
        write(out, Box::into_raw(Box::new(UdCocycle { inner: t })))
    })
}

/// Parses the cocycle file format (`n=<n> m=<m>` then `<a> <b> <+|-> <value>` lines).
///
/// # Safety
/// `contents` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_cocycle_parse(contents: *const c_char, out: *mut *mut UdCocycle) -> UdStatus {
    guard(|| {
        let t = CocycleTable::parse_file(text(contents)?).map_err(Failure::parse)?;
        write(out, Box::into_raw(Box::new(UdCocycle { inner: t })))
    })
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ud_cocycle_free(f: *mut UdCocycle) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes -1 to `condition` if the table satisfies every cocycle condition,
/// otherwise the number of the first failing condition. On failure a
/// non-null `witness` receives text such as `"a=0,b=1,c=2"`.
///
/// # Safety
/// `f` must be a live handle; `condition` must be writable; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn ud_cocycle_check(
    f: *const UdCocycle,
    condition: *mut i32,
    witness: *mut *mut c_char,
) -> UdStatus {
    guard(|| match check_cocycle(&handle(f)?.inner) {
        Ok(()) => write(condition, -1),
        Err(v) => {
            write(condition, i32::from(v.condition))?;
            if !witness.is_null() {
                write_string(witness, v.witness.to_string())?;
            }
            Ok(())
        }
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_cocycle_is_shiftable(f: *const UdCocycle, out: *mut bool) -> UdStatus {
    guard(|| write(out, is_shiftable(&handle(f)?.inner)))
}

/// Shift invariant of a knot diagram for a shiftable cocycle.
///
/// # Safety
/// `d` and `f` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_phi_shift(d: *const UdDiagram, f: *const UdCocycle, out: *mut u32) -> UdStatus {
    guard(|| {
        let v = phi_shift(&handle(d)?.inner, &handle(f)?.inner).map_err(Failure::domain)?;
        write(out, v)
    })
}

/// Multiset of weight sums of a knot diagram, as text `"{v1,v2,...}"`.
///
/// # Safety
/// `d` and `f` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ud_phi_multiset(d: *const UdDiagram, f: *const UdCocycle, out: *mut *mut c_char) -> UdStatus {
    guard(|| {
        let m = phi_multiset(&handle(d)?.inner, &handle(f)?.inner).map_err(Failure::domain)?;
        write_string(out, m.to_string())
    })
}

/// Best RII lower bound between two diagrams. `f` may be null. `report`
/// (if non-null) receives the `bound=.. certificate=.. detail=..` line.
///
/// # Safety
/// `a` and `b` must be live handles; `f` null or live; `bound` writable.
#[no_mangle]
pub unsafe extern "C" fn ud_compare(
    a: *const UdDiagram,
    b: *const UdDiagram,
    f: *const UdCocycle,
    bound: *mut u64,
    report: *mut *mut c_char,
) -> UdStatus {
    guard(|| {
        let f = f.as_ref().map(|f| &f.inner);
        let r = rii_report(&handle(a)?.inner, &handle(b)?.inner, f).map_err(Failure::domain)?;
        write(bound, r.bound)?;
        if !report.is_null() {
            write_string(report, r.to_string())?;
        }
        Ok(())
    })
}
