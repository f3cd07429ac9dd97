//! C ABI over the workbench: catalog lookups, Jacobi and CYBE checks, and
//! running definition files. Objects cross the boundary as opaque handles;
//! every fallible call returns a `WbStatus` and leaves a message for
//! `wb_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lie_workbench::bialgebra::check_cybe;
use lie_workbench::catalog;
use lie_workbench::dsl::{run, Report, RunOptions};
use lie_workbench::{Error, LieSuperAlgebra, TensorElement};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Syntax or load error in a definition file.
    Parse = 3,
    /// Unknown name, mismatched operands, bad option.
    Usage = 4,
    /// The operation does not apply to this input.
    Unsupported = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// A Lie superalgebra.
pub struct WbAlgebra(LieSuperAlgebra);

/// A tensor over an algebra's basis, together with the name of its host.
pub struct WbTensor {
    tensor: TensorElement,
    host: String,
}

/// Report of a definition-file run.
pub struct WbReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> WbStatus {
    match e {
        Error::Parse { .. } => WbStatus::Parse,
        Error::Unsupported(_) | Error::DimensionGuard(_) | Error::Structural(_) => WbStatus::Unsupported,
        Error::Definition(_) | Error::Usage(_) => WbStatus::Usage,
    }
}

/// Runs `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), WbStatus>) -> WbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WbStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            WbStatus::Internal
        }
    }
}

fn fail(e: Error) -> WbStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WbStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(WbStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        WbStatus::InvalidUtf8
    })
}

unsafe fn read_ref<'a, T>(p: *const T) -> Result<&'a T, WbStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        WbStatus::NullArgument
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), WbStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(WbStatus::NullArgument);
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn wb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from a `wb_*` function returning `char *` and not be freed
/// twice.
#[no_mangle]
pub unsafe extern "C" fn wb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a catalog algebra such as `sl3` or `osp12`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wb_algebra_from_catalog(name: *const c_char, out: *mut *mut WbAlgebra) -> WbStatus {
    guard(|| {
        let name = read_str(name)?;
        let a = catalog::algebra(name).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(WbAlgebra(a))))
    })
}

/// # Safety
/// `a` must be null or a handle from `wb_algebra_from_catalog`.
#[no_mangle]
pub unsafe extern "C" fn wb_algebra_free(a: *mut WbAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_algebra_dim(a: *const WbAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// Writes whether the graded Jacobi identity holds identically.
///
/// # Safety
/// `a` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wb_algebra_jacobi(a: *const WbAlgebra, passed: *mut bool) -> WbStatus {
    guard(|| {
        let a = read_ref(a)?;
        write_out(passed, a.0.verify_jacobi().passed())
    })
}

/// Looks up a catalog tensor. `host` may be null for the default algebra.
///
/// # Safety
/// `name` must be a nul-terminated string, `host` null or one; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn wb_tensor_from_catalog(
    name: *const c_char,
    host: *const c_char,
    out: *mut *mut WbTensor,
) -> WbStatus {
    guard(|| {
        let name = read_str(name)?;
        let host = if host.is_null() { None } else { Some(read_str(host)?) };
        let (tensor, host) = catalog::tensor(name, host).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(WbTensor { tensor, host })))
    })
}

/// # Safety
/// `t` must be null or a handle from `wb_tensor_from_catalog`.
#[no_mangle]
pub unsafe extern "C" fn wb_tensor_free(t: *mut WbTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Renders the tensor in definition-file syntax. Free with `wb_string_free`.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_tensor_render(t: *const WbTensor) -> *mut c_char {
    match t.as_ref() {
        Some(t) => into_c_string(t.tensor.to_dsl()),
        None => ptr::null_mut(),
    }
}

/// Name of the algebra the tensor was built over. Free with `wb_string_free`.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_tensor_host(t: *const WbTensor) -> *mut c_char {
    match t.as_ref() {
        Some(t) => into_c_string(t.host.clone()),
        None => ptr::null_mut(),
    }
}

/// Writes whether the Schouten bracket `[[r, r]]` vanishes over `a`.
///
/// # Safety
/// `a`, `r` must be live handles; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wb_check_cybe(a: *const WbAlgebra, r: *const WbTensor, passed: *mut bool) -> WbStatus {
    guard(|| {
        let (a, r) = (read_ref(a)?, read_ref(r)?);
        let rep = check_cybe(&a.0, &r.tensor).map_err(fail)?;
        write_out(passed, rep.passed())
    })
}

/// Parses, loads and runs a definition file with twist order `order`.
/// Failing checks still give `WB_STATUS_OK`; inspect the report.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wb_run(source: *const c_char, order: u32, out: *mut *mut WbReport) -> WbStatus {
    guard(|| {
        let src = read_str(source)?;
        let options = RunOptions {
            order,
            ..RunOptions::default()
        };
        let report = run(src, &options).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(WbReport(report))))
    })
}

/// # Safety
/// `r` must be null or a handle from `wb_run`.
#[no_mangle]
pub unsafe extern "C" fn wb_report_free(r: *mut WbReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// 0 when every check passed, 1 otherwise, 2 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_report_exit_code(r: *const WbReport) -> i32 {
    r.as_ref().map_or(2, |r| r.0.exit_code())
}

/// Number of checks in the report.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_report_len(r: *const WbReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Text rendering, or the structured (JSON) tree when `structured` is set.
/// Free with `wb_string_free`.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wb_report_render(r: *const WbReport, structured: bool) -> *mut c_char {
    match r.as_ref() {
        Some(r) if structured => into_c_string(r.0.render_structured()),
        Some(r) => into_c_string(r.0.render_text()),
        None => ptr::null_mut(),
    }
}
