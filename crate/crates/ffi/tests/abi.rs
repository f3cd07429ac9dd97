use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lie_workbench_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = wb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn algebra_handles() {
    unsafe {
        let mut g: *mut WbAlgebra = ptr::null_mut();
        assert_eq!(wb_algebra_from_catalog(c("osp12").as_ptr(), &mut g), WbStatus::Ok);
        assert_eq!(wb_algebra_dim(g), 5);
        let mut ok = false;
        assert_eq!(wb_algebra_jacobi(g, &mut ok), WbStatus::Ok);
        assert!(ok);
        wb_algebra_free(g);
    }
}

#[test]
fn standard_r_matrix_through_the_abi() {
    unsafe {
        let (mut g, mut r) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(wb_algebra_from_catalog(c("sl2").as_ptr(), &mut g), WbStatus::Ok);
        assert_eq!(wb_tensor_from_catalog(c("r.jordan").as_ptr(), c("sl2").as_ptr(), &mut r), WbStatus::Ok);
        let host = wb_tensor_host(r);
        assert_eq!(CStr::from_ptr(host).to_str().unwrap(), "sl2");
        wb_string_free(host);
        let text = wb_tensor_render(r);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("E12"));
        wb_string_free(text);
        let mut ok = false;
        assert_eq!(wb_check_cybe(g, r, &mut ok), WbStatus::Ok);
        assert!(ok);
        wb_tensor_free(r);
        wb_algebra_free(g);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(wb_algebra_from_catalog(ptr::null(), &mut g), WbStatus::NullArgument);
        assert_eq!(wb_algebra_from_catalog(c("sl9x").as_ptr(), &mut g), WbStatus::Usage);
        assert!(last_error().contains("sl9x"));
        assert!(g.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(wb_algebra_from_catalog(bad.as_ptr().cast(), &mut g), WbStatus::InvalidUtf8);
        assert_eq!(wb_algebra_from_catalog(c("sl2").as_ptr(), ptr::null_mut()), WbStatus::NullArgument);

        let mut rep = ptr::null_mut();
        assert_eq!(wb_run(c("check jacobi nowhere;").as_ptr(), 3, &mut rep), WbStatus::Parse);
        assert!(last_error().starts_with("1:14"), "{}", last_error());
        assert_eq!(wb_run(c("").as_ptr(), 9, &mut rep), WbStatus::Usage);
        assert_eq!(wb_report_exit_code(ptr::null()), 2);
        assert!(wb_report_render(ptr::null(), true).is_null());
        wb_algebra_free(ptr::null_mut());
        wb_string_free(ptr::null_mut());
    }
}

#[test]
fn run_reports_failures_in_the_report() {
    let src = "param xi;\nalgebra B { basis h:even x:even; bracket [h,x] = 2 x; }\ncheck jacobi B;\ncheck twist nontwist order 2;\n";
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(wb_run(c(src).as_ptr(), 2, &mut rep), WbStatus::Ok);
        assert_eq!(wb_report_len(rep), 2);
        assert_eq!(wb_report_exit_code(rep), 1);
        let json = wb_report_render(rep, true);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][1]["status"], "fail");
        wb_string_free(json);
        wb_report_free(rep);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(wb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lie_workbench.h")).unwrap();
    for f in [
        "wb_last_error",
        "wb_algebra_from_catalog",
        "wb_algebra_jacobi",
        "wb_tensor_from_catalog",
        "wb_check_cybe",
        "wb_run",
        "wb_report_render",
        "wb_report_free",
        "typedef struct WbAlgebra WbAlgebra",
        "WB_STATUS_NULL_ARGUMENT = 1",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}

/// Compiles `smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("liblie_workbench_ffi.a");
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // test builds link the rlib only; build the static archive explicitly
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut build = Command::new(cargo);
    build.args(["build", "--quiet", "--lib", "--manifest-path"]).arg(manifest.join("Cargo.toml"));
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success(), "cargo build of the static library failed");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success(), "cc failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "smoke exited with {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("PASS"));
}
