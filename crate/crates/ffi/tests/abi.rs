use std::ffi::{c_char, c_void, CStr, CString};
use std::process::Command;
use std::ptr;

use dicaut_ffi::*;

fn new_group(spec: &str) -> *mut DicautGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { dicaut_group_new(spec.as_ptr(), &mut g) }, DicautStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dicaut_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn group_queries() {
    let g = new_group("q8e:1");
    let mut n = 0u64;
    let mut m = 0u64;
    let mut q8e = false;
    let mut log2 = 0u64;
    unsafe {
        assert_eq!(dicaut_group_order(g, &mut n), DicautStatus::Ok);
        assert_eq!(dicaut_group_m(g, &mut m), DicautStatus::Ok);
        assert_eq!(dicaut_group_is_q8e(g, &mut q8e), DicautStatus::Ok);
        assert_eq!(dicaut_group_inverse_closed_log2(g, &mut log2), DicautStatus::Ok);
    }
    assert_eq!((n, m, q8e, log2), (16, 4, true, 10));

    let mut needed = 0usize;
    let status = unsafe { dicaut_group_spec(g, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, DicautStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(unsafe { dicaut_group_spec(g, buf.as_mut_ptr(), buf.len(), &mut needed) }, DicautStatus::Ok);
    let spec = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(spec, "dic:C4xC2:y=2,0");
    unsafe { dicaut_group_free(g) };
}

#[test]
fn errors_are_codes_with_messages() {
    let bad = CString::new("dic:C5:y=1").unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { dicaut_group_new(bad.as_ptr(), &mut g) };
    assert_ne!(status, DicautStatus::Ok);
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    let junk = CString::new("nonsense").unwrap();
    assert_eq!(unsafe { dicaut_group_new(junk.as_ptr(), &mut g) }, DicautStatus::Parse);
    assert_eq!(unsafe { dicaut_group_new(ptr::null(), &mut g) }, DicautStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { dicaut_group_order(ptr::null(), &mut n) }, DicautStatus::NullPointer);

    let q8 = new_group("q8e:0");
    let not_closed = CString::new("02").unwrap();
    let mut c = std::mem::MaybeUninit::<DicautClassification>::uninit();
    let status = unsafe { dicaut_classify(q8, not_closed.as_ptr(), false, c.as_mut_ptr()) };
    assert_eq!(status, DicautStatus::Domain, "{}", last_error());
    unsafe { dicaut_group_free(q8) };
    unsafe { dicaut_group_free(ptr::null_mut()) };
}

#[test]
fn classify_struct_and_json() {
    let g = new_group("q8e:0");
    let empty = CString::new("00").unwrap();
    let mut c = std::mem::MaybeUninit::<DicautClassification>::uninit();
    assert_eq!(unsafe { dicaut_classify(g, empty.as_ptr(), false, c.as_mut_ptr()) }, DicautStatus::Ok);
    let c = unsafe { c.assume_init() };
    assert_eq!(c.aut_order, 40320);
    assert_eq!(c.b_order, 64);
    assert!(!c.aut_order_saturated);
    assert_eq!(c.verdict, DicautVerdict::ProperSupergroup);

    let mut needed = 0;
    let mut small = [0 as c_char; 4];
    let status = unsafe { dicaut_classify_json(g, empty.as_ptr(), false, small.as_mut_ptr(), small.len(), &mut needed) };
    assert_eq!(status, DicautStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    let status = unsafe { dicaut_classify_json(g, empty.as_ptr(), false, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, DicautStatus::Ok);
    let json = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["aut_order"], 40320);
    unsafe { dicaut_group_free(g) };
}

#[test]
fn saturated_orders() {
    // The edgeless graph on 32 vertices has |Aut| = 32! > u64::MAX.
    let g = new_group("q8e:2");
    let empty = CString::new("00000000").unwrap();
    let mut c = std::mem::MaybeUninit::<DicautClassification>::uninit();
    assert_eq!(unsafe { dicaut_classify(g, empty.as_ptr(), false, c.as_mut_ptr()) }, DicautStatus::Ok);
    let c = unsafe { c.assume_init() };
    assert!(c.aut_order_saturated);
    assert_eq!(c.aut_order, u64::MAX);
    assert_eq!((c.b_order, c.b_order_saturated), (256, false));
    unsafe { dicaut_group_free(g) };
}

unsafe extern "C" fn collect(line: *const c_char, user: *mut c_void) -> i32 {
    let lines = &mut *(user as *mut Vec<String>);
    lines.push(CStr::from_ptr(line).to_str().unwrap().to_string());
    0
}

unsafe extern "C" fn stop_after_three(_line: *const c_char, user: *mut c_void) -> i32 {
    let seen = &mut *(user as *mut u32);
    *seen += 1;
    i32::from(*seen >= 3)
}

#[test]
fn censuses() {
    let g = new_group("dic:C6:y=3");
    let mut lines: Vec<String> = Vec::new();
    let mut s = std::mem::MaybeUninit::<DicautSummary>::uninit();
    let status = unsafe {
        dicaut_census_exhaustive(g, false, 2, Some(collect), &mut lines as *mut _ as *mut c_void, s.as_mut_ptr())
    };
    assert_eq!(status, DicautStatus::Ok);
    let s = unsafe { s.assume_init() };
    assert_eq!((s.n, s.m, s.total), (12, 2, 128));
    assert_eq!(lines.len(), 128);
    assert!(s.has_bound && s.vacuous && s.satisfied);

    let mut a = std::mem::MaybeUninit::<DicautSummary>::uninit();
    let mut b = std::mem::MaybeUninit::<DicautSummary>::uninit();
    unsafe {
        assert_eq!(dicaut_census_sampled(g, 50, 3, true, 1, None, ptr::null_mut(), a.as_mut_ptr()), DicautStatus::Ok);
        assert_eq!(dicaut_census_sampled(g, 50, 3, true, 2, None, ptr::null_mut(), b.as_mut_ptr()), DicautStatus::Ok);
    }
    let (a, b) = unsafe { (a.assume_init(), b.assume_init()) };
    assert_eq!(a.exceptional, b.exceptional);
    assert_eq!(a.ci_halfwidth, b.ci_halfwidth);
    assert!(!a.has_bound);

    let mut seen = 0u32;
    let mut c = std::mem::MaybeUninit::<DicautSummary>::uninit();
    let status = unsafe {
        dicaut_census_sampled(g, 50, 3, false, 1, Some(stop_after_three), &mut seen as *mut _ as *mut c_void, c.as_mut_ptr())
    };
    assert_eq!(status, DicautStatus::Aborted);
    assert_eq!(seen, 3);

    let big = new_group("q8e:3");
    let status = unsafe { dicaut_census_exhaustive(big, false, 1, None, ptr::null_mut(), c.as_mut_ptr()) };
    assert_eq!(status, DicautStatus::CapExceeded);
    unsafe {
        dicaut_group_free(big);
        dicaut_group_free(g);
    }
}

#[test]
fn version_matches_manifest() {
    let v = unsafe { CStr::from_ptr(dicaut_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_abi_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dicaut.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "dicaut_group_new",
        "dicaut_group_free",
        "dicaut_classify_json",
        "dicaut_census_sampled",
        "dicaut_last_error",
        "DICAUT_STATUS_CAP_EXCEEDED",
        "typedef struct DicautGroup DicautGroup;",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(probe.status.success());
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_against_static_library() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libdicaut_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("static library or C compiler unavailable; skipping");
        return;
    }
    let dir = tempfile_dir();
    let exe = dir.join("census");
    let manifest = env!("CARGO_MANIFEST_DIR");
    let out = Command::new("cc")
        .arg("-std=c99")
        .arg(format!("-I{manifest}/include"))
        .arg(format!("{manifest}/examples/census.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("q8 empty: aut=40320 b=64 proper=1"), "{text}");
    assert!(text.contains("dic c6: total=128 records=128 vacuous=1 satisfied=1"), "{text}");
    assert!(text.contains("error: "), "{text}");
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("ffi-c-example");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
