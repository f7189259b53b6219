use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use lyu_ffi::*;

fn parse(text: &str) -> *mut LyuIdeal {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lyu_ideal_parse(c.as_ptr(), &mut out) }, LyuStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lyu_last_error()) }.to_string_lossy().into_owned()
}

fn entry(t: *const LyuTable, a: usize, b: usize) -> usize {
    let mut v = usize::MAX;
    assert_eq!(unsafe { lyu_table_get(t, a, b, &mut v) }, LyuStatus::Ok);
    v
}

#[test]
fn two_planes_round_trip() {
    let ideal = parse("n = 4\nx1*x3\nx1*x4\nx2*x3\nx2*x4\n");
    unsafe {
        assert_eq!(lyu_ideal_num_vars(ideal), 4);
        assert_eq!(lyu_ideal_num_gens(ideal), 4);

        let mut lam = ptr::null_mut();
        assert_eq!(lyu_lyubeznik(ideal, ptr::null(), &mut lam), LyuStatus::Ok);
        assert_eq!(lyu_table_dim(lam), 2);
        assert_eq!((entry(lam, 0, 1), entry(lam, 2, 2), entry(lam, 1, 2)), (1, 2, 0));
        let mut bad = 9;
        assert_eq!(lyu_table_check(lam, &mut bad), LyuStatus::Ok);
        assert_eq!(bad, 0);

        let mut json = ptr::null_mut();
        assert_eq!(lyu_table_json(lam, &mut json), LyuStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["d"], 2);
        lyu_string_free(json);
        lyu_table_free(lam);

        let mut betti = ptr::null_mut();
        assert_eq!(lyu_betti(ideal, ptr::null(), &mut betti), LyuStatus::Ok);
        assert_eq!((entry(betti, 0, 2), entry(betti, 1, 3), entry(betti, 2, 4)), (4, 4, 1));
        lyu_table_free(betti);

        let mut dual = ptr::null_mut();
        assert_eq!(lyu_ideal_dual(ideal, &mut dual), LyuStatus::Ok);
        assert_eq!(lyu_ideal_num_gens(dual), 2);
        let opts = LyuOptions { characteristic: 2, randomized: 1, seed: 7, trials: 2 };
        let mut nu = ptr::null_mut();
        assert_eq!(lyu_nu(dual, &opts, &mut nu), LyuStatus::Ok);
        assert_eq!(lyu_table_dim(nu), 2);
        lyu_table_free(nu);
        lyu_ideal_free(dual);
        lyu_ideal_free(ideal);
    }
}

#[test]
fn complexes_become_stanley_reisner_ideals() {
    let ideal = parse(r#"{"n":3,"facets":[[1,2],[2,3]]}"#);
    assert_eq!(unsafe { lyu_ideal_num_gens(ideal) }, 1);
    unsafe { lyu_ideal_free(ideal) };
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = CString::new("x1 ^").unwrap();
        assert_eq!(lyu_ideal_parse(bad.as_ptr(), &mut out), LyuStatus::Parse);
        assert!(out.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(lyu_ideal_parse(ptr::null(), &mut out), LyuStatus::NullArgument);

        let ideal = parse("x1*x2");
        let opts = LyuOptions { characteristic: 4, randomized: 0, seed: 0, trials: 1 };
        let mut t = ptr::null_mut();
        assert_eq!(lyu_betti(ideal, &opts, &mut t), LyuStatus::InvalidInput);
        assert_eq!(lyu_betti(ideal, ptr::null(), ptr::null_mut()), LyuStatus::NullArgument);
        assert_eq!(lyu_betti(ideal, ptr::null(), &mut t), LyuStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(lyu_table_get(t, 0, 0, ptr::null_mut()), LyuStatus::NullArgument);
        lyu_table_free(t);

        let sq = parse("x1^2*x2");
        let mut d = ptr::null_mut();
        assert_eq!(lyu_ideal_dual(sq, &mut d), LyuStatus::InvalidInput);
        lyu_ideal_free(sq);
        lyu_ideal_free(ideal);

        lyu_ideal_free(ptr::null_mut());
        lyu_table_free(ptr::null_mut());
        lyu_string_free(ptr::null_mut());
        assert_eq!(lyu_table_dim(ptr::null()), 0);
    }
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    // target/<profile>/deps/api-* -> target/<profile>/liblyu_ffi.a
    let lib = exe.parent()?.parent()?.join("liblyu_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_smoke_test() {
    let (Some(cc), Some(lib)) = (compiler(), static_lib()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    let bin = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("lyu_smoke");
    let status = Command::new(cc)
        .arg(here.join("tests/smoke.c"))
        .arg("-I")
        .arg(here.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "compiling smoke.c failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
