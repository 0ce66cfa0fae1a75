use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use asz_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
    asz_string_free(s);
    text
}

unsafe fn last_error() -> String {
    let e = asz_last_error();
    assert!(!e.is_null());
    CStr::from_ptr(e).to_string_lossy().into_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(asz_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn build_validate_and_color_k3() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(asz_partition_new(3, &mut p), AszStatus::Ok);
        let (a0, b0) = ([0usize], [1usize, 2]);
        let (a1, b1) = ([1usize], [2usize]);
        assert_eq!(
            asz_partition_add_biclique(p, a0.as_ptr(), 1, b0.as_ptr(), 2),
            AszStatus::Ok
        );
        assert_eq!(
            asz_partition_add_biclique(p, a1.as_ptr(), 1, b1.as_ptr(), 1),
            AszStatus::Ok
        );
        assert_eq!(asz_partition_vertex_count(p), 3);
        assert_eq!(asz_partition_biclique_count(p), 2);

        let mut violations = usize::MAX;
        assert_eq!(asz_partition_validate(p, &mut violations), AszStatus::Ok);
        assert_eq!(violations, 0);

        let mut c = ptr::null_mut();
        assert_eq!(asz_color(p, AszStrategy::Thm1, true, &mut c), AszStatus::Ok);
        assert_eq!(asz_coloring_len(c), 3);
        assert_eq!(asz_coloring_num_colors(c), 3);
        let mut buf = [u64::MAX; 3];
        assert_eq!(asz_coloring_copy(c, buf.as_mut_ptr(), 3), AszStatus::Ok);
        buf.sort_unstable();
        assert_eq!(buf, [0, 1, 2]);
        assert_eq!(
            asz_coloring_copy(c, buf.as_mut_ptr(), 2),
            AszStatus::InvalidArgument
        );

        let mut s = ptr::null_mut();
        assert_eq!(asz_coloring_bound(c, &mut s), AszStatus::Ok);
        assert_eq!(take_string(s), "3");
        assert_eq!(asz_coloring_to_json(c, &mut s), AszStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(json["trace"].as_array().unwrap().len(), 2);
        asz_coloring_free(c);

        assert_eq!(
            asz_color(p, AszStrategy::Bitvector, false, &mut c),
            AszStatus::Ok
        );
        assert_eq!(asz_coloring_num_colors(c), 3);
        assert_eq!(asz_coloring_bound(c, &mut s), AszStatus::Ok);
        assert_eq!(take_string(s), "4");
        asz_coloring_free(c);

        let mut chi = 0;
        let mut bp = 0;
        assert_eq!(asz_chromatic_number(p, &mut chi), AszStatus::Ok);
        assert_eq!(asz_bp_exact(p, &mut bp), AszStatus::Ok);
        assert_eq!((chi, bp), (3, 2));
        asz_partition_free(p);
    }
}

#[test]
fn json_round_trip_and_generators() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(asz_gen_random(25, 10, 42, &mut p), AszStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(asz_partition_to_json(p, &mut s), AszStatus::Ok);
        let text = take_string(s);
        let c_text = CString::new(text.clone()).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(
            asz_partition_from_json(c_text.as_ptr(), &mut q),
            AszStatus::Ok
        );
        assert_eq!(asz_partition_to_json(q, &mut s), AszStatus::Ok);
        assert_eq!(take_string(s), text);
        for strategy in [AszStrategy::Thm1, AszStrategy::Prop2, AszStrategy::Greedy] {
            let mut c = ptr::null_mut();
            assert_eq!(asz_color(q, strategy, false, &mut c), AszStatus::Ok);
            assert_eq!(asz_coloring_len(c), 25);
            asz_coloring_free(c);
        }
        asz_partition_free(p);
        asz_partition_free(q);

        assert_eq!(asz_gen_star(5, &mut p), AszStatus::Ok);
        let mut bp = 0;
        assert_eq!(asz_bp_exact(p, &mut bp), AszStatus::Ok);
        assert_eq!(bp, 4);
        asz_partition_free(p);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        assert_eq!(
            asz_partition_new(3, ptr::null_mut()),
            AszStatus::NullPointer
        );
        assert!(last_error().contains("null"));
        let mut violations = 0;
        assert_eq!(
            asz_partition_validate(ptr::null(), &mut violations),
            AszStatus::NullPointer
        );

        let bad = CString::new("{\"n\": 2, \"bicliques\": [").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(asz_partition_from_json(bad.as_ptr(), &mut p), AszStatus::Io);
        assert!(p.is_null());

        assert_eq!(asz_partition_new(2, &mut p), AszStatus::Ok);
        let (a, b) = ([0usize], [5usize]);
        assert_eq!(
            asz_partition_add_biclique(p, a.as_ptr(), 1, b.as_ptr(), 1),
            AszStatus::InvalidArgument
        );
        let b = [1usize];
        assert_eq!(
            asz_partition_add_biclique(p, a.as_ptr(), 1, b.as_ptr(), 1),
            AszStatus::Ok
        );
        assert_eq!(
            asz_partition_add_biclique(p, b.as_ptr(), 1, a.as_ptr(), 1),
            AszStatus::Ok
        );
        assert_eq!(asz_partition_validate(p, &mut violations), AszStatus::Ok);
        assert!(violations > 0);
        let mut c = ptr::null_mut();
        assert_eq!(
            asz_color(p, AszStrategy::Thm1, false, &mut c),
            AszStatus::InvalidInstance
        );
        assert!(!last_error().is_empty());
        asz_partition_free(p);

        assert_eq!(asz_gen_star(17, &mut p), AszStatus::Ok);
        let mut chi = 0;
        assert_eq!(asz_chromatic_number(p, &mut chi), AszStatus::OracleLimit);
        asz_partition_free(p);

        // Successful calls clear the last error.
        assert_eq!(asz_gen_star(3, &mut p), AszStatus::Ok);
        assert!(asz_last_error().is_null());
        asz_partition_free(p);

        asz_partition_free(ptr::null_mut());
        asz_coloring_free(ptr::null_mut());
        asz_string_free(ptr::null_mut());
    }
}

#[test]
fn bound_values() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            asz_bound_value(AszBoundKind::Rec4, 5, &mut s),
            AszStatus::Ok
        );
        assert_eq!(take_string(s), "7");
        assert_eq!(
            asz_bound_value(AszBoundKind::Rec2, 3, &mut s),
            AszStatus::Ok
        );
        assert_eq!(take_string(s), "5");
        assert_eq!(
            asz_bound_value(AszBoundKind::Rec4, 0, &mut s),
            AszStatus::Ok
        );
        assert_eq!(take_string(s), "1");
    }
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "asz.h"

int main(void) {
    AszPartition *p = NULL;
    AszColoring *c = NULL;
    char *bound = NULL;
    if (asz_gen_star(6, &p) != ASZ_STATUS_OK) return 1;
    if (asz_color(p, ASZ_STRATEGY_THM1, false, &c) != ASZ_STATUS_OK) return 2;
    if (asz_coloring_num_colors(c) != 6) return 3;
    if (asz_coloring_bound(c, &bound) != ASZ_STATUS_OK) return 4;
    printf("%s\n", bound);
    asz_string_free(bound);
    asz_coloring_free(c);
    if (asz_color(NULL, ASZ_STRATEGY_THM1, false, &c) != ASZ_STATUS_NULL_POINTER) return 5;
    if (asz_last_error() == NULL) return 6;
    asz_partition_free(p);
    return 0;
}
"#;

/// Compiles a small C program against the generated header and static library.
/// Skipped when no C compiler or static library is available.
#[test]
fn c_program_links_against_the_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp.parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let lib = profile_dir.join("libasz_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C smoke test: no cc or {}", lib.display());
        return;
    }
    let src = tmp.join("asz_smoke.c");
    let exe = tmp.join("asz_smoke");
    std::fs::write(&src, C_SMOKE).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    // rec4[5] bounds the star partition of K_6.
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "7");
}
