use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fmethod.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct FmGeometry FmGeometry;",
        "FM_STATUS_OK = 0",
        "FM_STATUS_VERIFICATION_FAILED",
        "fm_geometry_new(",
        "fm_geometry_free(",
        "fm_singular(",
        "fm_ode(",
        "fm_verify(",
        "fm_rc_bracket(",
        "fm_string_free(",
        "fm_last_error(",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

/// Directory holding the library artifacts of this build.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "fmethod.h"

int main(void) {
    FmGeometry *g = NULL;
    char *op = NULL;
    if (fm_geometry_new(FM_FAMILY_SO, 3, &g) != FM_STATUS_OK) return 10;
    if (fm_singular(g, 2, "l=3", FM_FORMAT_TEXT, &op) != FM_STATUS_OK) return 11;
    printf("%s\n", op);
    fm_string_free(op);
    fm_geometry_free(g);
    if (fm_geometry_new(FM_FAMILY_UU, 0, &g) != FM_STATUS_INVALID_ARGUMENT) return 12;
    if (strlen(fm_last_error()) == 0) return 13;
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libfmethod_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("fmethod_smoke.c");
    let exe = tmp.join("fmethod_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "d[z_3]^2 + 1/6*d[z_2]^2 + 1/6*d[z_1]^2"
    );
}
