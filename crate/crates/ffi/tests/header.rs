use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

/// The static library built alongside this test, in `deps/` or uplifted.
fn static_lib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let candidates = [deps.join("libtcg_ffi.a"), deps.parent().unwrap().join("libtcg_ffi.a")];
    candidates.iter().find(|p| p.exists()).unwrap_or(&candidates[0]).clone()
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(manifest().join("include/tcg.h")).unwrap();
    let source = std::fs::read_to_string(manifest().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| {
            l.trim().strip_prefix("pub unsafe extern \"C\" fn ").or(l.trim().strip_prefix("pub extern \"C\" fn "))
        })
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from tcg.h");
    }
    assert!(header.contains("typedef struct TcgDfa TcgDfa;"));
    assert!(header.contains("TCG_STATUS_OK = 0"));
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = static_lib();
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "tcg.h"

int main(void) {
    TcgDfa *d = NULL;
    if (tcg_dfa_from_regex("aaa(aaa)*", "a", &d) != TCG_STATUS_OK) return 1;
    size_t n = 0;
    if (tcg_dfa_state_complexity(d, &n) != TCG_STATUS_OK || n != 4) return 2;
    bool member = false;
    if (tcg_dfa_accepts(d, "aaaaaa", &member) != TCG_STATUS_OK || !member) return 3;
    if (tcg_dfa_accepts(d, "x", &member) != TCG_STATUS_SYMBOL) return 4;
    if (strstr(tcg_last_error(), "x") == NULL) return 5;
    tcg_dfa_free(d);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
