//! Compile and run a small C program against the generated header and the
//! cdylib, exercising the ABI from the C side.

use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    // tests run from target/debug/deps/...; the shared library lives two
    // levels up
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("dcg.h").exists(), "header not generated");

    // test builds do not emit the cdylib; build it explicitly, in the
    // same profile this test is running under
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut args = vec!["build", "-p", "dcg-ffi"];
    if target_dir().ends_with("release") {
        args.push("--release");
    }
    let build = Command::new(cargo)
        .args(&args)
        .current_dir(&manifest)
        .output()
        .expect("cargo build runs");
    assert!(
        build.status.success(),
        "cdylib build failed: {}",
        String::from_utf8_lossy(&build.stderr)
    );
    let lib_dir = target_dir();
    let lib = lib_dir.join("libdcg_ffi.so");
    assert!(lib.exists(), "{} not found after build", lib.display());

    let scratch = std::env::temp_dir().join("dcg-capi-test");
    std::fs::create_dir_all(&scratch).unwrap();
    let c_path = scratch.join("main.c");
    std::fs::write(
        &c_path,
        r#"
#include <stdio.h>
#include <string.h>
#include "dcg.h"

int main(void) {
    DcgGroup *g = NULL;
    if (dcg_group_fixture("z6", &g) != DCG_STATUS_OK) return 1;
    if (dcg_group_order(g) != 6) return 2;

    uint32_t conn[4] = {1, 2, 4, 5};
    DcgDigraph *d = NULL;
    if (dcg_cayley_digraph(g, conn, 4, &d) != DCG_STATUS_OK) return 3;
    if (dcg_digraph_vertex_count(d) != 6) return 4;
    if (dcg_digraph_arc_count(d) != 24) return 5;

    char *order = NULL;
    if (dcg_aut_order(d, 64, &order) != DCG_STATUS_OK) return 6;
    if (strcmp(order, "48") != 0) return 7;
    dcg_string_free(order);

    DcgGroup *bad = NULL;
    if (dcg_group_fixture("nope", &bad) != DCG_STATUS_INVALID_ARGUMENT) return 8;
    char *msg = dcg_last_error_message();
    if (msg == NULL) return 9;
    dcg_string_free(msg);

    dcg_digraph_free(d);
    dcg_group_free(g);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe_path = scratch.join("capi_test");
    let compile = Command::new("cc")
        .arg(&c_path)
        .arg("-I")
        .arg(&header_dir)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-ldcg_ffi")
        .arg("-o")
        .arg(&exe_path)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe_path)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .expect("compiled program runs");
    assert!(
        run.status.success(),
        "exit {:?}, stderr: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
