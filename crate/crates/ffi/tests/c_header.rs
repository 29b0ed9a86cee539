//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "pcml.h"

int main(void) {
    PcmlGraph *g = NULL;
    PcmlAlgebra *alg = NULL;
    PcmlElement *e = NULL;
    char *text = NULL;
    uint64_t l0 = 0;
    if (pcml_graph_parse("{\"n\":4,\"edges\":[[2,3],[1,2],[1,3]]}", &g) != PCML_STATUS_OK) return 1;
    if (pcml_algebra_new(g, &alg) != PCML_STATUS_OK) return 2;
    if (pcml_element_parse(alg, "[x2,x0] - [x3,x0]", &e) != PCML_STATUS_OK) return 3;
    if (pcml_lambda_zero(e, 3, 2, &l0) != PCML_STATUS_OK || l0 != 2) return 4;
    if (pcml_element_to_string(e, &text) != PCML_STATUS_OK) return 5;
    printf("%s\n", text);
    pcml_string_free(text);
    if (pcml_element_parse(alg, "[x0,", &e) != PCML_STATUS_PARSE_ERROR) return 6;
    if (strstr(pcml_last_error(), "offset") == NULL) return 7;
    pcml_element_free(e);
    pcml_algebra_free(alg);
    pcml_graph_free(g);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp
        .parent()
        .unwrap()
        .join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = [
        profile_dir.join("libpcml_ffi.a"),
        profile_dir.join("deps/libpcml_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists())
    .expect("static library is built alongside the tests");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let src = tmp.join("pcml_smoke.c");
    let exe = tmp.join("pcml_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[x2,x0] - [x3,x0]");
}
