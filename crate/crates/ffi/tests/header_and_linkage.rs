//! The generated header must stand alone as C and C++, and a C program
//! linked against the shared library must run.

use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/noisebound.h")
}

/// target/debug, derived from the running test binary's location.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_passes_a_strict_syntax_check() {
    for (compiler, lang) in [("gcc", "c"), ("g++", "c++")] {
        let out = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(header())
            .output()
            .expect("compiler available");
        assert!(
            out.status.success(),
            "{compiler}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

const SMOKE: &str = r#"
#include <noisebound.h>
#include <math.h>
#include <stddef.h>
#include <string.h>

int main(void) {
    if (strlen(nb_version()) == 0) return 1;

    NbChannel *c1 = NULL, *c2 = NULL;
    if (nb_channel_thermal(0.6, 0.1, &c1) != NB_STATUS_OK) return 2;
    if (nb_channel_thermal(0.6, 0.3, &c2) != NB_STATUS_OK) return 3;

    NbState *s1 = NULL, *s2 = NULL;
    if (nb_probe_output(c1, 0.5, &s1) != NB_STATUS_OK) return 4;
    if (nb_probe_output(c2, 0.5, &s2) != NB_STATUS_OK) return 5;

    size_t modes = 0;
    if (nb_state_mode_count(s1, &modes) != NB_STATUS_OK || modes != 2) return 6;

    double cov[16];
    if (nb_state_covariance(s1, cov, 16) != NB_STATUS_OK) return 7;
    /* channel-arm variance a = eta*n_s + (1-eta)*n_b + 1/2 */
    if (fabs(cov[0] - 0.84) > 1e-12) return 8;

    double f = 0.0;
    if (nb_fidelity(s1, s2, &f) != NB_STATUS_OK) return 9;
    if (fabs(f - 0.975397086644174) > 1e-9) return 10;

    NbBinaryTest t;
    if (nb_exact_binary_test(100, 1.0, 2.0, 0.05, &t) != NB_STATUS_OK) return 11;
    if (t.threshold != 124 || !t.accept_below) return 12;

    NbChannel *bad = NULL;
    if (nb_channel_thermal(1.5, 0.1, &bad) != NB_STATUS_INVALID_ARGUMENT) return 13;
    if (bad != NULL) return 14;
    if (strlen(nb_last_error_message()) == 0) return 15;

    nb_state_free(s1);
    nb_state_free(s2);
    nb_channel_free(c1);
    nb_channel_free(c2);
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_shared_library_and_runs() {
    let dir = artifact_dir();
    assert!(
        dir.join("libnoisebound_ffi.so").exists(),
        "cdylib not found in {}",
        dir.display()
    );

    let work = std::env::temp_dir().join(format!("noisebound-capi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let bin = work.join("smoke");
    std::fs::write(&src, SMOKE).unwrap();

    let compile = Command::new("gcc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg("-L")
        .arg(&dir)
        .args(["-lnoisebound_ffi", "-lm", "-o"])
        .arg(&bin)
        .output()
        .expect("gcc available");
    assert!(
        compile.status.success(),
        "compile: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &dir)
        .output()
        .expect("smoke binary runs");
    let _ = std::fs::remove_dir_all(&work);
    assert!(
        run.status.success(),
        "smoke exited with {:?}",
        run.status.code()
    );
}
