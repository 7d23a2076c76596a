use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use autosdt_ffi::*;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture_config() -> CString {
    let p = manifest().join("../core/fixtures/pipeline.toml");
    CString::new(p.to_str().unwrap()).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { autosdt_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = autosdt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

/// Directory holding the library artifacts next to this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn null_and_bad_arguments_report_status_and_message() {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { autosdt_extract_code_block(ptr::null(), &mut out) };
    assert_eq!(status, AutosdtStatus::InvalidArgument);
    assert!(last_error().contains("reply"));

    let mut cfg: *mut AutosdtConfig = ptr::null_mut();
    let missing = CString::new("/nonexistent/pipeline.toml").unwrap();
    assert_eq!(unsafe { autosdt_config_load(missing.as_ptr(), &mut cfg) }, AutosdtStatus::Config);
    assert!(cfg.is_null());

    let cfg_path = fixture_config();
    assert_eq!(unsafe { autosdt_config_load(cfg_path.as_ptr(), &mut cfg) }, AutosdtStatus::Ok);
    assert!(autosdt_last_error().is_null());
    let bogus = CString::new("sometimes").unwrap();
    assert_eq!(unsafe { autosdt_config_set_mode(cfg, bogus.as_ptr()) }, AutosdtStatus::Config);
    unsafe { autosdt_config_free(cfg) };
    unsafe { autosdt_config_free(ptr::null_mut()) };
}

#[test]
fn parsers_map_malformed_replies() {
    let reply = CString::new("Reasoning...\nVERDICT: yes\n").unwrap();
    let field = CString::new("VERDICT").unwrap();
    let mut yes = false;
    assert_eq!(unsafe { autosdt_parse_yes_no(reply.as_ptr(), field.as_ptr(), &mut yes) }, AutosdtStatus::Ok);
    assert!(yes);

    let other = CString::new("PATHS").unwrap();
    assert_eq!(
        unsafe { autosdt_parse_yes_no(reply.as_ptr(), other.as_ptr(), &mut yes) },
        AutosdtStatus::MalformedReply
    );

    let code = CString::new("text\n```python\nprint(1)\n```\n").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { autosdt_extract_code_block(code.as_ptr(), &mut out) }, AutosdtStatus::Ok);
    assert_eq!(take(out).trim(), "print(1)");
    let none = CString::new("no fences").unwrap();
    assert_eq!(unsafe { autosdt_extract_code_block(none.as_ptr(), &mut out) }, AutosdtStatus::MalformedReply);
}

#[test]
fn requirements_round_trip_as_json() {
    let code = CString::new("import numpy as np\nimport os\nfrom sklearn.cluster import KMeans\nimport common\n").unwrap();
    let local = CString::new("common.py").unwrap();
    let paths = [local.as_ptr()];
    let mut out = ptr::null_mut();
    let status = unsafe { autosdt_infer_requirements(code.as_ptr(), paths.as_ptr(), 1, &mut out) };
    assert_eq!(status, AutosdtStatus::Ok);
    let spec: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(spec["requirements"], serde_json::json!(["numpy", "scikit-learn"]));
    assert!(spec["env_id"].as_str().is_some_and(|s| !s.is_empty()));
}

#[test]
fn pipeline_runs_the_fixture_in_replay() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ptr::null_mut();
    let cfg_path = fixture_config();
    let replay = CString::new("replay").unwrap();
    let out_dir = CString::new(dir.path().to_str().unwrap()).unwrap();
    unsafe {
        assert_eq!(autosdt_config_load(cfg_path.as_ptr(), &mut cfg), AutosdtStatus::Ok);
        assert_eq!(autosdt_config_set_mode(cfg, replay.as_ptr()), AutosdtStatus::Ok);
        assert_eq!(autosdt_config_set_out_dir(cfg, out_dir.as_ptr()), AutosdtStatus::Ok);
        let mut hash = ptr::null_mut();
        assert_eq!(autosdt_config_hash(cfg, &mut hash), AutosdtStatus::Ok);
        assert_eq!(take(hash).len(), 64);

        // an interrupt raised before the run stops it before any work
        let mut pipeline = ptr::null_mut();
        assert_eq!(autosdt_pipeline_open(cfg, &mut pipeline), AutosdtStatus::Ok);
        autosdt_pipeline_interrupt(pipeline);
        assert_eq!(autosdt_pipeline_run(pipeline, AutosdtStage::All, ptr::null_mut()), AutosdtStatus::Interrupted);
        assert!(last_error().contains("interrupt"));
        autosdt_pipeline_free(pipeline);

        // reopening resumes the same run
        let mut pipeline = ptr::null_mut();
        assert_eq!(autosdt_pipeline_open(cfg, &mut pipeline), AutosdtStatus::Ok);
        autosdt_config_free(cfg);
        let mut summary = ptr::null_mut();
        assert_eq!(autosdt_pipeline_run(pipeline, AutosdtStage::All, &mut summary), AutosdtStatus::Ok);
        let summary: serde_json::Value = serde_json::from_str(&take(summary)).unwrap();
        assert_eq!(summary["adapt"]["emitted"], 3, "{summary}");
        autosdt_pipeline_free(pipeline);

        let tasks = CString::new(dir.path().join("tasks.jsonl").to_str().unwrap()).unwrap();
        let mut stats = ptr::null_mut();
        assert_eq!(autosdt_corpus_stats(tasks.as_ptr(), &mut stats), AutosdtStatus::Ok);
        let stats: serde_json::Value = serde_json::from_str(&take(stats)).unwrap();
        assert!(stats.is_object());
    }
}

#[test]
fn header_is_valid_c_and_cxx() {
    let header = manifest().join("include/autosdt.h");
    assert!(header.is_file(), "build script did not write {}", header.display());
    for (compiler, std) in [("cc", "-std=c99"), ("c++", "-std=c++11")] {
        let lang = if compiler == "cc" { "c" } else { "c++" };
        let status = Command::new(compiler)
            .args([std, "-Wall", "-Wextra", "-Werror", "-fsyntax-only", "-x", lang])
            .arg(&header)
            .status()
            .expect("run the system C compiler");
        assert!(status.success(), "{compiler} rejected the header");
    }
}

const SMOKE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "autosdt.h"

int main(int argc, char **argv) {
    AutosdtConfig *cfg = NULL;
    AutosdtPipeline *p = NULL;
    char *summary = NULL;
    if (argc != 3) return 10;
    if (autosdt_config_load(argv[1], &cfg) != AUTOSDT_STATUS_OK) return 11;
    if (autosdt_config_set_mode(cfg, "replay") != AUTOSDT_STATUS_OK) return 12;
    if (autosdt_config_set_out_dir(cfg, argv[2]) != AUTOSDT_STATUS_OK) return 13;
    if (autosdt_pipeline_open(cfg, &p) != AUTOSDT_STATUS_OK) {
        fprintf(stderr, "%s\n", autosdt_last_error());
        return 14;
    }
    autosdt_config_free(cfg);
    if (autosdt_pipeline_run(p, AUTOSDT_STAGE_ALL, &summary) != AUTOSDT_STATUS_OK) {
        fprintf(stderr, "%s\n", autosdt_last_error());
        return 15;
    }
    printf("%s\n", summary);
    autosdt_string_free(summary);
    autosdt_pipeline_free(p);
    if (autosdt_extract_code_block(NULL, &summary) != AUTOSDT_STATUS_INVALID_ARGUMENT) return 16;
    if (strstr(autosdt_last_error(), "null") == NULL) return 17;
    printf("version %s\n", autosdt_version());
    return 0;
}
"#;

#[test]
fn c_program_links_the_static_library() {
    let lib = artifact_dir().join("libautosdt_ffi.a");
    assert!(lib.is_file(), "missing {}", lib.display());
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    std::fs::write(&src, SMOKE).unwrap();
    let exe = work.path().join("smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "failed to build the C smoke test");

    let out_dir = work.path().join("out");
    let out = Command::new(&exe)
        .arg(manifest().join("../core/fixtures/pipeline.toml"))
        .arg(&out_dir)
        .env("RUST_LOG", "off")
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("\"emitted\":3"), "{stdout}");
    assert!(stdout.contains("version 0.1.0"), "{stdout}");
    assert!(out_dir.join("tasks.jsonl").is_file());
}
