//! C ABI for the autosdt pipeline.
//!
//! Every entry point returns an [`AutosdtStatus`]. On failure the message is
//! available from [`autosdt_last_error`] on the same thread. Strings handed
//! out through `char **` parameters belong to the caller and are released with
//! [`autosdt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};

use autosdt::config::PipelineConfig;
use autosdt::dataset::{compute_stats, read_corpus};
use autosdt::llm::{extract_code_block, parse_path_list, parse_yes_no, Mode, YesNo};
use autosdt::pipeline::{Pipeline, Services};
use autosdt::Error;

/// Result of every call. The first values line up with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutosdtStatus {
    Ok = 0,
    Error = 1,
    Config = 2,
    Provider = 3,
    Interrupted = 4,
    InvalidArgument = 5,
    MalformedReply = 6,
    Panic = 7,
}

/// Stage selector for [`autosdt_pipeline_run`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutosdtStage {
    Search = 0,
    Select = 1,
    Adapt = 2,
    All = 3,
    Stats = 4,
}

/// Loaded pipeline configuration.
pub struct AutosdtConfig {
    inner: PipelineConfig,
}

/// A pipeline bound to one run's state and output directory.
pub struct AutosdtPipeline {
    pipeline: Mutex<Pipeline>,
    interrupt: Arc<AtomicBool>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> AutosdtStatus {
    match err {
        Error::MalformedReply(_) | Error::NoCodeBlock => AutosdtStatus::MalformedReply,
        other => match other.exit_code() {
            2 => AutosdtStatus::Config,
            3 => AutosdtStatus::Provider,
            4 => AutosdtStatus::Interrupted,
            _ => AutosdtStatus::Error,
        },
    }
}

struct Failure(AutosdtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(AutosdtStatus::InvalidArgument, message.into())
}

/// Runs `body`, turning errors and panics into a status plus last-error text.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AutosdtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            AutosdtStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("panic inside autosdt");
            AutosdtStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("`{name}` is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    let c = CString::new(value).map_err(|_| Failure(AutosdtStatus::Error, "result contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure(AutosdtStatus::Error, e.to_string()))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next autosdt call on the same thread.
#[no_mangle]
pub extern "C" fn autosdt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn autosdt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned through an output parameter. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn autosdt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a TOML configuration file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_config_load(path: *const c_char, out: *mut *mut AutosdtConfig) -> AutosdtStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("`out` is null"));
        }
        let path = str_arg(path, "path")?;
        let inner = PipelineConfig::load(&PathBuf::from(path))?;
        *out = Box::into_raw(Box::new(AutosdtConfig { inner }));
        Ok(())
    })
}

/// # Safety
/// `config` must come from [`autosdt_config_load`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn autosdt_config_free(config: *mut AutosdtConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Sets the model mode: `live`, `record` or `replay`.
///
/// # Safety
/// `config` must be a live handle and `mode` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn autosdt_config_set_mode(config: *mut AutosdtConfig, mode: *const c_char) -> AutosdtStatus {
    guard(|| {
        let config = config.as_mut().ok_or_else(|| invalid("`config` is null"))?;
        config.inner.mode = str_arg(mode, "mode")?.parse::<Mode>()?;
        Ok(())
    })
}

/// Redirects outputs (and, unless configured separately, run state).
///
/// # Safety
/// `config` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn autosdt_config_set_out_dir(config: *mut AutosdtConfig, dir: *const c_char) -> AutosdtStatus {
    guard(|| {
        let config = config.as_mut().ok_or_else(|| invalid("`config` is null"))?;
        config.inner.paths.out_dir = Some(PathBuf::from(str_arg(dir, "dir")?));
        Ok(())
    })
}

/// Hex digest identifying the run-relevant settings.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_config_hash(config: *const AutosdtConfig, out: *mut *mut c_char) -> AutosdtStatus {
    guard(|| {
        let config = config.as_ref().ok_or_else(|| invalid("`config` is null"))?;
        write_string(out, config.inner.config_hash())
    })
}

/// Opens (or resumes) the run described by `config`. The config handle is
/// only read and may be freed afterwards.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_pipeline_open(
    config: *const AutosdtConfig,
    out: *mut *mut AutosdtPipeline,
) -> AutosdtStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("`out` is null"));
        }
        let config = config.as_ref().ok_or_else(|| invalid("`config` is null"))?.inner.clone();
        let services = Services::from_config(&config)?;
        let interrupt = Arc::new(AtomicBool::new(false));
        let pipeline = Pipeline::new(config, services, Arc::clone(&interrupt))?;
        *out = Box::into_raw(Box::new(AutosdtPipeline { pipeline: Mutex::new(pipeline), interrupt }));
        Ok(())
    })
}

/// Runs one stage. On success `summary_json`, when not NULL, receives the
/// stage summary as JSON.
///
/// # Safety
/// `pipeline` must be a live handle; `summary_json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_pipeline_run(
    pipeline: *const AutosdtPipeline,
    stage: AutosdtStage,
    summary_json: *mut *mut c_char,
) -> AutosdtStatus {
    guard(|| {
        let handle = pipeline.as_ref().ok_or_else(|| invalid("`pipeline` is null"))?;
        let mut p = handle
            .pipeline
            .lock()
            .map_err(|_| Failure(AutosdtStatus::Error, "pipeline poisoned by an earlier panic".into()))?;
        let json = match stage {
            AutosdtStage::Search => to_json(&p.search()?)?,
            AutosdtStage::Select => to_json(&p.select()?)?,
            AutosdtStage::Adapt => to_json(&p.adapt()?)?,
            AutosdtStage::All => to_json(&p.run_all()?)?,
            AutosdtStage::Stats => to_json(&p.stats()?)?,
        };
        if summary_json.is_null() {
            Ok(())
        } else {
            write_string(summary_json, json)
        }
    })
}

/// Asks a running stage to stop after in-flight items commit. Safe to call
/// from another thread while [`autosdt_pipeline_run`] is executing.
///
/// # Safety
/// `pipeline` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn autosdt_pipeline_interrupt(pipeline: *const AutosdtPipeline) {
    if let Some(handle) = pipeline.as_ref() {
        handle.interrupt.store(true, Ordering::SeqCst);
    }
}

/// # Safety
/// `pipeline` must come from [`autosdt_pipeline_open`] or be NULL, and no
/// other thread may be using it.
#[no_mangle]
pub unsafe extern "C" fn autosdt_pipeline_free(pipeline: *mut AutosdtPipeline) {
    if !pipeline.is_null() {
        drop(Box::from_raw(pipeline));
    }
}

/// Corpus statistics for a tasks file, as JSON.
///
/// # Safety
/// `tasks_path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_corpus_stats(tasks_path: *const c_char, out: *mut *mut c_char) -> AutosdtStatus {
    guard(|| {
        let path = PathBuf::from(str_arg(tasks_path, "tasks_path")?);
        let stats = compute_stats(&read_corpus(&path)?, None)?;
        write_string(out, to_json(&stats)?)
    })
}

/// Third-party requirements of a Python program as `{"requirements":[..],"env_id":".."}`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `repo_paths` must point to
/// `n_paths` NUL-terminated strings (or be NULL when `n_paths` is 0).
#[no_mangle]
pub unsafe extern "C" fn autosdt_infer_requirements(
    code: *const c_char,
    repo_paths: *const *const c_char,
    n_paths: usize,
    out: *mut *mut c_char,
) -> AutosdtStatus {
    guard(|| {
        let code = str_arg(code, "code")?;
        let mut paths = Vec::with_capacity(n_paths);
        if n_paths > 0 {
            if repo_paths.is_null() {
                return Err(invalid("`repo_paths` is null"));
            }
            for i in 0..n_paths {
                paths.push(str_arg(*repo_paths.add(i), "repo_paths[i]")?.to_string());
            }
        }
        write_string(out, to_json(&autosdt::adapt::infer_requirements(code, &paths))?)
    })
}

/// Reads a `<field>: YES|NO` verdict; `out` is set to true for YES.
///
/// # Safety
/// `reply` and `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_parse_yes_no(
    reply: *const c_char,
    field: *const c_char,
    out: *mut bool,
) -> AutosdtStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("`out` is null"));
        }
        let verdict = parse_yes_no(str_arg(reply, "reply")?, str_arg(field, "field")?)?;
        *out = verdict == YesNo::Yes;
        Ok(())
    })
}

/// Reads a path list after `<field>:` and returns it as a JSON array.
///
/// # Safety
/// `reply` and `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_parse_path_list(
    reply: *const c_char,
    field: *const c_char,
    out: *mut *mut c_char,
) -> AutosdtStatus {
    guard(|| {
        let paths = parse_path_list(str_arg(reply, "reply")?, str_arg(field, "field")?)?;
        write_string(out, to_json(&paths)?)
    })
}

/// Pulls the program out of the last Python code block of a reply.
///
/// # Safety
/// `reply` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autosdt_extract_code_block(reply: *const c_char, out: *mut *mut c_char) -> AutosdtStatus {
    guard(|| write_string(out, extract_code_block(str_arg(reply, "reply")?)?))
}
