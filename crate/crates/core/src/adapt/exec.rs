use std::io::Read;
use std::os::unix::process::CommandExt;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use tracing::warn;
use wait_timeout::ChildExt;

use super::env::EnvHandle;
use crate::model::Workspace;
use crate::select::workspace::PRED_RESULTS_DIR;
use crate::select::walk_tree;

pub const TAIL_BYTES: usize = 8 * 1024;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);
/// Proxy target for disabled networking; nothing listens on the discard port.
const DEAD_PROXY: &str = "http://127.0.0.1:9";
const SCRATCH_HOME: &str = ".autosdt_home";
pub const WORKSPACE_TOKEN: &str = "<workspace>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    NonzeroExit,
    Timeout,
    SetupFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionResult {
    pub exit_code: i32,
    pub stdout_tail: String,
    pub stderr_tail: String,
    /// Workspace-relative paths under `pred_results/`.
    pub produced_files: Vec<String>,
    pub wall_time: f64,
    pub outcome: Outcome,
}

impl ExecutionResult {
    pub fn setup_failure(reason: impl Into<String>) -> Self {
        Self {
            exit_code: -1,
            stdout_tail: String::new(),
            stderr_tail: reason.into(),
            produced_files: Vec::new(),
            wall_time: 0.0,
            outcome: Outcome::SetupFailure,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

#[derive(Debug, Clone)]
pub struct ExecOptions {
    pub timeout: Duration,
    pub allow_net: bool,
    pub tail_bytes: usize,
    /// Extra `(text, replacement)` pairs scrubbed from captured output so that
    /// feedback prompts do not depend on host paths.
    pub redactions: Vec<(String, String)>,
}

impl Default for ExecOptions {
    fn default() -> Self {
        Self {
            timeout: DEFAULT_TIMEOUT,
            allow_net: false,
            tail_bytes: TAIL_BYTES,
            redactions: Vec::new(),
        }
    }
}

fn capture<R: Read + Send + 'static>(mut pipe: R, keep: usize) -> thread::JoinHandle<Vec<u8>> {
    thread::spawn(move || {
        let mut kept: Vec<u8> = Vec::new();
        let mut buf = [0u8; 8192];
        loop {
            match pipe.read(&mut buf) {
                Ok(0) | Err(_) => break,
                Ok(n) => {
                    kept.extend_from_slice(&buf[..n]);
                    if kept.len() > keep * 2 {
                        kept.drain(..kept.len() - keep);
                    }
                }
            }
        }
        let start = kept.len().saturating_sub(keep);
        kept.split_off(start)
    })
}

/// Lossy UTF-8 tail that never starts mid-character.
fn decode_tail(bytes: &[u8]) -> String {
    let text = String::from_utf8_lossy(bytes);
    text.trim_start_matches('\u{FFFD}').to_string()
}

fn scrub(mut text: String, redactions: &[(String, String)]) -> String {
    for (from, to) in redactions {
        if !from.is_empty() {
            text = text.replace(from.as_str(), to);
        }
    }
    text
}

fn clear_dir(dir: &Path) -> std::io::Result<()> {
    if dir.exists() {
        std::fs::remove_dir_all(dir)?;
    }
    std::fs::create_dir_all(dir)
}

/// Runs `code` as `<workspace>/<program_name>` with the workspace as working
/// directory. Every failure is folded into the returned outcome.
pub fn execute_candidate(
    handle: &EnvHandle,
    code: &str,
    ws: &Workspace,
    program_name: &str,
    opts: &ExecOptions,
) -> ExecutionResult {
    let root = &ws.root;
    let program = root.join(program_name);
    let pred = root.join(PRED_RESULTS_DIR);
    let home = root.join(SCRATCH_HOME);
    let prepared = clear_dir(&pred)
        .and_then(|()| clear_dir(&home))
        .and_then(|()| std::fs::write(&program, code));
    if let Err(e) = prepared {
        return ExecutionResult::setup_failure(format!("prepare workspace {}: {e}", root.display()));
    }

    let mut cmd = Command::new(&handle.interpreter);
    cmd.arg(program_name)
        .current_dir(root)
        .env_clear()
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .process_group(0);
    for key in ["PATH", "LANG", "LC_ALL", "LC_CTYPE"] {
        if let Some(v) = std::env::var_os(key) {
            cmd.env(key, v);
        }
    }
    let python_path: Vec<PathBuf> = {
        let data = root.join(&ws.dataset_dir);
        let mut dirs = vec![data.clone()];
        let source = ws.copied_paths.iter().find(|p| p.rsplit('/').next() == Some(program_name));
        if let Some(source) = source {
            if let Some(parent) = Path::new(source).parent().filter(|p| !p.as_os_str().is_empty()) {
                dirs.push(data.join(parent));
            }
        }
        dirs
    };
    cmd.env("HOME", &home)
        .env("TMPDIR", &home)
        .env("MPLBACKEND", "Agg")
        .env("MPLCONFIGDIR", &home)
        .env("PYTHONDONTWRITEBYTECODE", "1")
        .env("PYTHONHASHSEED", "0")
        .env("PYTHONIOENCODING", "utf-8")
        .env("PYTHONPATH", std::env::join_paths(&python_path).unwrap_or_default());
    if !opts.allow_net {
        cmd.env("AUTOSDT_NO_NET", "1");
        for key in ["http_proxy", "https_proxy", "HTTP_PROXY", "HTTPS_PROXY", "ALL_PROXY", "all_proxy"] {
            cmd.env(key, DEAD_PROXY);
        }
    }

    let started = Instant::now();
    let result = run_child(cmd, opts);
    let wall_time = started.elapsed().as_secs_f64();
    let _ = std::fs::remove_file(&program);
    let _ = std::fs::remove_dir_all(&home);

    let mut redactions = vec![(root.display().to_string(), WORKSPACE_TOKEN.to_string())];
    redactions.extend(opts.redactions.iter().cloned());
    let (exit_code, stdout, stderr, timed_out) = match result {
        Ok(r) => r,
        Err(reason) => return ExecutionResult::setup_failure(scrub(reason, &redactions)),
    };
    let produced_files: Vec<String> = walk_tree(&pred)
        .unwrap_or_default()
        .into_iter()
        .map(|f| format!("{PRED_RESULTS_DIR}/{}", f.path))
        .collect();
    let outcome = if timed_out {
        Outcome::Timeout
    } else if exit_code == 0 && !produced_files.is_empty() {
        Outcome::Success
    } else {
        Outcome::NonzeroExit
    };
    ExecutionResult {
        exit_code,
        stdout_tail: scrub(stdout, &redactions),
        stderr_tail: scrub(stderr, &redactions),
        produced_files,
        wall_time,
        outcome,
    }
}

type ChildOutput = (i32, String, String, bool);

fn run_child(mut cmd: Command, opts: &ExecOptions) -> Result<ChildOutput, String> {
    let mut child = cmd
        .spawn()
        .map_err(|e| format!("cannot start {:?}: {e}", cmd.get_program()))?;
    let pid = child.id() as i32;
    let out = capture(child.stdout.take().expect("piped stdout"), opts.tail_bytes);
    let err = capture(child.stderr.take().expect("piped stderr"), opts.tail_bytes);
    let status = match child.wait_timeout(opts.timeout) {
        Ok(Some(status)) => Some(status),
        Ok(None) => None,
        Err(e) => {
            warn!(error = %e, "waiting on program failed");
            None
        }
    };
    // the whole process group goes, including anything the program spawned
    unsafe {
        libc::kill(-pid, libc::SIGKILL);
    }
    let status = match status {
        Some(s) => Some(s),
        None => {
            let _ = child.wait();
            None
        }
    };
    let stdout = decode_tail(&out.join().unwrap_or_default());
    let mut stderr = decode_tail(&err.join().unwrap_or_default());
    match status {
        Some(s) => Ok((s.code().unwrap_or(-1), stdout, stderr, false)),
        None => {
            stderr.push_str(&format!(
                "\nTimed out after {} s and was terminated.",
                opts.timeout.as_secs_f64()
            ));
            Ok((-1, stdout, stderr, true))
        }
    }
}
