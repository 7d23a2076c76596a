use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use tracing::{debug, info};

use super::requirements::EnvSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvHandle {
    pub env_id: String,
    /// Interpreter invocation path.
    pub interpreter: PathBuf,
}

/// Creates or reuses an execution environment for a requirement set.
/// `Err` carries the reason for a setup failure.
pub trait Provisioner: Send + Sync {
    fn provision(&self, spec: &EnvSpec) -> Result<EnvHandle, String>;
}

fn tail(text: &[u8], max: usize) -> String {
    let start = text.len().saturating_sub(max);
    String::from_utf8_lossy(&text[start..]).into_owned()
}

fn run(cmd: &mut Command) -> Result<(), String> {
    debug!(?cmd, "provisioner step");
    let out = cmd.output().map_err(|e| format!("cannot run {cmd:?}: {e}"))?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{:?} exited with {}: {}",
            cmd.get_program(),
            out.status,
            tail(&out.stderr, 4096).trim()
        ))
    }
}

/// Single-flight guard per env id.
#[derive(Default)]
struct Locks(Mutex<HashMap<String, Arc<Mutex<()>>>>);

impl Locks {
    fn for_id(&self, id: &str) -> Arc<Mutex<()>> {
        let mut map = self.0.lock().unwrap_or_else(|p| p.into_inner());
        map.entry(id.to_string()).or_default().clone()
    }
}

/// Virtual environments under `<cache>/<env_id>` created with the interpreter's
/// `venv` module and filled by its package installer.
pub struct VenvProvisioner {
    pub cache_dir: PathBuf,
    pub python: String,
    /// Extra installer arguments, such as an index URL.
    pub pip_args: Vec<String>,
    locks: Locks,
    installs: AtomicUsize,
}

const READY_MARKER: &str = ".autosdt-ready";

impl VenvProvisioner {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            python: "python3".into(),
            pip_args: Vec::new(),
            locks: Locks::default(),
            installs: AtomicUsize::new(0),
        }
    }

    /// Number of environments built (cache misses) by this provisioner.
    pub fn installs(&self) -> usize {
        self.installs.load(Ordering::SeqCst)
    }

    fn interpreter(dir: &Path) -> PathBuf {
        dir.join("bin").join("python")
    }

    fn build(&self, spec: &EnvSpec, dir: &Path) -> Result<(), String> {
        if dir.exists() {
            std::fs::remove_dir_all(dir).map_err(|e| format!("clear {}: {e}", dir.display()))?;
        }
        std::fs::create_dir_all(&self.cache_dir).map_err(|e| format!("create {}: {e}", self.cache_dir.display()))?;
        run(Command::new(&self.python).args(["-m", "venv"]).arg(dir))?;
        if !spec.requirements.is_empty() {
            let req_file = dir.join("requirements.txt");
            std::fs::write(&req_file, spec.requirements.join("\n") + "\n")
                .map_err(|e| format!("write {}: {e}", req_file.display()))?;
            run(Command::new(Self::interpreter(dir))
                .args(["-m", "pip", "install", "--disable-pip-version-check", "--quiet"])
                .args(&self.pip_args)
                .arg("-r")
                .arg(&req_file))?;
        }
        std::fs::write(dir.join(READY_MARKER), spec.requirements.join("\n"))
            .map_err(|e| format!("mark {}: {e}", dir.display()))
    }
}

impl Provisioner for VenvProvisioner {
    fn provision(&self, spec: &EnvSpec) -> Result<EnvHandle, String> {
        let lock = self.locks.for_id(&spec.env_id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let dir = self.cache_dir.join(&spec.env_id);
        let handle = EnvHandle {
            env_id: spec.env_id.clone(),
            interpreter: Self::interpreter(&dir),
        };
        if dir.join(READY_MARKER).is_file() {
            return Ok(handle);
        }
        info!(env_id = %spec.env_id, requirements = ?spec.requirements, "building environment");
        self.installs.fetch_add(1, Ordering::SeqCst);
        match self.build(spec, &dir) {
            Ok(()) => Ok(handle),
            Err(reason) => {
                let _ = std::fs::remove_dir_all(&dir);
                Err(reason)
            }
        }
    }
}

const CHECK_INSTALLED: &str = "import sys, importlib.metadata as m
missing = []
for name in sys.argv[1:]:
    try:
        m.version(name)
    except m.PackageNotFoundError:
        missing.append(name)
if missing:
    sys.exit('missing distributions: ' + ', '.join(missing))
";

/// Uses the host interpreter as-is and fails setup when a required
/// distribution is not already installed. Suited to offline fixtures.
pub struct HostProvisioner {
    pub python: String,
    checked: Mutex<HashMap<String, Result<(), String>>>,
}

impl HostProvisioner {
    pub fn new(python: impl Into<String>) -> Self {
        Self {
            python: python.into(),
            checked: Mutex::new(HashMap::new()),
        }
    }
}

impl Default for HostProvisioner {
    fn default() -> Self {
        Self::new("python3")
    }
}

impl Provisioner for HostProvisioner {
    fn provision(&self, spec: &EnvSpec) -> Result<EnvHandle, String> {
        let mut checked = self.checked.lock().unwrap_or_else(|p| p.into_inner());
        let status = checked
            .entry(spec.env_id.clone())
            .or_insert_with(|| {
                run(Command::new(&self.python)
                    .args(["-c", CHECK_INSTALLED])
                    .args(&spec.requirements))
            })
            .clone();
        status.map(|()| EnvHandle {
            env_id: spec.env_id.clone(),
            interpreter: PathBuf::from(&self.python),
        })
    }
}
