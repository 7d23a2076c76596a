//! Pipeline configuration: a TOML document overlaid by command-line flags.
//! Secrets are read from the environment only and never enter the config hash.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::llm::{GatewayConfig, Mode, ModelRates};
use crate::model::{sha256_hex, Discipline, Host};
use crate::select::filter::{DEFAULT_DENY, DEFAULT_MAX_LINES};

pub const ENV_LLM_BASE_URL: &str = "AUTOSDT_LLM_BASE_URL";
pub const ENV_LLM_API_KEY: &str = "AUTOSDT_LLM_API_KEY";
pub const ENV_GITHUB_TOKEN: &str = "AUTOSDT_GITHUB_TOKEN";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProvisionerKind {
    #[default]
    Venv,
    Host,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlmSettings {
    pub base_url: Option<String>,
    pub general_model: String,
    pub coder_model: String,
    pub requests_per_second: Option<f64>,
    pub max_prompt_chars: usize,
    pub rates: BTreeMap<String, ModelRates>,
}

impl Default for LlmSettings {
    fn default() -> Self {
        let g = GatewayConfig::default();
        Self {
            base_url: None,
            general_model: g.general_model,
            coder_model: g.coder_model,
            requests_per_second: None,
            max_prompt_chars: g.max_prompt_chars,
            rates: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathSettings {
    pub state_dir: Option<PathBuf>,
    /// Recorded provider exchanges.
    pub cache_dir: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub exclude_file: Option<PathBuf>,
    /// Offline host catalog used instead of live code-host APIs.
    pub catalog: Option<PathBuf>,
    /// `file://` root of pre-materialized repositories used instead of cloning.
    pub snapshot_root: Option<String>,
    pub env_cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProvisionerSettings {
    pub kind: ProvisionerKind,
    pub python: String,
    pub pip_args: Vec<String>,
}

impl Default for ProvisionerSettings {
    fn default() -> Self {
        Self {
            kind: ProvisionerKind::Venv,
            python: "python3".into(),
            pip_args: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub run_id: Option<String>,
    pub mode: Mode,
    pub disciplines: Vec<Discipline>,
    pub hosts: Vec<Host>,
    pub keyword_expansion: bool,
    pub min_stars: u64,
    pub language_filter: String,
    pub page_cap: usize,
    pub page_size: usize,
    pub deny_dirs: Vec<String>,
    pub max_lines: u64,
    pub max_iterations: u8,
    pub exec_timeout_s: u64,
    pub workers: usize,
    pub allow_net: bool,
    pub llm: LlmSettings,
    pub paths: PathSettings,
    pub provisioner: ProvisionerSettings,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            run_id: None,
            mode: Mode::Live,
            disciplines: Vec::new(),
            hosts: vec![Host::Github, Host::Paperswithcode],
            keyword_expansion: true,
            min_stars: 10,
            language_filter: "Python".into(),
            page_cap: 10,
            page_size: 100,
            deny_dirs: DEFAULT_DENY.iter().map(|s| s.to_string()).collect(),
            max_lines: DEFAULT_MAX_LINES,
            max_iterations: 3,
            exec_timeout_s: 300,
            workers: 4,
            allow_net: false,
            llm: LlmSettings::default(),
            paths: PathSettings::default(),
            provisioner: ProvisionerSettings::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub out_dir: Option<PathBuf>,
    pub state_dir: Option<PathBuf>,
    pub exclude_file: Option<PathBuf>,
    pub allow_net: bool,
    pub workers: Option<usize>,
}

fn absolutize(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(path) = p {
        if path.is_relative() {
            *path = base.join(&*path);
        }
    }
}

/// The fields that decide what the pipeline produces; paths, parallelism and
/// replay mode are excluded.
#[derive(Serialize)]
struct Semantic<'a> {
    disciplines: &'a [Discipline],
    hosts: &'a [Host],
    keyword_expansion: bool,
    min_stars: u64,
    language_filter: &'a str,
    page_cap: usize,
    page_size: usize,
    deny_dirs: &'a [String],
    max_lines: u64,
    max_iterations: u8,
    exec_timeout_s: u64,
    general_model: &'a str,
    coder_model: &'a str,
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Parses `path`; relative paths inside resolve against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let p = &mut config.paths;
        for field in [
            &mut p.state_dir,
            &mut p.cache_dir,
            &mut p.out_dir,
            &mut p.exclude_file,
            &mut p.catalog,
            &mut p.env_cache_dir,
        ] {
            absolutize(&base, field);
        }
        if let Some(root) = &p.snapshot_root {
            if let Some(rel) = root.strip_prefix("file://").filter(|r| !r.starts_with('/')) {
                p.snapshot_root = Some(format!("file://{}", base.join(rel).display()));
            }
        }
        Ok(config)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(mode) = o.mode {
            self.mode = mode;
        }
        if o.out_dir.is_some() {
            self.paths.out_dir.clone_from(&o.out_dir);
        }
        if o.state_dir.is_some() {
            self.paths.state_dir.clone_from(&o.state_dir);
        }
        if o.exclude_file.is_some() {
            self.paths.exclude_file.clone_from(&o.exclude_file);
        }
        if o.allow_net {
            self.allow_net = true;
        }
        if let Some(w) = o.workers {
            self.workers = w;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.disciplines.is_empty() {
            return Err(Error::Config("no disciplines configured".into()));
        }
        for d in &self.disciplines {
            d.validate().map_err(|e| match e {
                Error::EmptySeeds(id) => Error::Config(format!("discipline `{id}` has no seed keywords")),
                other => Error::Config(other.to_string()),
            })?;
        }
        if self.hosts.is_empty() {
            return Err(Error::Config("no code hosts configured".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.mode != Mode::Live && self.paths.cache_dir.is_none() {
            return Err(Error::Config(format!("{} mode needs paths.cache_dir", self.mode)));
        }
        Ok(())
    }

    pub fn config_hash(&self) -> String {
        let semantic = Semantic {
            disciplines: &self.disciplines,
            hosts: &self.hosts,
            keyword_expansion: self.keyword_expansion,
            min_stars: self.min_stars,
            language_filter: &self.language_filter,
            page_cap: self.page_cap,
            page_size: self.page_size,
            deny_dirs: &self.deny_dirs,
            max_lines: self.max_lines,
            max_iterations: self.max_iterations,
            exec_timeout_s: self.exec_timeout_s,
            general_model: &self.llm.general_model,
            coder_model: &self.llm.coder_model,
        };
        sha256_hex(&serde_json::to_vec(&semantic).unwrap_or_default())
    }

    pub fn run_id(&self) -> String {
        self.run_id
            .clone()
            .unwrap_or_else(|| format!("run-{}", &self.config_hash()[..12]))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.paths.out_dir.clone().unwrap_or_else(|| PathBuf::from("autosdt-out"))
    }

    pub fn state_dir(&self) -> PathBuf {
        self.paths.state_dir.clone().unwrap_or_else(|| self.out_dir().join("state"))
    }

    pub fn env_cache_dir(&self) -> PathBuf {
        self.paths
            .env_cache_dir
            .clone()
            .unwrap_or_else(|| self.state_dir().join("envs"))
    }

    pub fn exec_timeout(&self) -> Duration {
        Duration::from_secs(self.exec_timeout_s)
    }

    pub fn gateway_config(&self) -> GatewayConfig {
        GatewayConfig {
            mode: self.mode,
            general_model: self.llm.general_model.clone(),
            coder_model: self.llm.coder_model.clone(),
            rates: self.llm.rates.clone(),
            max_prompt_chars: self.llm.max_prompt_chars,
            requests_per_second: self.llm.requests_per_second.unwrap_or(0.0),
            ..GatewayConfig::default()
        }
    }

    /// Provider base URL: environment first, then the file.
    pub fn llm_base_url(&self) -> Option<String> {
        std::env::var(ENV_LLM_BASE_URL)
            .ok()
            .filter(|s| !s.is_empty())
            .or_else(|| self.llm.base_url.clone())
    }
}
