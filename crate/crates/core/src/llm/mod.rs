//! Chat-completion gateway: prompt rendering, record/replay, retries and spend accounting.

pub mod ledger;
pub mod parse;
pub mod provider;
pub mod templates;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use tracing::{debug, warn};

use crate::error::{Error, IoContext, Result};
use crate::model::sha256_hex;
use crate::ratelimit::RateLimiter;

pub use ledger::{CostLedger, CostStage, LedgerEntry};
pub use parse::{extract_code_block, parse_path_list, parse_yes_no, YesNo};
pub use provider::{ChatProvider, ChatReply, ChatRequest, HttpChatProvider, ScriptedProvider, TransportError};
pub use templates::{render, Bindings, TemplateId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelRole {
    General,
    Coder,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Live,
    Record,
    Replay,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "live" => Ok(Mode::Live),
            "record" => Ok(Mode::Record),
            "replay" => Ok(Mode::Replay),
            other => Err(Error::Config(format!("unknown mode `{other}` (live|record|replay)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Live => "live",
            Mode::Record => "record",
            Mode::Replay => "replay",
        })
    }
}

/// USD per million tokens.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRates {
    pub input_per_mtok: Decimal,
    pub output_per_mtok: Decimal,
}

impl ModelRates {
    pub fn cost(&self, prompt_tokens: u64, completion_tokens: u64) -> Decimal {
        let million = Decimal::from(1_000_000u32);
        (Decimal::from(prompt_tokens) * self.input_per_mtok
            + Decimal::from(completion_tokens) * self.output_per_mtok)
            / million
    }
}

pub fn prompt_hash(model_name: &str, rendered_prompt: &str) -> String {
    sha256_hex(format!("{model_name}\n{rendered_prompt}").as_bytes())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LLMExchange {
    pub template_id: TemplateId,
    pub rendered_prompt: String,
    pub model_role: ModelRole,
    pub model_name: String,
    pub reply: String,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub usd_cost: Decimal,
    pub prompt_hash: String,
    pub recorded_at: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

/// On-disk form of one exchange: `<cache_dir>/<prompt_hash>.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recording {
    pub model: String,
    pub prompt: String,
    pub reply: String,
    pub usage: Usage,
    pub recorded_at: String,
}

#[derive(Debug, Clone)]
pub struct RecordStore {
    dir: PathBuf,
}

impl RecordStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn get(&self, hash: &str) -> Result<Option<Recording>> {
        let path = self.path_for(hash);
        match std::fs::read(&path) {
            Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io_path("read recording", &path, e)),
        }
    }

    pub fn put(&self, hash: &str, recording: &Recording) -> Result<()> {
        std::fs::create_dir_all(&self.dir).with_path("create record store", &self.dir)?;
        let path = self.path_for(hash);
        let tmp = self.dir.join(format!(".{hash}.{}.tmp", std::process::id()));
        let mut bytes = serde_json::to_vec_pretty(recording)?;
        bytes.push(b'\n');
        std::fs::write(&tmp, bytes).with_path("write recording", &tmp)?;
        std::fs::rename(&tmp, &path).with_path("commit recording", &path)
    }
}

#[derive(Debug, Clone)]
pub struct GatewayConfig {
    pub mode: Mode,
    pub general_model: String,
    pub coder_model: String,
    pub rates: BTreeMap<String, ModelRates>,
    /// Character budget for a rendered prompt before context truncation applies.
    pub max_prompt_chars: usize,
    pub retry_attempts: u32,
    pub retry_base_delay: Duration,
    pub requests_per_second: f64,
}

impl Default for GatewayConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Live,
            general_model: "gpt-4o-2024-11-20".into(),
            coder_model: "claude-3-7-sonnet-20250219".into(),
            rates: BTreeMap::new(),
            max_prompt_chars: 400_000,
            retry_attempts: 3,
            retry_base_delay: Duration::from_secs(1),
            requests_per_second: 0.0,
        }
    }
}

pub struct Gateway {
    config: GatewayConfig,
    provider: Option<Arc<dyn ChatProvider>>,
    store: Option<RecordStore>,
    limiter: RateLimiter,
}

impl Gateway {
    pub fn new(
        config: GatewayConfig,
        provider: Option<Arc<dyn ChatProvider>>,
        store: Option<RecordStore>,
    ) -> Result<Self> {
        match config.mode {
            Mode::Live | Mode::Record if provider.is_none() => {
                return Err(Error::Config(format!(
                    "{} mode needs a configured provider",
                    config.mode
                )))
            }
            Mode::Record | Mode::Replay if store.is_none() => {
                return Err(Error::Config(format!(
                    "{} mode needs a record store directory",
                    config.mode
                )))
            }
            _ => {}
        }
        let limiter = RateLimiter::new(4, config.requests_per_second);
        Ok(Self {
            config,
            provider,
            store,
            limiter,
        })
    }

    pub fn config(&self) -> &GatewayConfig {
        &self.config
    }

    pub fn mode(&self) -> Mode {
        self.config.mode
    }

    pub fn max_prompt_chars(&self) -> usize {
        self.config.max_prompt_chars
    }

    pub fn model_name(&self, role: ModelRole) -> &str {
        match role {
            ModelRole::General => &self.config.general_model,
            ModelRole::Coder => &self.config.coder_model,
        }
    }

    fn cost(&self, model: &str, usage: &Usage) -> Decimal {
        match self.config.rates.get(model) {
            Some(rates) => rates.cost(usage.prompt_tokens, usage.completion_tokens),
            None => {
                debug!(model, "no cost rates configured; recording zero spend");
                Decimal::ZERO
            }
        }
    }

    pub fn complete(
        &self,
        template: TemplateId,
        bindings: &Bindings,
        role: ModelRole,
    ) -> Result<LLMExchange> {
        let prompt = render(template, bindings)?;
        self.complete_prompt(template, &prompt, role)
    }

    /// Sends an already rendered prompt, honouring the configured mode.
    pub fn complete_prompt(
        &self,
        template: TemplateId,
        prompt: &str,
        role: ModelRole,
    ) -> Result<LLMExchange> {
        let model = self.model_name(role).to_string();
        let hash = prompt_hash(&model, prompt);
        let recording = match self.config.mode {
            Mode::Replay => self
                .store
                .as_ref()
                .map(|s| s.get(&hash))
                .transpose()?
                .flatten()
                .ok_or_else(|| Error::ReplayMiss(hash.clone()))?,
            Mode::Live | Mode::Record => {
                let reply = self.call_with_retries(template, &model, prompt)?;
                let recording = Recording {
                    model: model.clone(),
                    prompt: prompt.to_string(),
                    reply: reply.text,
                    usage: Usage {
                        prompt_tokens: reply.prompt_tokens,
                        completion_tokens: reply.completion_tokens,
                    },
                    recorded_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                };
                if self.config.mode == Mode::Record {
                    if let Some(store) = &self.store {
                        store.put(&hash, &recording)?;
                    }
                }
                recording
            }
        };
        Ok(LLMExchange {
            template_id: template,
            rendered_prompt: prompt.to_string(),
            model_role: role,
            usd_cost: self.cost(&model, &recording.usage),
            model_name: model,
            reply: recording.reply,
            prompt_tokens: recording.usage.prompt_tokens,
            completion_tokens: recording.usage.completion_tokens,
            prompt_hash: hash,
            recorded_at: recording.recorded_at,
        })
    }

    fn call_with_retries(&self, template: TemplateId, model: &str, prompt: &str) -> Result<ChatReply> {
        let provider = self
            .provider
            .as_ref()
            .ok_or_else(|| Error::ProviderUnavailable("no provider configured".into()))?;
        let attempts = self.config.retry_attempts.max(1);
        let mut last = String::new();
        for attempt in 0..attempts {
            if attempt > 0 {
                let delay = self.config.retry_base_delay * 2u32.pow(attempt - 1);
                warn!(attempt, ?delay, error = %last, "retrying provider call");
                std::thread::sleep(delay);
            }
            self.limiter.acquire();
            let request = ChatRequest {
                model,
                prompt,
                temperature: template.temperature(),
            };
            match provider.chat(&request) {
                Ok(reply) => return Ok(reply),
                Err(TransportError::Fatal(msg)) => return Err(Error::ProviderUnavailable(msg)),
                Err(TransportError::Retryable(msg)) => last = msg,
            }
        }
        Err(Error::ProviderUnavailable(format!(
            "{attempts} attempts failed; last error: {last}"
        )))
    }

    /// Completes and parses; a malformed reply earns exactly one re-prompt with
    /// `reminder` appended. Every exchange is pushed onto `log`.
    pub fn complete_parsed<T>(
        &self,
        template: TemplateId,
        prompt: &str,
        role: ModelRole,
        reminder: &str,
        log: &mut Vec<LLMExchange>,
        parse: impl Fn(&str) -> Result<T>,
    ) -> Result<T> {
        let first = self.complete_prompt(template, prompt, role)?;
        let parsed = parse(&first.reply);
        log.push(first);
        match parsed {
            Err(e @ (Error::MalformedReply(_) | Error::NoCodeBlock)) => {
                debug!(%template, error = %e, "re-prompting after malformed reply");
                let retry_prompt = format!("{prompt}\n\n{reminder}");
                let second = self.complete_prompt(template, &retry_prompt, role)?;
                let parsed = parse(&second.reply);
                log.push(second);
                parsed
            }
            other => other,
        }
    }
}
