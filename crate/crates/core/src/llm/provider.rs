use std::sync::Mutex;
use std::time::Duration;

use serde::Deserialize;
use serde_json::json;

use crate::http::HttpClient;

#[derive(Debug, Clone, PartialEq)]
pub struct ChatRequest<'a> {
    pub model: &'a str,
    pub prompt: &'a str,
    pub temperature: f32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChatReply {
    pub text: String,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransportError {
    /// Worth retrying (network failure, 429, 5xx).
    Retryable(String),
    /// Retrying cannot help (bad credentials, malformed request).
    Fatal(String),
}

impl std::fmt::Display for TransportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransportError::Retryable(m) => write!(f, "{m} (retryable)"),
            TransportError::Fatal(m) => f.write_str(m),
        }
    }
}

pub trait ChatProvider: Send + Sync {
    fn chat(&self, request: &ChatRequest<'_>) -> Result<ChatReply, TransportError>;
}

/// Rough token estimate for providers that omit usage.
pub fn estimate_tokens(text: &str) -> u64 {
    (text.chars().count() as u64).div_ceil(4)
}

/// Chat-completions endpoint in the widely used `/chat/completions` JSON dialect.
pub struct HttpChatProvider {
    base_url: String,
    api_key: Option<String>,
    client: HttpClient,
}

#[derive(Deserialize)]
struct CompletionResponse {
    choices: Vec<Choice>,
    #[serde(default)]
    usage: Option<Usage>,
}

#[derive(Deserialize)]
struct Choice {
    message: Message,
}

#[derive(Deserialize)]
struct Message {
    #[serde(default)]
    content: Option<String>,
}

#[derive(Deserialize)]
struct Usage {
    #[serde(default)]
    prompt_tokens: u64,
    #[serde(default)]
    completion_tokens: u64,
}

impl HttpChatProvider {
    pub fn new(base_url: impl Into<String>, api_key: Option<String>) -> Self {
        Self {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            api_key,
            client: HttpClient::new(Duration::from_secs(600)),
        }
    }

    pub fn request_body(request: &ChatRequest<'_>) -> serde_json::Value {
        json!({
            "model": request.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.temperature,
        })
    }

    pub fn parse_response(request: &ChatRequest<'_>, body: &str) -> Result<ChatReply, TransportError> {
        let parsed: CompletionResponse = serde_json::from_str(body)
            .map_err(|e| TransportError::Fatal(format!("undecodable completion response: {e}")))?;
        let text = parsed
            .choices
            .into_iter()
            .next()
            .and_then(|c| c.message.content)
            .ok_or_else(|| TransportError::Retryable("completion response has no content".into()))?;
        let (prompt_tokens, completion_tokens) = match parsed.usage {
            Some(u) => (u.prompt_tokens, u.completion_tokens),
            None => (estimate_tokens(request.prompt), estimate_tokens(&text)),
        };
        Ok(ChatReply {
            text,
            prompt_tokens,
            completion_tokens,
        })
    }
}

impl ChatProvider for HttpChatProvider {
    fn chat(&self, request: &ChatRequest<'_>) -> Result<ChatReply, TransportError> {
        let url = format!("{}/chat/completions", self.base_url);
        let mut headers = Vec::new();
        if let Some(key) = &self.api_key {
            headers.push(("authorization", format!("Bearer {key}")));
        }
        let resp = self
            .client
            .post_json(&url, &headers, &Self::request_body(request))
            .map_err(TransportError::Retryable)?;
        match resp.status {
            200..=299 => Self::parse_response(request, &resp.body),
            401 | 403 => Err(TransportError::Fatal(format!(
                "provider rejected credentials (HTTP {})",
                resp.status
            ))),
            429 | 500..=599 => Err(TransportError::Retryable(format!("HTTP {}", resp.status))),
            s => Err(TransportError::Fatal(format!(
                "HTTP {s}: {}",
                resp.body.chars().take(200).collect::<String>()
            ))),
        }
    }
}

type Responder = dyn Fn(&ChatRequest<'_>) -> Result<ChatReply, TransportError> + Send + Sync;

/// In-process provider driven by a closure; used to author recordings and in tests.
pub struct ScriptedProvider {
    respond: Box<Responder>,
    calls: Mutex<Vec<String>>,
}

impl ScriptedProvider {
    pub fn new(
        respond: impl Fn(&ChatRequest<'_>) -> Result<ChatReply, TransportError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            respond: Box::new(respond),
            calls: Mutex::new(Vec::new()),
        }
    }

    /// Replies with text produced by `f`, with token counts estimated from lengths.
    pub fn from_text(f: impl Fn(&str) -> String + Send + Sync + 'static) -> Self {
        Self::new(move |req| {
            let text = f(req.prompt);
            Ok(ChatReply {
                prompt_tokens: estimate_tokens(req.prompt),
                completion_tokens: estimate_tokens(&text),
                text,
            })
        })
    }

    pub fn prompts(&self) -> Vec<String> {
        self.calls.lock().map(|c| c.clone()).unwrap_or_default()
    }

    pub fn call_count(&self) -> usize {
        self.calls.lock().map(|c| c.len()).unwrap_or_default()
    }
}

impl ChatProvider for ScriptedProvider {
    fn chat(&self, request: &ChatRequest<'_>) -> Result<ChatReply, TransportError> {
        if let Ok(mut calls) = self.calls.lock() {
            calls.push(request.prompt.to_string());
        }
        (self.respond)(request)
    }
}
