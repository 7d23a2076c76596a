use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid identifier: {0}")]
    InvalidIdentifier(String),

    #[error("unknown pipeline stage `{0}`")]
    UnknownStage(String),

    #[error("template `{template}` is missing a binding for `{name}`")]
    MissingBinding { template: String, name: String },

    #[error("provider unavailable: {0}")]
    ProviderUnavailable(String),

    #[error("no recorded exchange for prompt hash {0}")]
    ReplayMiss(String),

    #[error("malformed reply: {0}")]
    MalformedReply(String),

    #[error("reply contains no fenced code block")]
    NoCodeBlock,

    #[error("discipline `{0}` has no seed keywords")]
    EmptySeeds(String),

    #[error("rate limited by {host}; retry after {retry_after_s}s")]
    RateLimited { host: String, retry_after_s: u64 },

    #[error("authentication failed for {0}")]
    AuthError(String),

    #[error("clone of {url} failed: {reason}")]
    CloneFailed { url: String, reason: String },

    #[error("repository {0} no longer exists")]
    Gone(String),

    #[error("workspace error: {0}")]
    WorkspaceError(String),

    #[error("duplicate task for {repo} / {path}")]
    DuplicateTask { repo: String, path: String },

    #[error("schema violation: {0}")]
    SchemaError(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("corpus line {line}: {reason}")]
    CorpusDecode { line: usize, reason: String },

    #[error("interrupted; progress is checkpointed and the run can be resumed")]
    Interrupted,

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub fn io_path(action: &str, path: &std::path::Path, source: std::io::Error) -> Self {
        Error::io(format!("{action} {}", path.display()), source)
    }

    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::EmptySeeds(_) => 2,
            Error::ProviderUnavailable(_)
            | Error::ReplayMiss(_)
            | Error::RateLimited { .. }
            | Error::AuthError(_) => 3,
            Error::Interrupted => 4,
            _ => 1,
        }
    }
}

pub(crate) trait IoContext<T> {
    fn with_path(self, action: &str, path: impl Into<PathBuf>) -> Result<T>;
}

impl<T> IoContext<T> for std::io::Result<T> {
    fn with_path(self, action: &str, path: impl Into<PathBuf>) -> Result<T> {
        self.map_err(|e| Error::io_path(action, &path.into(), e))
    }
}
