use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use tracing::warn;

use super::snapshot::RepoSnapshot;
use crate::model::{CandidateFile, Judgement, RuleVerdict};

pub const DEFAULT_MAX_LINES: u64 = 1000;

pub const DEFAULT_DENY: [&str; 8] = [
    "tests",
    "test",
    "config",
    "configs",
    "utils",
    "docs",
    "examples_ci",
    ".github",
];

/// Directory names whose files never become candidates. Matching is exact
/// after case-folding, so `contest/` is not caught by `test`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectoryDenyList {
    names: BTreeSet<String>,
}

impl Default for DirectoryDenyList {
    fn default() -> Self {
        Self::new(DEFAULT_DENY)
    }
}

impl DirectoryDenyList {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            names: names
                .into_iter()
                .map(|n| n.as_ref().trim().to_lowercase())
                .filter(|n| !n.is_empty())
                .collect(),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// True when any directory segment of `rel_path` is denied. The file name
    /// itself is not a directory and never matches.
    pub fn denies(&self, rel_path: &str) -> bool {
        let mut segments: Vec<&str> = rel_path.split('/').collect();
        segments.pop();
        segments
            .iter()
            .any(|s| self.names.contains(&s.to_lowercase()))
    }
}

/// Newline count plus one for a trailing partial line.
pub fn count_lines(bytes: &[u8]) -> u64 {
    let newlines = bytes.iter().filter(|&&b| b == b'\n').count() as u64;
    match bytes.last() {
        Some(b'\n') | None => newlines,
        Some(_) => newlines + 1,
    }
}

/// Directory denial takes precedence over length.
pub fn rule_verdict(rel_path: &str, line_count: u64, deny: &DirectoryDenyList, max_lines: u64) -> RuleVerdict {
    if deny.denies(rel_path) {
        RuleVerdict::DroppedDir
    } else if line_count > max_lines {
        RuleVerdict::DroppedLines
    } else {
        RuleVerdict::Kept
    }
}

pub fn is_python_source(rel_path: &str) -> bool {
    rel_path.ends_with(".py")
}

/// One candidate per `.py` file in lexicographic path order.
pub fn rule_filter_files(snapshot: &RepoSnapshot, deny: &DirectoryDenyList, max_lines: u64) -> Vec<CandidateFile> {
    snapshot
        .file_tree
        .iter()
        .filter(|f| is_python_source(&f.path))
        .map(|f| {
            let (line_count, verdict) = match std::fs::read(snapshot.local_root.join(&f.path)) {
                Ok(bytes) => {
                    let lines = count_lines(&bytes);
                    (lines, rule_verdict(&f.path, lines, deny, max_lines))
                }
                Err(e) => {
                    warn!(repo = %snapshot.repo, path = %f.path, error = %e, "unreadable source file dropped");
                    (0, RuleVerdict::DroppedIo)
                }
            };
            CandidateFile {
                repo: snapshot.repo.clone(),
                rel_path: f.path.clone(),
                line_count,
                rule_verdict: verdict,
                science_verdict: Judgement::Unjudged,
                dataset_label: Judgement::Unjudged,
                dataset_paths: Vec::new(),
                module_paths: Vec::new(),
            }
        })
        .collect()
}
