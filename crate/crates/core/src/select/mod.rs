//! Candidate selection: snapshot repositories, rule-filter source files, judge
//! scientific relevance, locate in-repo dependencies, and build compact workspaces.

pub mod filter;
pub mod snapshot;
pub mod workspace;

use tracing::warn;

use crate::error::{Error, Result};
use crate::llm::templates::{self, render_within};
use crate::llm::{parse_path_list, parse_yes_no, Gateway, LLMExchange, ModelRole, TemplateId, YesNo};
use crate::model::{CandidateFile, Judgement, RuleVerdict};

pub use filter::{count_lines, rule_filter_files, rule_verdict, DirectoryDenyList, DEFAULT_MAX_LINES};
pub use snapshot::{walk_tree, DirectorySnapshotter, FileEntry, GitSnapshotter, RepoSnapshot, SnapshotSource};
pub use workspace::{build_workspace, expand_paths, render_tree, workspace_files};

pub const FILE_TREE_LIMIT: usize = 4000;
pub const FILE_TREE_MARKER: &str = "[... file tree truncated ...]";

const VERDICT_REMINDER: &str = "Answer strictly in the format:\nVERDICT: YES or NO";
const DEPENDENCY_REMINDER: &str = "Answer strictly in the format:\nDATASET_LABEL: Yes or No\nDATASET_PATHS: [path, ...]\nMODULE_LABEL: Yes or No\nMODULE_PATHS: [path, ...]";

/// Paths only, one per line, capped at [`FILE_TREE_LIMIT`] entries.
pub fn render_file_tree(tree: &[FileEntry]) -> String {
    let mut out = String::new();
    for f in tree.iter().take(FILE_TREE_LIMIT) {
        out.push_str(&f.path);
        out.push('\n');
    }
    if tree.len() > FILE_TREE_LIMIT {
        out.push_str(FILE_TREE_MARKER);
        out.push('\n');
    }
    out
}

/// Asks the general model whether the file is a data-driven scientific program.
/// A reply that stays unparseable after one re-prompt counts as `No`.
pub fn judge_scientific(
    gateway: &Gateway,
    candidate: &mut CandidateFile,
    code: &str,
    log: &mut Vec<LLMExchange>,
) -> Result<Judgement> {
    if candidate.rule_verdict != RuleVerdict::Kept {
        return Err(Error::SchemaError(format!(
            "{} was not kept by the rule filter",
            candidate.rel_path
        )));
    }
    let prompt = render_within(
        TemplateId::SciVerify,
        &templates::bindings([("file_name", candidate.file_name()), ("code", code)]),
        "code",
        gateway.max_prompt_chars(),
    )?;
    let verdict = match gateway.complete_parsed(
        TemplateId::SciVerify,
        &prompt,
        ModelRole::General,
        VERDICT_REMINDER,
        log,
        |reply| parse_yes_no(reply, "VERDICT"),
    ) {
        Ok(YesNo::Yes) => Judgement::Yes,
        Ok(YesNo::No) => Judgement::No,
        Err(Error::MalformedReply(reason)) => {
            warn!(path = %candidate.rel_path, %reason, "scientific verdict unparseable; dropping");
            Judgement::No
        }
        Err(e) => return Err(e),
    };
    candidate.science_verdict = verdict;
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Dependencies {
    dataset_label: YesNo,
    dataset_paths: Vec<String>,
    module_paths: Vec<String>,
}

/// A `No` label may omit its path list; a `Yes` label must carry one.
fn paths_for(reply: &str, label: YesNo, field: &str) -> Result<Vec<String>> {
    match (label, parse_path_list(reply, field)) {
        (_, Ok(paths)) => Ok(paths),
        (YesNo::No, Err(_)) => Ok(Vec::new()),
        (YesNo::Yes, Err(e)) => Err(e),
    }
}

fn parse_dependencies(reply: &str) -> Result<Dependencies> {
    let dataset_label = parse_yes_no(reply, "DATASET_LABEL")?;
    let module_label = parse_yes_no(reply, "MODULE_LABEL")?;
    Ok(Dependencies {
        dataset_label,
        dataset_paths: paths_for(reply, dataset_label, "DATASET_PATHS")?,
        module_paths: paths_for(reply, module_label, "MODULE_PATHS")?,
    })
}

/// Maps a model-reported path onto the snapshot tree. Files and directories
/// both resolve; a leading `./` or a spurious `<repo_name>/` prefix is tolerated.
pub fn resolve_tree_path(snapshot: &RepoSnapshot, raw: &str) -> Option<String> {
    let cleaned = raw.trim().trim_start_matches("./").trim_end_matches('/');
    if cleaned.is_empty() || workspace::check_relative(cleaned).is_err() {
        return None;
    }
    let exists = |p: &str| {
        let prefix = format!("{p}/");
        snapshot.contains_file(p) || snapshot.file_tree.iter().any(|f| f.path.starts_with(&prefix))
    };
    if exists(cleaned) {
        return Some(cleaned.to_string());
    }
    let stripped = cleaned
        .strip_prefix(&format!("{}/", snapshot.repo_name))
        .filter(|s| exists(s))?;
    Some(stripped.to_string())
}

fn validate_paths(snapshot: &RepoSnapshot, candidate: &CandidateFile, paths: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for raw in paths {
        match resolve_tree_path(snapshot, &raw) {
            Some(p) if p != candidate.rel_path && !out.contains(&p) => out.push(p),
            Some(_) => {}
            None => warn!(path = %candidate.rel_path, dependency = %raw, "dependency not in file tree; dropped"),
        }
    }
    out
}

/// Fills the candidate's dataset and module paths. Returns `false` when the
/// reply stayed malformed and the candidate must be dropped.
pub fn locate_dependencies(
    gateway: &Gateway,
    candidate: &mut CandidateFile,
    code: &str,
    snapshot: &RepoSnapshot,
    log: &mut Vec<LLMExchange>,
) -> Result<bool> {
    if candidate.science_verdict != Judgement::Yes {
        return Err(Error::SchemaError(format!(
            "{} was not judged scientific",
            candidate.rel_path
        )));
    }
    let tree = render_file_tree(&snapshot.file_tree);
    let prompt = render_within(
        TemplateId::DepLocate,
        &templates::bindings([("code", code), ("directory", tree.as_str())]),
        "directory",
        gateway.max_prompt_chars(),
    )?;
    let deps = match gateway.complete_parsed(
        TemplateId::DepLocate,
        &prompt,
        ModelRole::General,
        DEPENDENCY_REMINDER,
        log,
        parse_dependencies,
    ) {
        Ok(d) => d,
        Err(Error::MalformedReply(reason)) => {
            warn!(path = %candidate.rel_path, %reason, "dependency reply unparseable; dropping candidate");
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    candidate.dataset_label = match deps.dataset_label {
        YesNo::Yes => Judgement::Yes,
        YesNo::No => Judgement::No,
    };
    candidate.dataset_paths = validate_paths(snapshot, candidate, deps.dataset_paths);
    candidate.module_paths = validate_paths(snapshot, candidate, deps.module_paths);
    Ok(true)
}
