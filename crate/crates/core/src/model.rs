//! Domain records shared by every stage, plus the resumable run state.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, IoContext, Result};
use crate::llm::CostLedger;

/// Lowercased `owner/name`, the identity used for dedup and exclusion.
pub fn canonical_repo_key(owner: &str, name: &str) -> Result<String> {
    let owner = owner.trim();
    let name = name.trim();
    if owner.is_empty() || name.is_empty() {
        return Err(Error::InvalidIdentifier(format!(
            "repository owner and name must be non-empty (got `{owner}/{name}`)"
        )));
    }
    Ok(format!("{}/{}", owner.to_lowercase(), name.to_lowercase()))
}

/// Stable task identity: first 16 hex digits of SHA-256 over `repo_key\nrel_path`.
pub fn task_id(repo_key: &str, rel_path: &str) -> String {
    let digest = Sha256::digest(format!("{repo_key}\n{rel_path}").as_bytes());
    hex_string(&digest)[..16].to_string()
}

pub(crate) fn hex_string(bytes: &[u8]) -> String {
    use std::fmt::Write;
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub(crate) fn sha256_hex(data: &[u8]) -> String {
    hex_string(&Sha256::digest(data))
}

/// Extracts `owner/name` from a repository URL of the form `scheme://host/owner/name[.git][/]`.
pub fn repo_key_from_url(url: &str) -> Result<String> {
    let trimmed = url.trim().trim_end_matches('/');
    let trimmed = trimmed.strip_suffix(".git").unwrap_or(trimmed);
    let mut parts = trimmed.rsplit('/');
    let name = parts.next().unwrap_or_default();
    let owner = parts.next().unwrap_or_default();
    if owner.contains(':') || owner.is_empty() {
        return Err(Error::InvalidIdentifier(format!("cannot derive owner/name from `{url}`")));
    }
    canonical_repo_key(owner, name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discipline {
    pub id: String,
    pub display_name: String,
    pub seed_keywords: Vec<String>,
}

impl Discipline {
    pub fn validate(&self) -> Result<()> {
        let kebab = !self.id.is_empty()
            && !self.id.starts_with('-')
            && !self.id.ends_with('-')
            && !self.id.contains("--")
            && self
                .id
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-');
        if !kebab {
            return Err(Error::Config(format!(
                "discipline id `{}` must be non-empty lowercase-kebab",
                self.id
            )));
        }
        if self.seed_keywords.iter().all(|k| k.trim().is_empty()) {
            return Err(Error::EmptySeeds(self.id.clone()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    Github,
    Paperswithcode,
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Host::Github => "github",
            Host::Paperswithcode => "paperswithcode",
        })
    }
}

impl FromStr for Host {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "github" => Ok(Host::Github),
            "paperswithcode" => Ok(Host::Paperswithcode),
            other => Err(Error::Config(format!("unknown code host `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResearchVerdict {
    #[default]
    Unjudged,
    Research,
    NotResearch,
}

/// Trace of the README classification that produced a verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default)]
    pub prompt_hashes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recorded_at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoRef {
    pub host: Host,
    pub owner: String,
    pub name: String,
    pub url: String,
    pub stars: u64,
    pub primary_language: String,
    /// Ordered by first appearance; the first entry is the repository's owning discipline.
    pub discipline_ids: Vec<String>,
    pub found_by_queries: Vec<String>,
    #[serde(default)]
    pub research_verdict: ResearchVerdict,
    #[serde(default)]
    pub paper_links: Vec<String>,
    #[serde(default)]
    pub license_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationRecord>,
}

impl RepoRef {
    /// Canonical key; falls back to a plain lowercase join for records that bypassed validation.
    pub fn key(&self) -> String {
        canonical_repo_key(&self.owner, &self.name).unwrap_or_else(|_| {
            format!("{}/{}", self.owner.trim().to_lowercase(), self.name.trim().to_lowercase())
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleVerdict {
    Kept,
    DroppedLines,
    DroppedDir,
    /// The file could not be read.
    DroppedIo,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Judgement {
    #[default]
    Unjudged,
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFile {
    pub repo: String,
    pub rel_path: String,
    pub line_count: u64,
    pub rule_verdict: RuleVerdict,
    #[serde(default)]
    pub science_verdict: Judgement,
    #[serde(default)]
    pub dataset_label: Judgement,
    #[serde(default)]
    pub dataset_paths: Vec<String>,
    #[serde(default)]
    pub module_paths: Vec<String>,
}

impl CandidateFile {
    pub fn task_id(&self) -> String {
        task_id(&self.repo, &self.rel_path)
    }

    pub fn file_name(&self) -> &str {
        self.rel_path.rsplit('/').next().unwrap_or(&self.rel_path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Workspace {
    pub root: PathBuf,
    /// Task id of the candidate this workspace was built for.
    pub candidate: String,
    /// Repo-relative files materialized under `benchmark/datasets/<repo_name>/`.
    pub copied_paths: Vec<String>,
    pub byte_size: u64,
    /// Workspace-relative directory holding the repository files.
    pub dataset_dir: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Pipeline step → model name.
    pub models: BTreeMap<String, String>,
    /// Every prompt hash that contributed to the task, in call order.
    pub prompt_hashes: Vec<String>,
    /// Pipeline step → timestamp of the exchange that finished the step.
    pub timestamps: BTreeMap<String, String>,
    #[serde(default)]
    pub weak_instruction: bool,
    pub config_hash: String,
}

pub const PRED_RESULTS: &str = "pred_results/";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInstance {
    pub task_id: String,
    #[serde(rename = "discipline")]
    pub discipline_id: String,
    pub repo_url: String,
    pub source_path: String,
    pub instruction: String,
    pub adapted_code: String,
    pub requirements: Vec<String>,
    pub output_files: Vec<String>,
    pub iterations_used: u8,
    #[serde(rename = "license")]
    pub license_id: Option<String>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<Difficulty>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expert_flags: Option<serde_json::Value>,
}

impl TaskInstance {
    pub fn repo_key(&self) -> Result<String> {
        repo_key_from_url(&self.repo_url)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.iterations_used) {
            return Err(Error::SchemaError(format!(
                "iterations_used must be in 1..=3, got {}",
                self.iterations_used
            )));
        }
        if let Some(bad) = self
            .output_files
            .iter()
            .find(|p| !p.starts_with(PRED_RESULTS) || p.contains(".."))
        {
            return Err(Error::SchemaError(format!(
                "output file `{bad}` is not under {PRED_RESULTS}"
            )));
        }
        let key = self
            .repo_key()
            .map_err(|e| Error::SchemaError(format!("repo_url: {e}")))?;
        if self.task_id != task_id(&key, &self.source_path) {
            return Err(Error::SchemaError(format!(
                "task_id {} does not match {key}:{}",
                self.task_id, self.source_path
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Search,
    Select,
    Adapt,
    Emit,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Search, Stage::Select, Stage::Adapt, Stage::Emit];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Search => "search",
            Stage::Select => "select",
            Stage::Adapt => "adapt",
            Stage::Emit => "emit",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|stage| stage.as_str() == s)
            .ok_or_else(|| Error::UnknownStage(s.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCheckpoint {
    pub last_key: Option<String>,
    pub processed: u64,
    pub processed_keys: BTreeSet<String>,
    /// Byte length of the stage artifact at the moment of the last commit.
    pub artifact_len: u64,
    pub completed: bool,
}

impl StageCheckpoint {
    pub fn contains(&self, key: &str) -> bool {
        self.processed_keys.contains(key)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineRun {
    pub run_id: String,
    pub config_hash: String,
    pub stage_checkpoints: BTreeMap<String, StageCheckpoint>,
    #[serde(default)]
    pub ledger: CostLedger,
}

impl PipelineRun {
    pub fn new(run_id: impl Into<String>, config_hash: impl Into<String>) -> Self {
        Self {
            run_id: run_id.into(),
            config_hash: config_hash.into(),
            stage_checkpoints: BTreeMap::new(),
            ledger: CostLedger::default(),
        }
    }

    pub fn checkpoint(&self, stage: Stage) -> Option<&StageCheckpoint> {
        self.stage_checkpoints.get(stage.as_str())
    }

    pub fn checkpoint_mut(&mut self, stage: Stage) -> &mut StageCheckpoint {
        self.stage_checkpoints
            .entry(stage.as_str().to_string())
            .or_default()
    }

    /// Checkpoint for a named stage or sub-phase such as `search.expand`.
    pub fn named(&self, name: &str) -> Option<&StageCheckpoint> {
        self.stage_checkpoints.get(name)
    }

    pub fn named_mut(&mut self, name: &str) -> &mut StageCheckpoint {
        self.stage_checkpoints.entry(name.to_string()).or_default()
    }

    pub fn is_processed(&self, stage: Stage, key: &str) -> bool {
        self.checkpoint(stage).is_some_and(|c| c.contains(key))
    }

    pub fn is_completed(&self, stage: Stage) -> bool {
        self.checkpoint(stage).is_some_and(|c| c.completed)
    }
}

/// Records `item_key` as processed for `stage`. Re-advancing a key already seen is a no-op.
pub fn advance_stage(mut run: PipelineRun, stage: &str, item_key: &str) -> Result<PipelineRun> {
    let stage: Stage = stage.parse()?;
    let checkpoint = run.checkpoint_mut(stage);
    if checkpoint.processed_keys.insert(item_key.to_string()) {
        checkpoint.processed += 1;
        checkpoint.last_key = Some(item_key.to_string());
    }
    Ok(run)
}

/// Local-filesystem store for run documents at `<state_dir>/<run_id>.json`.
#[derive(Debug, Clone)]
pub struct CheckpointStore {
    dir: PathBuf,
}

impl CheckpointStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, run_id: &str) -> PathBuf {
        self.dir.join(format!("{run_id}.json"))
    }

    pub fn load(&self, run_id: &str) -> Result<Option<PipelineRun>> {
        let path = self.path_for(run_id);
        match std::fs::read(&path) {
            Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io_path("read checkpoint", &path, e)),
        }
    }

    pub fn save(&self, run: &PipelineRun) -> Result<()> {
        std::fs::create_dir_all(&self.dir).with_path("create state dir", &self.dir)?;
        let path = self.path_for(&run.run_id);
        let tmp = path.with_extension("json.tmp");
        let bytes = serde_json::to_vec_pretty(run)?;
        std::fs::write(&tmp, bytes).with_path("write checkpoint", &tmp)?;
        std::fs::rename(&tmp, &path).with_path("commit checkpoint", &path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_key_folds_case_and_whitespace() {
        assert_eq!(
            canonical_repo_key("Brain-Imaging-Lab", "LesionSeg").unwrap(),
            "brain-imaging-lab/lesionseg"
        );
        assert_eq!(
            canonical_repo_key("a", "b").unwrap(),
            canonical_repo_key(" A ", "B").unwrap()
        );
        assert!(matches!(
            canonical_repo_key("", "x"),
            Err(Error::InvalidIdentifier(_))
        ));
        assert!(matches!(
            canonical_repo_key("x", "  "),
            Err(Error::InvalidIdentifier(_))
        ));
    }

    #[test]
    fn key_from_url() {
        assert_eq!(
            repo_key_from_url("https://github.com/Foo/Bar.git/").unwrap(),
            "foo/bar"
        );
        assert!(repo_key_from_url("https://github.com").is_err());
    }

    #[test]
    fn task_id_is_stable_and_short() {
        let id = task_id("foo/bar", "src/a.py");
        assert_eq!(id.len(), 16);
        assert_eq!(id, task_id("foo/bar", "src/a.py"));
        assert_ne!(id, task_id("foo/bar", "src/b.py"));
        assert_eq!(id, sha256_hex(b"foo/bar\nsrc/a.py")[..16]);
    }

    #[test]
    fn advance_counts_first_visit() {
        let run = advance_stage(PipelineRun::new("r", "h"), "search", "k1").unwrap();
        assert_eq!(run.checkpoint(Stage::Search).unwrap().processed, 1);
        assert_eq!(
            run.checkpoint(Stage::Search).unwrap().last_key.as_deref(),
            Some("k1")
        );
    }

    #[test]
    fn advance_is_idempotent_per_key() {
        let events = ["k1", "k2", "k1", "k3", "k2"];
        let replay = |run: PipelineRun| {
            events
                .iter()
                .try_fold(run, |run, key| advance_stage(run, "adapt", key))
                .unwrap()
        };
        let once = replay(PipelineRun::new("r", "h"));
        let twice = replay(once.clone());
        assert_eq!(once.checkpoint(Stage::Adapt).unwrap().processed, 3);
        assert_eq!(once, twice);
    }

    #[test]
    fn advance_isolates_stages() {
        let run = advance_stage(PipelineRun::new("r", "h"), "search", "k1").unwrap();
        let before = run.checkpoint(Stage::Search).cloned();
        let run = advance_stage(run, "select", "s1").unwrap();
        assert_eq!(run.checkpoint(Stage::Search).cloned(), before);
        assert!(matches!(
            advance_stage(run, "deploy", "x"),
            Err(Error::UnknownStage(s)) if s == "deploy"
        ));
    }

    #[test]
    fn discipline_validation() {
        let mut d = Discipline {
            id: "bio-informatics".into(),
            display_name: "Bioinformatics".into(),
            seed_keywords: vec!["bioinformatics".into()],
        };
        d.validate().unwrap();
        d.id = "Bio".into();
        assert!(d.validate().is_err());
        d.id = "bio".into();
        d.seed_keywords.clear();
        assert!(matches!(d.validate(), Err(Error::EmptySeeds(_))));
    }

    #[test]
    fn checkpoint_store_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = CheckpointStore::new(dir.path());
        assert!(store.load("r1").unwrap().is_none());
        let run = advance_stage(PipelineRun::new("r1", "abc"), "emit", "t").unwrap();
        store.save(&run).unwrap();
        assert_eq!(store.load("r1").unwrap().unwrap(), run);
    }

    fn sample_task() -> TaskInstance {
        TaskInstance {
            task_id: task_id("lab/repo", "a.py"),
            discipline_id: "bio".into(),
            repo_url: "https://github.com/Lab/Repo".into(),
            source_path: "a.py".into(),
            instruction: "Do it.".into(),
            adapted_code: "print(1)\n".into(),
            requirements: vec!["numpy".into()],
            output_files: vec!["pred_results/pred_a.csv".into()],
            iterations_used: 1,
            license_id: Some("MIT".into()),
            provenance: Provenance::default(),
            difficulty: None,
            expert_flags: None,
        }
    }

    #[test]
    fn task_schema_checks() {
        let task = sample_task();
        task.validate().unwrap();
        let mut bad = task.clone();
        bad.output_files = vec!["out/a.csv".into()];
        assert!(matches!(bad.validate(), Err(Error::SchemaError(_))));
        let mut bad = task.clone();
        bad.iterations_used = 4;
        assert!(matches!(bad.validate(), Err(Error::SchemaError(_))));
        let mut bad = task;
        bad.task_id = "0000000000000000".into();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn task_json_field_names() {
        let value = serde_json::to_value(sample_task()).unwrap();
        let keys: BTreeSet<_> = value.as_object().unwrap().keys().cloned().collect();
        let expected: BTreeSet<String> = [
            "task_id",
            "discipline",
            "repo_url",
            "source_path",
            "instruction",
            "adapted_code",
            "requirements",
            "output_files",
            "iterations_used",
            "license",
            "provenance",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(keys, expected);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn task_round_trip(
                instruction in ".{0,80}",
                code in ".{0,200}",
                reqs in proptest::collection::vec("[a-z][a-z0-9-]{0,10}", 0..5),
                iters in 1u8..=3,
                hashes in proptest::collection::vec("[0-9a-f]{64}", 0..4),
                weak in any::<bool>(),
            ) {
                let mut task = sample_task();
                task.instruction = instruction;
                task.adapted_code = code;
                task.requirements = reqs;
                task.iterations_used = iters;
                task.provenance.prompt_hashes = hashes;
                task.provenance.weak_instruction = weak;
                let line = serde_json::to_string(&task).unwrap();
                let back: TaskInstance = serde_json::from_str(&line).unwrap();
                prop_assert_eq!(back, task);
            }

            #[test]
            fn checkpoint_resume_matches_uninterrupted(
                items in proptest::collection::vec("[a-e]{1,2}", 0..40),
                cut in 0usize..40,
            ) {
                let full = items.iter().try_fold(PipelineRun::new("r", "h"), |r, k| advance_stage(r, "select", k)).unwrap();
                let cut = cut.min(items.len());
                let prefix = items[..cut].iter().try_fold(PipelineRun::new("r", "h"), |r, k| advance_stage(r, "select", k)).unwrap();
                // resume skips keys already in the checkpoint
                let resumed = items[cut..].iter().try_fold(prefix, |r, k| {
                    if r.is_processed(Stage::Select, k) { Ok(r) } else { advance_stage(r, "select", k) }
                }).unwrap();
                prop_assert_eq!(
                    &resumed.checkpoint(Stage::Select).map(|c| c.processed_keys.clone()),
                    &full.checkpoint(Stage::Select).map(|c| c.processed_keys.clone())
                );
                prop_assert_eq!(
                    resumed.checkpoint(Stage::Select).map(|c| c.processed),
                    full.checkpoint(Stage::Select).map(|c| c.processed)
                );
            }
        }
    }
}
