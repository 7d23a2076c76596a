//! Stage orchestration. Every stage processes keyed items in a fixed order,
//! appends their artifact lines, then records the item in the run checkpoint.
//! A restart truncates each artifact back to its last committed length and
//! skips committed items, so resumed runs reproduce uninterrupted output.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tracing::{info, warn};

use crate::adapt::exec::WORKSPACE_TOKEN;
use crate::adapt::{
    self, adapt_prompt, execute_candidate, generate_instruction, infer_requirements, self_debug_loop, AdaptStatus,
    EnvSpec, ExecOptions, ExecutionResult, HostProvisioner, LoopBackend, Outcome, Provisioner, VenvProvisioner,
};
use crate::config::{PipelineConfig, ProvisionerKind, ENV_GITHUB_TOKEN, ENV_LLM_API_KEY};
use crate::dataset::{self, audit_licenses, compute_stats, package_histogram, CorpusStats, TaskSink};
use crate::error::{Error, IoContext, Result};
use crate::llm::{ChatProvider, Gateway, HttpChatProvider, LLMExchange, Mode, ModelRole, RecordStore, TemplateId};
use crate::model::{
    CandidateFile, CheckpointStore, Judgement, PipelineRun, Provenance, RepoRef, ResearchVerdict, RuleVerdict,
    TaskInstance, Workspace,
};
use crate::search::{
    classify_repository, dedupe_and_exclude, expand_keywords, search_host, CatalogHost, CodeHost, ExclusionList,
    GithubGraphql, PapersWithCode, SearchLimits, SearchQuery,
};
use crate::select::{
    build_workspace, judge_scientific, locate_dependencies, render_tree, rule_filter_files, DirectoryDenyList,
    DirectorySnapshotter, GitSnapshotter, SnapshotSource,
};

pub const REPOS_FILE: &str = "repos.jsonl";
pub const CANDIDATES_FILE: &str = "candidates.jsonl";
pub const ADAPTED_FILE: &str = "adapted.jsonl";
pub const TASKS_FILE: &str = "tasks.jsonl";
pub const STATS_FILE: &str = "stats.json";
pub const LICENSES_FILE: &str = "licenses.csv";
pub const WORKSPACES_DIR: &str = "workspaces";

const PHASE_EXPAND: &str = "search.expand";
const PHASE_QUERY: &str = "search.query";
const PHASE_CLASSIFY: &str = "search";
const PHASE_SELECT: &str = "select";
const PHASE_ADAPT: &str = "adapt";
const PHASE_EMIT: &str = "emit";

/// External collaborators of the pipeline.
pub struct Services {
    pub gateway: Gateway,
    pub hosts: Vec<Box<dyn CodeHost>>,
    pub snapshotter: Box<dyn SnapshotSource>,
    pub provisioner: Box<dyn Provisioner>,
}

impl Services {
    pub fn from_config(config: &PipelineConfig) -> Result<Self> {
        let provider: Option<Arc<dyn ChatProvider>> = match config.mode {
            Mode::Replay => None,
            Mode::Live | Mode::Record => {
                let base = config.llm_base_url().ok_or_else(|| {
                    Error::Config("live and record modes need an LLM endpoint (AUTOSDT_LLM_BASE_URL or llm.base_url)".into())
                })?;
                let key = std::env::var(ENV_LLM_API_KEY).ok().filter(|k| !k.is_empty());
                Some(Arc::new(HttpChatProvider::new(base, key)))
            }
        };
        Self::with_provider(config, provider)
    }

    /// Like `from_config`, with the chat provider supplied by the caller.
    pub fn with_provider(config: &PipelineConfig, provider: Option<Arc<dyn ChatProvider>>) -> Result<Self> {
        let store = config.paths.cache_dir.as_ref().map(RecordStore::new);
        let gateway = Gateway::new(config.gateway_config(), provider, store)?;

        let mut hosts: Vec<Box<dyn CodeHost>> = Vec::new();
        for &host in &config.hosts {
            match &config.paths.catalog {
                Some(catalog) => hosts.push(Box::new(CatalogHost::load(catalog, host)?)),
                None => match host {
                    crate::model::Host::Github => {
                        let token = std::env::var(ENV_GITHUB_TOKEN)
                            .ok()
                            .filter(|t| !t.is_empty())
                            .ok_or_else(|| Error::Config(format!("GitHub search needs {ENV_GITHUB_TOKEN}")))?;
                        hosts.push(Box::new(GithubGraphql::new(GithubGraphql::DEFAULT_ENDPOINT, token)));
                    }
                    crate::model::Host::Paperswithcode => hosts.push(Box::new(PapersWithCode::new(
                        PapersWithCode::DEFAULT_BASE,
                        PapersWithCode::DEFAULT_README_BASE,
                    ))),
                },
            }
        }

        let snapshotter: Box<dyn SnapshotSource> = match &config.paths.snapshot_root {
            Some(root) => Box::new(DirectorySnapshotter::from_url(root)?),
            None => Box::new(GitSnapshotter::default()),
        };
        let provisioner: Box<dyn Provisioner> = match config.provisioner.kind {
            ProvisionerKind::Host => Box::new(HostProvisioner::new(config.provisioner.python.clone())),
            ProvisionerKind::Venv => {
                let mut p = VenvProvisioner::new(config.env_cache_dir());
                p.python.clone_from(&config.provisioner.python);
                p.pip_args.clone_from(&config.provisioner.pip_args);
                Box::new(p)
            }
        };
        Ok(Self {
            gateway,
            hosts,
            snapshotter,
            provisioner,
        })
    }

    fn host_for(&self, host: crate::model::Host) -> Option<&dyn CodeHost> {
        self.hosts.iter().find(|h| h.host() == host).map(|h| h.as_ref())
    }
}

/// Lines to append and the provider exchanges that produced them.
#[derive(Default)]
struct ItemOutput {
    lines: Vec<String>,
    exchanges: Vec<LLMExchange>,
}

/// Checkpoint bookkeeping shared by all stages.
struct Committer {
    store: CheckpointStore,
    run: PipelineRun,
    workers: usize,
    interrupt: Arc<AtomicBool>,
    halt_after_commits: Option<usize>,
    commits: usize,
}

impl Committer {
    fn prepare_artifact(&self, phase: &str, path: &Path) -> Result<()> {
        let committed = self.run.named(phase).map_or(0, |c| c.artifact_len);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).with_path("create artifact dir", parent)?;
        }
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(false)
            .open(path)
            .with_path("open artifact", path)?;
        let len = file.metadata().with_path("stat artifact", path)?.len();
        if len < committed {
            return Err(Error::Config(format!(
                "{} is shorter than its checkpoint ({len} < {committed} bytes)",
                path.display()
            )));
        }
        file.set_len(committed).with_path("truncate artifact", path)
    }

    fn commit(&mut self, phase: &str, path: &Path, key: &str, out: ItemOutput) -> Result<()> {
        let mut file = OpenOptions::new()
            .append(true)
            .open(path)
            .with_path("open artifact", path)?;
        for line in &out.lines {
            file.write_all(line.as_bytes())
                .and_then(|()| file.write_all(b"\n"))
                .with_path("append artifact", path)?;
        }
        file.sync_data().with_path("sync artifact", path)?;
        let len = file.metadata().with_path("stat artifact", path)?.len();
        self.commits += 1;
        if self.halt_after_commits == Some(self.commits) {
            // simulated crash between artifact write and checkpoint
            return Err(Error::Interrupted);
        }
        for exchange in &out.exchanges {
            self.run.ledger.record(exchange);
        }
        let cp = self.run.named_mut(phase);
        if cp.processed_keys.insert(key.to_string()) {
            cp.processed += 1;
        }
        cp.last_key = Some(key.to_string());
        cp.artifact_len = len;
        self.store.save(&self.run)
    }

    /// Runs `work` over the uncommitted items in batches of `workers`,
    /// committing results in input order.
    fn run_phase<I, F>(&mut self, phase: &str, path: &Path, items: Vec<(String, I)>, work: F) -> Result<()>
    where
        I: Sync,
        F: Fn(&I) -> Result<ItemOutput> + Sync,
    {
        if self.run.named(phase).is_some_and(|c| c.completed) {
            return Ok(());
        }
        self.prepare_artifact(phase, path)?;
        let pending: Vec<&(String, I)> = items
            .iter()
            .filter(|(k, _)| !self.run.named(phase).is_some_and(|c| c.contains(k)))
            .collect();
        info!(phase, total = items.len(), pending = pending.len(), "stage start");
        for batch in pending.chunks(self.workers.max(1)) {
            if self.interrupt.load(Ordering::SeqCst) {
                return Err(Error::Interrupted);
            }
            let results: Vec<Result<ItemOutput>> = if batch.len() == 1 {
                vec![work(&batch[0].1)]
            } else {
                std::thread::scope(|s| {
                    let handles: Vec<_> = batch.iter().map(|(_, item)| s.spawn(|| work(item))).collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().unwrap_or_else(|_| Err(Error::SchemaError("worker panicked".into()))))
                        .collect()
                })
            };
            for ((key, _), result) in batch.iter().zip(results) {
                self.commit(phase, path, key, result?)?;
            }
        }
        self.run.named_mut(phase).completed = true;
        self.store.save(&self.run)
    }
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io_path("read", path, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str(l).map_err(|e| Error::SchemaError(format!("{}:{}: {e}", path.display(), n + 1)))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct KeywordLine {
    discipline: String,
    keywords: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HitsLine {
    query: String,
    repos: Vec<RepoRef>,
}

/// One line of `candidates.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    #[serde(flatten)]
    pub candidate: CandidateFile,
    pub discipline: String,
    pub repo_url: String,
    pub license: Option<String>,
    /// Workspace with `root` relative to the output directory.
    pub workspace: Option<Workspace>,
    pub provenance: Provenance,
}

/// One line of `adapted.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptRecord {
    pub task_id: String,
    pub status: AdaptStatus,
    pub iterations: u8,
    pub outcomes: Vec<Outcome>,
    pub last_error: Option<String>,
    pub task: Option<TaskInstance>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub repos_found: usize,
    pub research_repos: usize,
    /// Research repositories per discipline.
    pub per_discipline: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SelectSummary {
    pub repos: usize,
    pub files_seen: usize,
    pub rule_kept: usize,
    pub science_yes: usize,
    pub workspaces: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdaptSummary {
    pub attempted: usize,
    pub adapted: usize,
    pub discarded: usize,
    /// Iterations used → number of adapted candidates.
    pub iteration_histogram: BTreeMap<u8, usize>,
    pub emitted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub search: SearchSummary,
    pub select: SelectSummary,
    pub adapt: AdaptSummary,
    pub stats: CorpusStats,
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "search: {} repositories found, {} research", self.repos_found, self.research_repos)?;
        for (d, n) in &self.per_discipline {
            writeln!(f, "  {d:<24} {n:>6}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SelectSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "select: {} repos | files seen {} -> rule-kept {} -> science-yes {} -> workspaces {}",
            self.repos, self.files_seen, self.rule_kept, self.science_yes, self.workspaces
        )
    }
}

impl fmt::Display for AdaptSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "adapt: {} attempted, {} adapted, {} discarded, {} emitted",
            self.attempted, self.adapted, self.discarded, self.emitted
        )?;
        for (it, n) in &self.iteration_histogram {
            writeln!(f, "  adapted at iteration {it}: {n}")?;
        }
        Ok(())
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.search, self.select, self.adapt)?;
        let cost = self.stats.cost_usd.unwrap_or_default().round_dp(2);
        let per_task = self
            .stats
            .cost_per_task
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        writeln!(f, "total cost: {cost} USD; cost/task: {per_task} USD")
    }
}

pub struct Pipeline {
    config: PipelineConfig,
    services: Services,
    state: Committer,
    out_dir: PathBuf,
    state_dir: PathBuf,
    config_hash: String,
}

impl Pipeline {
    pub fn new(config: PipelineConfig, services: Services, interrupt: Arc<AtomicBool>) -> Result<Self> {
        config.validate()?;
        let out_dir = config.out_dir();
        let state_dir = config.state_dir();
        std::fs::create_dir_all(&out_dir).with_path("create output dir", &out_dir)?;
        let config_hash = config.config_hash();
        let run_id = config.run_id();
        let store = CheckpointStore::new(&state_dir);
        let run = match store.load(&run_id)? {
            Some(run) if run.config_hash != config_hash => {
                return Err(Error::Config(format!(
                    "run `{run_id}` in {} was started with a different configuration",
                    state_dir.display()
                )))
            }
            Some(run) => run,
            None => PipelineRun::new(&run_id, &config_hash),
        };
        Ok(Self {
            state: Committer {
                store,
                run,
                workers: config.workers,
                interrupt,
                halt_after_commits: None,
                commits: 0,
            },
            config,
            services,
            out_dir,
            state_dir,
            config_hash,
        })
    }

    /// Stops with `Interrupted` right after the n-th artifact write, before its
    /// checkpoint is saved.
    pub fn halt_after_commits(mut self, n: usize) -> Self {
        self.state.halt_after_commits = Some(n);
        self
    }

    pub fn run_state(&self) -> &PipelineRun {
        &self.state.run
    }

    pub fn out_path(&self, file: &str) -> PathBuf {
        self.out_dir.join(file)
    }

    fn state_path(&self, suffix: &str) -> PathBuf {
        self.state_dir.join(format!("{}.{suffix}", self.state.run.run_id))
    }

    fn exclusions(&self) -> Result<ExclusionList> {
        match &self.config.paths.exclude_file {
            Some(path) => ExclusionList::from_file(path),
            None => Ok(ExclusionList::default()),
        }
    }

    pub fn search(&mut self) -> Result<SearchSummary> {
        let services = &self.services;
        let config = &self.config;
        let gateway = &services.gateway;

        let keywords_path = self.state_path("keywords.jsonl");
        let items: Vec<(String, _)> = config.disciplines.iter().map(|d| (d.id.clone(), d)).collect();
        self.state.run_phase(PHASE_EXPAND, &keywords_path, items, |d| {
            let mut log = Vec::new();
            let keywords = if config.keyword_expansion {
                expand_keywords(gateway, d, &mut log)?
            } else {
                d.seed_keywords.clone()
            };
            let line = serde_json::to_string(&KeywordLine { discipline: d.id.clone(), keywords })?;
            Ok(ItemOutput { lines: vec![line], exchanges: log })
        })?;

        let keyword_lines: Vec<KeywordLine> = read_jsonl(&keywords_path)?;
        let hits_path = self.state_path("hits.jsonl");
        let mut queries = Vec::new();
        for d in &config.disciplines {
            let Some(kw) = keyword_lines.iter().find(|k| k.discipline == d.id) else { continue };
            for keyword in &kw.keywords {
                for host in &services.hosts {
                    let q = SearchQuery {
                        discipline_id: d.id.clone(),
                        keyword: keyword.clone(),
                        host: host.host(),
                    };
                    queries.push((format!("{}:{}:{}", q.host, q.discipline_id, q.keyword), q));
                }
            }
        }
        let limits = SearchLimits {
            min_stars: config.min_stars,
            language: config.language_filter.clone(),
            page_cap: config.page_cap,
            page_size: config.page_size,
        };
        self.state.run_phase(PHASE_QUERY, &hits_path, queries, |q| {
            let host = services
                .host_for(q.host)
                .ok_or_else(|| Error::Config(format!("host {} not configured", q.host)))?;
            let repos = search_host(host, q, &limits)?;
            let line = serde_json::to_string(&HitsLine {
                query: format!("{}:{}:{}", q.host, q.discipline_id, q.keyword),
                repos,
            })?;
            Ok(ItemOutput { lines: vec![line], exchanges: Vec::new() })
        })?;

        let hits: Vec<HitsLine> = read_jsonl(&hits_path)?;
        let pool = dedupe_and_exclude(hits.into_iter().flat_map(|h| h.repos).collect(), &self.exclusions()?);
        let display_names: BTreeMap<&str, &str> = config
            .disciplines
            .iter()
            .map(|d| (d.id.as_str(), d.display_name.as_str()))
            .collect();
        let repos_path = self.out_path(REPOS_FILE);
        let items: Vec<(String, RepoRef)> = pool.into_iter().map(|r| (r.key(), r)).collect();
        self.state.run_phase(PHASE_CLASSIFY, &repos_path, items, |repo| {
            let mut repo = repo.clone();
            let mut log = Vec::new();
            let readme = match services.host_for(repo.host).map(|h| h.readme(&repo)) {
                Some(Ok(readme)) => readme,
                Some(Err(Error::Gone(key))) => {
                    warn!(repo = %key, "repository vanished before classification");
                    None
                }
                Some(Err(e)) => return Err(e),
                None => None,
            };
            let keyword = repo
                .discipline_ids
                .first()
                .and_then(|d| display_names.get(d.as_str()).copied())
                .unwrap_or_default();
            let c = classify_repository(gateway, &repo, readme.as_deref(), keyword, &mut log)?;
            repo.research_verdict = c.verdict;
            repo.paper_links = c.paper_links;
            repo.classification = Some(c.record);
            Ok(ItemOutput {
                lines: vec![serde_json::to_string(&repo)?],
                exchanges: log,
            })
        })?;
        self.search_summary()
    }

    pub fn search_summary(&self) -> Result<SearchSummary> {
        let repos: Vec<RepoRef> = read_jsonl(&self.out_path(REPOS_FILE))?;
        let mut summary = SearchSummary {
            repos_found: repos.len(),
            ..SearchSummary::default()
        };
        for d in &self.config.disciplines {
            summary.per_discipline.insert(d.id.clone(), 0);
        }
        for r in repos.iter().filter(|r| r.research_verdict == ResearchVerdict::Research) {
            summary.research_repos += 1;
            if let Some(d) = r.discipline_ids.first() {
                *summary.per_discipline.entry(d.clone()).or_default() += 1;
            }
        }
        Ok(summary)
    }

    pub fn select(&mut self) -> Result<SelectSummary> {
        let repos: Vec<RepoRef> = read_jsonl(&self.out_path(REPOS_FILE))?;
        let services = &self.services;
        let gateway = &services.gateway;
        let deny = DirectoryDenyList::new(&self.config.deny_dirs);
        let max_lines = self.config.max_lines;
        let out_dir = &self.out_dir;
        let snapshot_dir = self.state_dir.join("snapshots").join(&self.state.run.run_id);
        let config_hash = &self.config_hash;
        let items: Vec<(String, RepoRef)> = repos
            .into_iter()
            .filter(|r| r.research_verdict == ResearchVerdict::Research)
            .map(|r| (r.key(), r))
            .collect();
        let path = self.out_path(CANDIDATES_FILE);
        self.state.run_phase(PHASE_SELECT, &path, items, |repo| {
            let dest = snapshot_dir.join(repo.key().replace('/', "__"));
            let snapshot = match services.snapshotter.snapshot(repo, &dest) {
                Ok(s) => s,
                Err(e @ (Error::CloneFailed { .. } | Error::Gone(_))) => {
                    warn!(repo = %repo.key(), error = %e, "skipping repository");
                    return Ok(ItemOutput::default());
                }
                Err(e) => return Err(e),
            };
            let mut out = ItemOutput::default();
            for candidate in rule_filter_files(&snapshot, &deny, max_lines) {
                let mut record = CandidateRecord {
                    candidate,
                    discipline: repo.discipline_ids.first().cloned().unwrap_or_default(),
                    repo_url: repo.url.clone(),
                    license: repo.license_id.clone(),
                    workspace: None,
                    provenance: base_provenance(repo, config_hash),
                };
                if record.candidate.rule_verdict == RuleVerdict::Kept {
                    let mut log = Vec::new();
                    select_candidate(gateway, &snapshot, &mut record, out_dir, &mut log)?;
                    note_exchanges(&mut record.provenance, &log);
                    out.exchanges.extend(log);
                }
                out.lines.push(serde_json::to_string(&record)?);
            }
            let _ = std::fs::remove_dir_all(&dest);
            Ok(out)
        })?;
        let _ = std::fs::remove_dir_all(&snapshot_dir);
        self.select_summary()
    }

    pub fn select_summary(&self) -> Result<SelectSummary> {
        let records: Vec<CandidateRecord> = read_jsonl(&self.out_path(CANDIDATES_FILE))?;
        let repos: HashSet<&str> = records.iter().map(|r| r.candidate.repo.as_str()).collect();
        Ok(SelectSummary {
            repos: repos.len(),
            files_seen: records.len(),
            rule_kept: records.iter().filter(|r| r.candidate.rule_verdict == RuleVerdict::Kept).count(),
            science_yes: records.iter().filter(|r| r.candidate.science_verdict == Judgement::Yes).count(),
            workspaces: records.iter().filter(|r| r.workspace.is_some()).count(),
        })
    }

    pub fn adapt(&mut self) -> Result<AdaptSummary> {
        let records: Vec<CandidateRecord> = read_jsonl(&self.out_path(CANDIDATES_FILE))?;
        let services = &self.services;
        let config = &self.config;
        let out_dir = &self.out_dir;
        let mut opts = ExecOptions {
            timeout: config.exec_timeout(),
            allow_net: config.allow_net,
            ..ExecOptions::default()
        };
        opts.redactions
            .push((config.env_cache_dir().display().to_string(), "<env_cache>".into()));
        let items: Vec<(String, CandidateRecord)> = records
            .into_iter()
            .filter(|r| r.workspace.is_some())
            .map(|r| (r.candidate.task_id(), r))
            .collect();
        let path = self.out_path(ADAPTED_FILE);
        self.state.run_phase(PHASE_ADAPT, &path, items, |record| {
            let mut log = Vec::new();
            let line = adapt_candidate(services, config, out_dir, &opts, record, &mut log)?;
            Ok(ItemOutput {
                lines: vec![serde_json::to_string(&line)?],
                exchanges: log,
            })
        })?;

        let adapted: Vec<AdaptRecord> = read_jsonl(&path)?;
        let tasks_path = self.out_path(TASKS_FILE);
        let items: Vec<(String, TaskInstance)> = adapted
            .into_iter()
            .filter_map(|a| a.task.map(|t| (a.task_id, t)))
            .collect();
        self.state.run_phase(PHASE_EMIT, &tasks_path, items, |task| {
            Ok(ItemOutput {
                lines: vec![TaskSink::encode(task)?],
                exchanges: Vec::new(),
            })
        })?;
        self.adapt_summary()
    }

    pub fn adapt_summary(&self) -> Result<AdaptSummary> {
        let adapted: Vec<AdaptRecord> = read_jsonl(&self.out_path(ADAPTED_FILE))?;
        let mut summary = AdaptSummary {
            attempted: adapted.len(),
            emitted: dataset::read_corpus(&self.out_path(TASKS_FILE)).map_or(0, |t| t.len()),
            ..AdaptSummary::default()
        };
        for a in &adapted {
            match a.status {
                AdaptStatus::Adapted => {
                    summary.adapted += 1;
                    *summary.iteration_histogram.entry(a.iterations).or_default() += 1;
                }
                AdaptStatus::Discarded => summary.discarded += 1,
                _ => {}
            }
        }
        Ok(summary)
    }

    /// Corpus statistics plus `stats.json` and `licenses.csv` in the output directory.
    pub fn stats(&self) -> Result<CorpusStats> {
        let tasks_path = self.out_path(TASKS_FILE);
        let tasks = if tasks_path.exists() {
            dataset::read_corpus(&tasks_path)?
        } else {
            Vec::new()
        };
        let stats = compute_stats(&tasks, Some(&self.state.run.ledger))?;
        dataset::write_stats_json(&self.out_path(STATS_FILE), &stats, &package_histogram(&tasks))?;
        let repos: Vec<RepoRef> = read_jsonl(&self.out_path(REPOS_FILE))?;
        let task_repos: HashSet<String> = tasks.iter().filter_map(|t| t.repo_key().ok()).collect();
        let used: Vec<RepoRef> = repos.into_iter().filter(|r| task_repos.contains(&r.key())).collect();
        dataset::write_licenses_csv(&self.out_path(LICENSES_FILE), &audit_licenses(&used))?;
        Ok(stats)
    }

    pub fn run_all(&mut self) -> Result<RunSummary> {
        let search = self.search()?;
        let select = self.select()?;
        let adapt = self.adapt()?;
        let stats = self.stats()?;
        Ok(RunSummary {
            search,
            select,
            adapt,
            stats,
        })
    }
}

fn base_provenance(repo: &RepoRef, config_hash: &str) -> Provenance {
    let mut p = Provenance {
        config_hash: config_hash.to_string(),
        ..Provenance::default()
    };
    if let Some(c) = &repo.classification {
        let step = TemplateId::CrawlFilter.as_str();
        if let Some(model) = &c.model {
            p.models.insert(step.into(), model.clone());
        }
        if let Some(at) = &c.recorded_at {
            p.timestamps.insert(step.into(), at.clone());
        }
        p.prompt_hashes.extend(c.prompt_hashes.iter().cloned());
    }
    p
}

fn note_exchanges(p: &mut Provenance, log: &[LLMExchange]) {
    for e in log {
        let step = e.template_id.as_str().to_string();
        p.models.insert(step.clone(), e.model_name.clone());
        p.timestamps.insert(step, e.recorded_at.clone());
        p.prompt_hashes.push(e.prompt_hash.clone());
    }
}

fn select_candidate(
    gateway: &Gateway,
    snapshot: &crate::select::RepoSnapshot,
    record: &mut CandidateRecord,
    out_dir: &Path,
    log: &mut Vec<LLMExchange>,
) -> Result<()> {
    let source = snapshot.local_root.join(&record.candidate.rel_path);
    let code = match std::fs::read(&source) {
        Ok(bytes) => String::from_utf8_lossy(&bytes).into_owned(),
        Err(e) => {
            warn!(path = %source.display(), error = %e, "cannot read candidate");
            record.candidate.rule_verdict = RuleVerdict::DroppedIo;
            return Ok(());
        }
    };
    if judge_scientific(gateway, &mut record.candidate, &code, log)? != Judgement::Yes {
        return Ok(());
    }
    if !locate_dependencies(gateway, &mut record.candidate, &code, snapshot, log)? {
        return Ok(());
    }
    let rel_root = PathBuf::from(WORKSPACES_DIR).join(record.candidate.task_id());
    match build_workspace(snapshot, &record.candidate, &out_dir.join(&rel_root)) {
        Ok(mut ws) => {
            ws.root = rel_root;
            record.workspace = Some(ws);
        }
        Err(e @ Error::WorkspaceError(_)) => {
            warn!(path = %record.candidate.rel_path, error = %e, "workspace not built");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

struct PipelineBackend<'a> {
    gateway: &'a Gateway,
    provisioner: &'a dyn Provisioner,
    workspace: &'a Workspace,
    program_name: &'a str,
    repo_paths: &'a [String],
    opts: &'a ExecOptions,
    log: &'a mut Vec<LLMExchange>,
    spec: Option<EnvSpec>,
}

impl LoopBackend for PipelineBackend<'_> {
    fn generate(&mut self, prompt: &str) -> Result<String> {
        let exchange = self.gateway.complete_prompt(TemplateId::Adapt, prompt, ModelRole::Coder)?;
        let reply = exchange.reply.clone();
        self.log.push(exchange);
        Ok(reply)
    }

    fn execute(&mut self, code: &str) -> ExecutionResult {
        let spec = infer_requirements(code, self.repo_paths);
        let result = match self.provisioner.provision(&spec) {
            Ok(handle) => execute_candidate(&handle, code, self.workspace, self.program_name, self.opts),
            Err(reason) => ExecutionResult::setup_failure(reason),
        };
        self.spec = Some(spec);
        result
    }
}

/// Workspace files the instruction should mention as inputs: data files first,
/// falling back to any other copied file.
fn instruction_inputs(record: &CandidateRecord, ws: &Workspace) -> Vec<String> {
    let others: Vec<String> = ws
        .copied_paths
        .iter()
        .filter(|p| **p != record.candidate.rel_path)
        .cloned()
        .collect();
    let data: Vec<String> = others.iter().filter(|p| !p.ends_with(".py")).cloned().collect();
    if data.is_empty() {
        others
    } else {
        data
    }
}

fn adapt_candidate(
    services: &Services,
    config: &PipelineConfig,
    out_dir: &Path,
    opts: &ExecOptions,
    record: &CandidateRecord,
    log: &mut Vec<LLMExchange>,
) -> Result<AdaptRecord> {
    let task_id = record.candidate.task_id();
    let mut ws = record
        .workspace
        .clone()
        .ok_or_else(|| Error::WorkspaceError(format!("{task_id} has no workspace")))?;
    ws.root = out_dir.join(&ws.root);
    let source = ws.root.join(&ws.dataset_dir).join(&record.candidate.rel_path);
    let code = std::fs::read_to_string(&source).with_path("read candidate", &source)?;
    let file_name = record.candidate.file_name().to_string();
    let gateway = &services.gateway;
    let base = adapt_prompt(gateway, &code, &ws.dataset_dir, &render_tree(&ws), &file_name)?;

    let mut opts = opts.clone();
    opts.redactions.push((ws.root.display().to_string(), WORKSPACE_TOKEN.into()));
    let first_exchange = log.len();
    let mut backend = PipelineBackend {
        gateway,
        provisioner: services.provisioner.as_ref(),
        workspace: &ws,
        program_name: &file_name,
        repo_paths: &ws.copied_paths,
        opts: &opts,
        log,
        spec: None,
    };
    let outcome = self_debug_loop(&task_id, &base, &mut backend, config.max_iterations)?;
    let spec = backend.spec.take();
    let mut line = AdaptRecord {
        task_id: task_id.clone(),
        status: outcome.state.status,
        iterations: outcome.state.iteration,
        outcomes: outcome.executions.iter().map(|e| e.outcome).collect(),
        last_error: outcome.state.last_error.clone(),
        task: None,
    };
    if outcome.state.status != AdaptStatus::Adapted {
        return Ok(line);
    }
    let produced = outcome
        .last_execution()
        .map(|e| e.produced_files.clone())
        .unwrap_or_default();
    let instruction = generate_instruction(
        gateway,
        &outcome.state.current_code,
        &instruction_inputs(record, &ws),
        &produced,
        log,
    )?;
    let mut provenance = record.provenance.clone();
    note_exchanges(&mut provenance, &log[first_exchange..]);
    provenance.weak_instruction = instruction.weak;
    line.task = Some(TaskInstance {
        task_id,
        discipline_id: record.discipline.clone(),
        repo_url: record.repo_url.clone(),
        source_path: record.candidate.rel_path.clone(),
        instruction: instruction.text,
        adapted_code: outcome.state.current_code.clone(),
        requirements: spec.map(|s| s.requirements).unwrap_or_default(),
        output_files: produced,
        iterations_used: outcome.state.iteration,
        license_id: record.license.clone(),
        provenance,
        difficulty: None,
        expert_flags: None,
    });
    Ok(line)
}

/// Re-exported for callers that drive the adapt step directly.
pub use adapt::MAX_ITERATIONS;
