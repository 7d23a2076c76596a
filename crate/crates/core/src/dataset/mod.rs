//! Corpus emission, statistics, package coverage and license audit.

pub mod license;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use rust_decimal::{Decimal, RoundingStrategy};
use serde::{Deserialize, Serialize};

use crate::error::{Error, IoContext, Result};
use crate::llm::CostLedger;
use crate::model::TaskInstance;
use crate::select::count_lines;

pub use license::{audit_licenses, classify_license, write_licenses_csv, LicenseClass, LicenseRecord};

/// Append-only `tasks.jsonl` writer that refuses duplicate `(repo, source_path)` pairs.
pub struct TaskSink {
    path: PathBuf,
    file: File,
    keys: HashSet<(String, String)>,
}

impl TaskSink {
    /// Opens (creating if needed) and indexes any tasks already present.
    pub fn open(path: &Path) -> Result<Self> {
        let mut keys = HashSet::new();
        if path.exists() {
            for task in read_corpus(path)? {
                keys.insert((task.repo_key()?, task.source_path.clone()));
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_path("open corpus", path)?;
        Ok(Self { path: path.to_path_buf(), file, keys })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, repo_key: &str, source_path: &str) -> bool {
        self.keys.contains(&(repo_key.to_string(), source_path.to_string()))
    }

    /// Validated JSON line for `task`, without the trailing newline.
    pub fn encode(task: &TaskInstance) -> Result<String> {
        task.validate()?;
        Ok(serde_json::to_string(task)?)
    }

    pub fn emit_task(&mut self, task: &TaskInstance) -> Result<()> {
        let mut line = Self::encode(task)?;
        let key = (task.repo_key()?, task.source_path.clone());
        if self.keys.contains(&key) {
            return Err(Error::DuplicateTask { repo: key.0, path: key.1 });
        }
        line.push('\n');
        self.file
            .write_all(line.as_bytes())
            .and_then(|()| self.file.flush())
            .with_path("append corpus", &self.path)?;
        self.keys.insert(key);
        Ok(())
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<TaskInstance>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str(l).map_err(|e| Error::CorpusDecode {
                line: n + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

pub fn read_corpus(path: &Path) -> Result<Vec<TaskInstance>> {
    parse_corpus(&std::fs::read_to_string(path).with_path("read corpus", path)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisciplineCount {
    pub tasks: u64,
    pub repos: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_tasks: u64,
    pub n_repos: u64,
    pub n_packages: u64,
    pub cost_usd: Option<Decimal>,
    /// Total cost over task count, rounded to cents.
    pub cost_per_task: Option<Decimal>,
    pub per_discipline: BTreeMap<String, DisciplineCount>,
    /// Plain ratio n_tasks / n_repos.
    pub avg_tasks_per_repo: Option<f64>,
    /// Mean line count of the adapted programs.
    pub avg_lines: Option<f64>,
    pub avg_subtasks: Option<f64>,
}

/// Requirement name → number of tasks requiring it.
pub fn package_histogram(tasks: &[TaskInstance]) -> BTreeMap<String, u64> {
    let mut hist = BTreeMap::new();
    for t in tasks {
        let unique: BTreeSet<&String> = t.requirements.iter().collect();
        for r in unique {
            *hist.entry(r.clone()).or_default() += 1;
        }
    }
    hist
}

fn round_cents(d: Decimal) -> Decimal {
    d.round_dp_with_strategy(2, RoundingStrategy::MidpointAwayFromZero)
}

pub fn compute_stats(tasks: &[TaskInstance], ledger: Option<&CostLedger>) -> Result<CorpusStats> {
    let mut repos = BTreeSet::new();
    let mut per_discipline: BTreeMap<String, (u64, BTreeSet<String>)> = BTreeMap::new();
    let mut total_lines = 0u64;
    for t in tasks {
        let repo = t.repo_key()?;
        let entry = per_discipline.entry(t.discipline_id.clone()).or_default();
        entry.0 += 1;
        entry.1.insert(repo.clone());
        repos.insert(repo);
        total_lines += count_lines(t.adapted_code.as_bytes());
    }
    let n_tasks = tasks.len() as u64;
    let n_repos = repos.len() as u64;
    let cost_usd = ledger.map(|l| l.total);
    Ok(CorpusStats {
        n_tasks,
        n_repos,
        n_packages: package_histogram(tasks).len() as u64,
        cost_usd,
        cost_per_task: cost_usd
            .filter(|_| n_tasks > 0)
            .map(|c| round_cents(c / Decimal::from(n_tasks))),
        per_discipline: per_discipline
            .into_iter()
            .map(|(id, (tasks, repos))| {
                (id, DisciplineCount { tasks, repos: repos.len() as u64 })
            })
            .collect(),
        avg_tasks_per_repo: (n_repos > 0).then(|| n_tasks as f64 / n_repos as f64),
        avg_lines: (n_tasks > 0).then(|| total_lines as f64 / n_tasks as f64),
        avg_subtasks: None,
    })
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

pub fn render_stats(stats: &CorpusStats) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<24} {:>12}", "metric", "value");
    let rows = [
        ("tasks", stats.n_tasks.to_string()),
        ("repositories", stats.n_repos.to_string()),
        ("packages", stats.n_packages.to_string()),
        ("avg tasks/repo", opt_f64(stats.avg_tasks_per_repo)),
        ("avg lines", opt_f64(stats.avg_lines)),
        ("cost (USD)", stats.cost_usd.map_or("-".into(), |c| round_cents(c).to_string())),
        ("cost/task (USD)", stats.cost_per_task.map_or("-".into(), |c| c.to_string())),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<24} {v:>12}");
    }
    if !stats.per_discipline.is_empty() {
        let _ = writeln!(out, "\n{:<24} {:>6} {:>6}", "discipline", "tasks", "repos");
        for (id, c) in &stats.per_discipline {
            let _ = writeln!(out, "{id:<24} {:>6} {:>6}", c.tasks, c.repos);
        }
    }
    out
}

pub fn write_stats_json(path: &Path, stats: &CorpusStats, histogram: &BTreeMap<String, u64>) -> Result<()> {
    let body = serde_json::json!({ "stats": stats, "packages": histogram });
    let text = serde_json::to_string_pretty(&body)? + "\n";
    std::fs::write(path, text).with_path("write stats", path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{task_id, Provenance};

    pub(crate) fn task(repo: &str, path: &str, lines: usize, reqs: &[&str], discipline: &str) -> TaskInstance {
        let key = repo.to_lowercase();
        TaskInstance {
            task_id: task_id(&key, path),
            discipline_id: discipline.into(),
            repo_url: format!("https://github.com/{repo}"),
            source_path: path.into(),
            instruction: "Do it.".into(),
            adapted_code: "x = 1\n".repeat(lines),
            requirements: reqs.iter().map(|s| s.to_string()).collect(),
            output_files: vec!["pred_results/pred_a.csv".into()],
            iterations_used: 1,
            license_id: Some("MIT".into()),
            provenance: Provenance::default(),
            difficulty: None,
            expert_flags: None,
        }
    }

    #[test]
    fn sink_round_trip_and_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tasks.jsonl");
        let t = task("o/r", "a.py", 3, &["numpy"], "bio");
        let mut sink = TaskSink::open(&path).unwrap();
        sink.emit_task(&t).unwrap();
        assert!(matches!(sink.emit_task(&t), Err(Error::DuplicateTask { .. })));
        drop(sink);
        assert_eq!(read_corpus(&path).unwrap(), std::slice::from_ref(&t));
        let mut reopened = TaskSink::open(&path).unwrap();
        assert!(matches!(reopened.emit_task(&t), Err(Error::DuplicateTask { .. })));
        let line = std::fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys.iter().map(String::as_str).collect::<BTreeSet<_>>(),
            BTreeSet::from([
                "task_id", "discipline", "repo_url", "source_path", "instruction", "adapted_code",
                "requirements", "output_files", "iterations_used", "license", "provenance"
            ])
        );
    }

    #[test]
    fn sink_rejects_invalid_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let mut sink = TaskSink::open(&dir.path().join("t.jsonl")).unwrap();
        let mut t = task("o/r", "a.py", 3, &[], "bio");
        t.output_files = vec!["out/x.csv".into()];
        assert!(matches!(sink.emit_task(&t), Err(Error::SchemaError(_))));
        assert!(sink.is_empty());
    }

    #[test]
    fn stats_by_hand() {
        let tasks = [task("o/r", "a.py", 100, &["numpy"], "bio"), task("o/r", "b.py", 300, &["numpy", "scipy"], "bio")];
        let mut ledger = CostLedger::default();
        ledger.add(crate::llm::CostStage::ProgramAdaptation, "h", "1.105".parse().unwrap());
        let s = compute_stats(&tasks, Some(&ledger)).unwrap();
        assert_eq!((s.n_tasks, s.n_repos, s.n_packages), (2, 1, 2));
        assert_eq!(s.avg_tasks_per_repo, Some(2.0));
        assert_eq!(s.avg_lines, Some(200.0));
        assert_eq!(s.cost_per_task, Some("0.55".parse().unwrap()));
        assert_eq!(s.per_discipline["bio"], DisciplineCount { tasks: 2, repos: 1 });
    }

    #[test]
    fn empty_corpus_stats() {
        let s = compute_stats(&[], None).unwrap();
        assert_eq!(s.n_tasks, 0);
        assert_eq!(s.avg_lines, None);
        assert_eq!(s.avg_tasks_per_repo, None);
        assert!(package_histogram(&[]).is_empty());
        assert!(render_stats(&s).contains("tasks"));
    }

    #[test]
    fn histogram_counts_tasks() {
        let tasks = [task("o/r", "a.py", 1, &["a"], "x"), task("o/r", "b.py", 1, &["a", "b"], "x")];
        assert_eq!(package_histogram(&tasks), BTreeMap::from([("a".into(), 2), ("b".into(), 1)]));
    }

    #[test]
    fn decode_error_names_line() {
        let err = parse_corpus("\n{not json}\n").unwrap_err();
        assert!(matches!(err, Error::CorpusDecode { line: 2, .. }));
    }

    #[test]
    fn paper_scale_ratio() {
        // 2,955 USD over 5,404 tasks
        let per_task = round_cents(Decimal::from(2955) / Decimal::from(5404));
        assert_eq!(per_task, "0.55".parse::<Decimal>().unwrap());
    }
}
