//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every criterion reports even when an earlier one fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as PropConfig, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rust_decimal::Decimal;

use autosdt::adapt::{
    self_debug_loop, AdaptStatus, ExecOptions, ExecutionResult, HostProvisioner, LoopBackend, Outcome, Provisioner,
};
use autosdt::dataset::read_corpus;
use autosdt::llm::{extract_code_block, parse_path_list, parse_yes_no, CostLedger, CostStage};
use autosdt::model::{CandidateFile, Judgement, RuleVerdict};
use autosdt::pipeline::{read_jsonl, CandidateRecord, CANDIDATES_FILE, TASKS_FILE, WORKSPACES_DIR};
use autosdt::search::{dedupe_and_exclude, ExclusionList};
use autosdt::select::{
    build_workspace, rule_filter_files, workspace_files, DirectoryDenyList, RepoSnapshot, DEFAULT_MAX_LINES,
};
use autosdt::{adapt, Error};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1. fixture end-to-end

fn fixture_end_to_end() -> Verdict {
    let first = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut timings = Vec::new();
    for dir in [first.path(), second.path()] {
        let start = Instant::now();
        let out = common::replay_run(dir);
        timings.push(start.elapsed());
        ensure(out.status.success(), || {
            format!("run exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
        })?;
    }
    let a = std::fs::read(first.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;
    let b = std::fs::read(second.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;
    ensure(a == b, || "two replay runs wrote different tasks.jsonl bytes".into())?;
    let tasks = read_corpus(&first.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;
    ensure(tasks.len() >= 3, || format!("only {} tasks emitted", tasks.len()))?;
    let slowest = timings.iter().max().copied().unwrap_or_default();
    ensure(slowest < Duration::from_secs(60), || format!("run took {slowest:?}"))?;
    Ok(format!("{} tasks, identical bytes across 2 runs, slowest run {:.2}s", tasks.len(), slowest.as_secs_f64()))
}

// 2. loop bound

const VALID_REPLY: &str = "```python\nopen('pred_results/pred_x.csv', 'w').write('1')\n```";

struct Scripted {
    replies: VecDeque<&'static str>,
    outcomes: VecDeque<bool>,
    generate_calls: usize,
    executions: usize,
}

impl LoopBackend for Scripted {
    fn generate(&mut self, _prompt: &str) -> autosdt::Result<String> {
        self.generate_calls += 1;
        Ok(self.replies.pop_front().unwrap_or(VALID_REPLY).to_string())
    }

    fn execute(&mut self, _code: &str) -> ExecutionResult {
        self.executions += 1;
        let ok = self.outcomes.pop_front().unwrap_or(false);
        ExecutionResult {
            exit_code: if ok { 0 } else { 1 },
            stdout_tail: String::new(),
            stderr_tail: if ok { String::new() } else { "Traceback: boom".into() },
            produced_files: if ok { vec!["pred_results/pred_x.csv".into()] } else { Vec::new() },
            wall_time: 0.0,
            outcome: if ok { Outcome::Success } else { Outcome::NonzeroExit },
        }
    }
}

fn loop_bound() -> Verdict {
    for bits in 0u8..8 {
        let outcomes: Vec<bool> = (0..3).map(|i| bits & (1 << i) != 0).collect();
        let mut backend = Scripted {
            replies: VecDeque::new(),
            outcomes: outcomes.iter().copied().collect(),
            generate_calls: 0,
            executions: 0,
        };
        let out = self_debug_loop("k", "base", &mut backend, adapt::MAX_ITERATIONS).map_err(|e| e.to_string())?;
        let first_success = outcomes.iter().position(|&ok| ok);
        let expected_calls = first_success.map_or(3, |i| i + 1);
        let expected_status = if first_success.is_some() { AdaptStatus::Adapted } else { AdaptStatus::Discarded };
        ensure(
            backend.generate_calls == expected_calls
                && backend.executions == expected_calls
                && out.executions.len() == expected_calls
                && usize::from(out.state.iteration) == expected_calls
                && out.state.status == expected_status,
            || {
                format!(
                    "sequence {outcomes:?}: calls {} executions {} iteration {} status {:?}",
                    backend.generate_calls, backend.executions, out.state.iteration, out.state.status
                )
            },
        )?;
    }
    // malformed replies also consume iterations and never push past the bound
    let mut mixed = 0;
    for code in 0..27u32 {
        let steps: Vec<u32> = (0..3).map(|i| (code / 3u32.pow(i)) % 3).collect();
        let replies = steps.iter().map(|&s| if s == 2 { "no code here" } else { VALID_REPLY }).collect();
        let outcomes = steps.iter().filter(|&&s| s != 2).map(|&s| s == 1).collect();
        let mut backend = Scripted { replies, outcomes, generate_calls: 0, executions: 0 };
        let out = self_debug_loop("k", "base", &mut backend, adapt::MAX_ITERATIONS).map_err(|e| e.to_string())?;
        let adapted = out.state.status == AdaptStatus::Adapted;
        let any_success = out.executions.iter().any(ExecutionResult::succeeded);
        ensure(backend.generate_calls <= 3 && backend.executions <= 3 && adapted == any_success, || {
            format!("mixed sequence {steps:?} broke the bound")
        })?;
        mixed += 1;
    }
    Ok(format!("8 success/failure sequences exact, {mixed} sequences with malformed replies bounded"))
}

// 3. rule filter

fn tree_strategy() -> impl Strategy<Value = Vec<(Vec<String>, String, u64)>> {
    let segment = prop::sample::select(vec![
        "src", "lib", "tests", "Tests", "test", "config", "CONFIGS", "utils", "docs", "examples_ci", ".github",
        "contest", "testing", "utilities", "data", "scripts",
    ])
    .prop_map(str::to_string);
    let file = prop::sample::select(vec!["run.py", "utils.py", "test.py", "a.py", "b.py", "notes.txt", "config.py"])
        .prop_map(str::to_string);
    let lines = prop_oneof![0u64..20, 990u64..=1010, Just(1000u64), 0u64..2500];
    prop::collection::vec((prop::collection::vec(segment, 0..4), file, lines), 1..7)
}

fn rule_filter() -> Verdict {
    let deny = DirectoryDenyList::default();
    let deny_names: HashSet<&str> = ["tests", "test", "config", "configs", "utils", "docs", "examples_ci", ".github"]
        .into_iter()
        .collect();
    let mut runner = TestRunner::new(PropConfig { cases: 10_000, failure_persistence: None, ..PropConfig::default() });
    let boundary_hits = std::cell::Cell::new(0usize);
    let kept_total = std::cell::Cell::new(0usize);
    runner
        .run(&tree_strategy(), |tree| {
            let dir = tempfile::tempdir().map_err(|e| TestCaseError::fail(e.to_string()))?;
            let mut expected: BTreeMap<String, (u64, bool)> = BTreeMap::new();
            for (segments, file, lines) in &tree {
                let rel = segments.iter().chain(std::iter::once(file)).cloned().collect::<Vec<_>>().join("/");
                if expected.contains_key(&rel) || expected.keys().any(|k| rel.starts_with(&format!("{k}/"))) {
                    continue;
                }
                let path = dir.path().join(&rel);
                if path.is_dir() || path.ancestors().skip(1).any(Path::is_file) {
                    continue;
                }
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, "x = 1\n".repeat(*lines as usize)).unwrap();
                let denied = segments.iter().any(|s| deny_names.contains(s.to_lowercase().as_str()));
                expected.insert(rel, (*lines, denied));
            }
            let snapshot = RepoSnapshot::from_dir(&common::repo("o", "r"), dir.path())
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            let files = rule_filter_files(&snapshot, &deny, DEFAULT_MAX_LINES);
            let py: Vec<&String> = expected.keys().filter(|k| k.ends_with(".py")).collect();
            prop_assert_eq!(files.len(), py.len());
            for f in &files {
                let (lines, denied) = expected[&f.rel_path];
                let should_keep = !denied && lines <= 1000;
                prop_assert_eq!(f.rule_verdict == RuleVerdict::Kept, should_keep, "{}", f.rel_path);
                if f.rule_verdict == RuleVerdict::Kept {
                    prop_assert!(f.line_count <= 1000);
                    let dirs: Vec<&str> = f.rel_path.split('/').collect();
                    prop_assert!(dirs[..dirs.len() - 1].iter().all(|s| !deny_names.contains(s.to_lowercase().as_str())));
                    kept_total.set(kept_total.get() + 1);
                    if lines == 1000 {
                        boundary_hits.set(boundary_hits.get() + 1);
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let (boundary_hits, kept_total) = (boundary_hits.get(), kept_total.get());
    ensure(boundary_hits > 0, || "no kept file sat exactly on the 1000-line boundary".into())?;
    Ok(format!("10000 trees, 0 violations, {kept_total} kept files, {boundary_hits} kept at exactly 1000 lines"))
}

// 4. workspace closure

fn workspace_closure() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let dirs = ["", "data", "data/raw", "lib", "models", "src", "assets/img"];
    let exts = ["csv", "py", "json", "txt", "npy"];
    let mut strict = 0;
    for case in 0..200 {
        let repo_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let n = rng.random_range(2..16);
        let mut files: BTreeMap<String, usize> = BTreeMap::new();
        let cand_dir = dirs[rng.random_range(0..dirs.len())];
        let candidate = if cand_dir.is_empty() { "main.py".to_string() } else { format!("{cand_dir}/main.py") };
        files.insert(candidate.clone(), rng.random_range(1..500));
        for i in 0..n {
            let d = dirs[rng.random_range(0..dirs.len())];
            let name = format!("f{i}.{}", exts[rng.random_range(0..exts.len())]);
            let rel = if d.is_empty() { name } else { format!("{d}/{name}") };
            files.insert(rel, rng.random_range(1..3000));
        }
        for (rel, size) in &files {
            let p = repo_dir.path().join(rel);
            std::fs::create_dir_all(p.parent().unwrap()).unwrap();
            std::fs::write(&p, vec![b'a'; *size]).unwrap();
        }
        // declare a random subset of files plus, sometimes, a whole directory
        let mut declared_files = Vec::new();
        let mut declared_dirs = Vec::new();
        for rel in files.keys().filter(|r| **r != candidate) {
            if rng.random_bool(0.3) {
                declared_files.push(rel.clone());
            }
        }
        if rng.random_bool(0.4) {
            let d = dirs[rng.random_range(1..dirs.len())];
            if files.keys().any(|f| f.starts_with(&format!("{d}/"))) {
                declared_dirs.push(d.to_string());
            }
        }
        let mut expected: BTreeSet<String> = BTreeSet::from([candidate.clone()]);
        expected.extend(declared_files.iter().cloned());
        for d in &declared_dirs {
            expected.extend(files.keys().filter(|f| f.starts_with(&format!("{d}/"))).cloned());
        }

        let repo = common::repo("lab", "proj");
        let snapshot = RepoSnapshot::from_dir(&repo, repo_dir.path()).map_err(|e| e.to_string())?;
        let split = declared_files.len() / 2;
        let cand = CandidateFile {
            repo: repo.key(),
            rel_path: candidate.clone(),
            line_count: 1,
            rule_verdict: RuleVerdict::Kept,
            science_verdict: Judgement::Yes,
            dataset_label: Judgement::Yes,
            dataset_paths: declared_files[..split].iter().cloned().chain(declared_dirs.iter().cloned()).collect(),
            module_paths: declared_files[split..].to_vec(),
        };
        let ws_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let ws = build_workspace(&snapshot, &cand, &ws_dir.path().join("ws")).map_err(|e| e.to_string())?;
        let prefix = format!("{}/", ws.dataset_dir);
        let walked: BTreeSet<String> = workspace_files(&ws)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.strip_prefix(&prefix).map(str::to_string).unwrap_or(p))
            .collect();
        ensure(walked == expected, || format!("case {case}: walked {walked:?} != declared {expected:?}"))?;
        let ws_bytes: usize = expected.iter().map(|f| files[f]).sum();
        let repo_bytes: usize = files.values().sum();
        let on_disk: u64 = walkdir::WalkDir::new(&ws.root)
            .into_iter()
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_file())
            .map(|e| e.metadata().map(|m| m.len()).unwrap_or(0))
            .sum();
        ensure(on_disk as usize == ws_bytes && ws.byte_size == on_disk, || {
            format!("case {case}: byte_size {} on disk {on_disk} expected {ws_bytes}", ws.byte_size)
        })?;
        if expected.len() < files.len() {
            ensure(ws_bytes < repo_bytes, || format!("case {case}: no strict reduction"))?;
            strict += 1;
        }
    }
    Ok(format!("200 closures recovered exactly, {strict} with undeclared files all strictly smaller"))
}

// 5. output convention

fn output_convention() -> Verdict {
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = common::replay_run(out.path());
    ensure(run.status.success(), || String::from_utf8_lossy(&run.stderr).into_owned())?;
    let tasks = read_corpus(&out.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;
    let candidates: Vec<CandidateRecord> = read_jsonl(&out.path().join(CANDIDATES_FILE)).map_err(|e| e.to_string())?;
    let provisioner = HostProvisioner::default();
    for task in &tasks {
        ensure(task.adapted_code.contains("pred_results/"), || format!("{}: code never names pred_results/", task.task_id))?;
        ensure(
            !task.output_files.is_empty() && task.output_files.iter().all(|f| f.starts_with("pred_results/")),
            || format!("{}: outputs {:?}", task.task_id, task.output_files),
        )?;
        // re-execute in the built workspace and look at what lands on disk
        let record = candidates
            .iter()
            .find(|c| c.candidate.task_id() == task.task_id)
            .ok_or_else(|| format!("{}: no candidate record", task.task_id))?;
        let mut ws = record.workspace.clone().ok_or("candidate without workspace")?;
        ws.root = out.path().join(&ws.root);
        let handle = provisioner
            .provision(&adapt::infer_requirements(&task.adapted_code, &ws.copied_paths))
            .map_err(|e| format!("provision: {e}"))?;
        let result = adapt::execute_candidate(
            &handle,
            &task.adapted_code,
            &ws,
            record.candidate.file_name(),
            &ExecOptions::default(),
        );
        let on_disk: Vec<String> = walkdir::WalkDir::new(ws.root.join("pred_results"))
            .into_iter()
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_file())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .collect();
        ensure(result.succeeded() && !on_disk.is_empty(), || {
            format!("{}: re-execution produced {on_disk:?} ({:?})", task.task_id, result.outcome)
        })?;
    }
    ensure(!tasks.is_empty(), || "no tasks to check".into())?;
    Ok(format!("{} tasks, every one re-executed and wrote under pred_results/", tasks.len()))
}

// 6. ledger additivity

fn ledger_additivity() -> Verdict {
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut pipeline = common::fixture_pipeline(out.path()).map_err(|e| e.to_string())?;
    pipeline.run_all().map_err(|e| e.to_string())?;
    let ledger = pipeline.run_state().ledger.clone();
    let config = common::fixture_config(out.path());
    let million = Decimal::from(1_000_000);
    let mut independent = Decimal::ZERO;
    for entry in &ledger.entries {
        let path = common::fixtures().join("llm_cache").join(format!("{}.json", entry.prompt_hash));
        let rec: serde_json::Value =
            serde_json::from_slice(&std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?)
                .map_err(|e| e.to_string())?;
        let rates = &config.llm.rates[rec["model"].as_str().unwrap_or_default()];
        let pt = Decimal::from(rec["usage"]["prompt_tokens"].as_u64().unwrap_or_default());
        let ct = Decimal::from(rec["usage"]["completion_tokens"].as_u64().unwrap_or_default());
        let cost = (pt * rates.input_per_mtok + ct * rates.output_per_mtok) / million;
        ensure(cost == entry.usd, || format!("{}: ledger {} vs recomputed {cost}", entry.prompt_hash, entry.usd))?;
        independent += cost;
    }
    let stage_sum: Decimal = ledger.per_stage.values().copied().sum();
    ensure(ledger.total == independent && ledger.total == stage_sum, || {
        format!("total {} vs exchange sum {independent} vs stage sum {stage_sum}", ledger.total)
    })?;
    ensure(ledger.total > Decimal::ZERO, || "replayed run recorded no spend".into())?;

    let mut table = CostLedger::default();
    for (stage, usd) in CostStage::ALL.into_iter().zip([32, 459, 828, 1210, 426]) {
        table.add(stage, "stage-total", Decimal::from(usd));
    }
    ensure(table.total == Decimal::from(2955), || format!("stage table sums to {}", table.total))?;
    let per_task = (table.total / Decimal::from(5404)).round_dp(2);
    ensure(per_task == Decimal::new(55, 2), || format!("cost per task {per_task}"))?;
    Ok(format!(
        "{} exchanges sum exactly to {} USD; 32+459+828+1210+426 = {}",
        ledger.entries.len(),
        ledger.total,
        table.total
    ))
}

// 7. parser totality

const TOKENS: [&str; 22] = [
    "VERDICT", "PATHS", ":", " YES", "no", "Yes.", "```", "```python", "```py\n", "\n", "[", "]", ",", "'", "\"",
    "**", "`", " ", "é", "\u{0}", "data/x.csv", "\r\n",
];

fn parser_totality() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut values = 0usize;
    let mut errors = 0usize;
    for i in 0..100_000 {
        let bytes: Vec<u8> = if i % 2 == 0 {
            let len = rng.random_range(0..256);
            (0..len).map(|_| rng.random()).collect()
        } else {
            let n = rng.random_range(0..24);
            (0..n).flat_map(|_| TOKENS[rng.random_range(0..TOKENS.len())].bytes()).collect()
        };
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let outcome = catch_unwind(AssertUnwindSafe(|| {
            let yn = parse_yes_no(&text, "VERDICT").map(|_| ());
            let paths = parse_path_list(&text, "PATHS").map(|_| ());
            let code = extract_code_block(&text).map(|_| ());
            [yn, paths, code]
        }))
        .map_err(|_| format!("parser panicked on input {bytes:?}"))?;
        for r in outcome {
            match r {
                Ok(()) => values += 1,
                Err(Error::MalformedReply(_) | Error::NoCodeBlock) => errors += 1,
                Err(other) => return Err(format!("unexpected error {other:?} on {bytes:?}")),
            }
        }
    }
    Ok(format!("100000 inputs x 3 parsers, no panic ({values} values, {errors} typed errors)"))
}

// 8. dedup / exclusion

fn dedup_exclusion() -> Verdict {
    let names = ["Alpha", "beta", "GAMMA", "delta", "eps", "zeta"];
    let strat = (
        prop::collection::vec((0..6usize, 0..6usize, any::<bool>()), 0..40),
        prop::collection::btree_set((0..6usize, 0..6usize), 0..8),
    );
    let mut runner = TestRunner::new(PropConfig { cases: 10_000, failure_persistence: None, ..PropConfig::default() });
    runner
        .run(&strat, |(picks, excluded)| {
            let input: Vec<_> = picks
                .iter()
                .map(|&(o, n, upper)| {
                    let owner = if upper { names[o].to_uppercase() } else { names[o].to_string() };
                    common::repo(&owner, names[n])
                })
                .collect();
            let mut exclusions = ExclusionList::default();
            let mut excluded_keys = HashSet::new();
            for &(o, n) in &excluded {
                let key = format!("{}/{}", names[o], names[n]).to_lowercase();
                exclusions.insert(&key, "bench").unwrap();
                excluded_keys.insert(key);
            }
            let mut expected: Vec<String> = Vec::new();
            for r in &input {
                let key = format!("{}/{}", r.owner, r.name).to_lowercase();
                if !excluded_keys.contains(&key) && !expected.contains(&key) {
                    expected.push(key);
                }
            }
            let once = dedupe_and_exclude(input, &exclusions);
            let keys: Vec<String> = once.iter().map(|r| r.key()).collect();
            prop_assert_eq!(&keys, &expected);
            let twice: Vec<String> = dedupe_and_exclude(once.clone(), &exclusions).iter().map(|r| r.key()).collect();
            prop_assert_eq!(twice, keys);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("10000 cases: keys = input minus exclusions, unique, idempotent".into())
}

// 9. requirements oracle

const AST_ORACLE: &str = r#"
import ast, json, sys
out = {"stdlib": sorted(sys.stdlib_module_names), "imports": {}}
for path in sys.argv[1:]:
    tree = ast.parse(open(path).read())
    mods = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            mods.update(a.name.split(".")[0] for a in node.names)
        elif isinstance(node, ast.ImportFrom) and node.level == 0 and node.module:
            mods.add(node.module.split(".")[0])
    out["imports"][path] = sorted(mods)
print(json.dumps(out))
"#;

fn requirements_oracle() -> Verdict {
    let dir = common::fixtures().join("programs");
    let mut programs: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "py"))
        .collect();
    programs.sort();
    ensure(programs.len() == 50, || format!("expected 50 programs, found {}", programs.len()))?;
    let output = Command::new("python3")
        .arg("-c")
        .arg(AST_ORACLE)
        .args(&programs)
        .output()
        .map_err(|e| format!("python3: {e}"))?;
    ensure(output.status.success(), || String::from_utf8_lossy(&output.stderr).into_owned())?;
    let scan: serde_json::Value = serde_json::from_slice(&output.stdout).map_err(|e| e.to_string())?;
    let stdlib: HashSet<String> = scan["stdlib"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|v| v.as_str().map(str::to_string))
        .collect();
    let table: HashMap<String, String> = include_str!("../src/adapt/import_map.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect();
    let repo_paths = vec!["common.py".to_string(), "models/net.py".to_string(), "data/input.csv".to_string()];
    let local: HashSet<&str> = ["common", "models", "net", "data"].into_iter().collect();
    let mut stdlib_only = 0;
    for path in &programs {
        let code = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let imports = scan["imports"][path.to_str().unwrap()].as_array().cloned().unwrap_or_default();
        let expected: BTreeSet<String> = imports
            .iter()
            .filter_map(|v| v.as_str())
            .filter(|m| !stdlib.contains(*m) && !local.contains(m))
            .map(|m| table.get(m).cloned().unwrap_or_else(|| m.to_string()))
            .collect();
        let got = adapt::infer_requirements(&code, &repo_paths).requirements;
        let got_set: BTreeSet<String> = got.iter().cloned().collect();
        ensure(got_set == expected && got_set.len() == got.len(), || {
            format!("{}: inferred {got:?}, oracle {expected:?}", path.display())
        })?;
        if expected.is_empty() {
            stdlib_only += 1;
        }
    }
    ensure(stdlib_only >= 5, || format!("only {stdlib_only} stdlib-only programs"))?;
    Ok(format!("50/50 programs agree with the ast scan, {stdlib_only} stdlib-only programs yield empty specs"))
}


// 10. resumability

fn commit_count(run: &autosdt::model::PipelineRun) -> usize {
    run.stage_checkpoints.values().map(|c| c.processed_keys.len()).sum()
}

fn resumability() -> Verdict {
    let reference = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut pipeline = common::fixture_pipeline(reference.path()).map_err(|e| e.to_string())?;
    pipeline.run_all().map_err(|e| e.to_string())?;
    let total = commit_count(pipeline.run_state());
    let expected_total = pipeline.run_state().ledger.total;
    let expected = std::fs::read(reference.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut points = BTreeSet::new();
    while points.len() < 5 {
        points.insert(rng.random_range(1..=total));
    }
    // the last artifact write, just before the final checkpoint save
    points.insert(total);
    for &kill in &points {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let mut interrupted =
            common::fixture_pipeline(dir.path()).map_err(|e| e.to_string())?.halt_after_commits(kill);
        match interrupted.run_all() {
            Err(Error::Interrupted) => {}
            other => return Err(format!("kill point {kill}: expected interruption, got {:?}", other.map(|_| ()))),
        }
        drop(interrupted);
        let mut resumed = common::fixture_pipeline(dir.path()).map_err(|e| e.to_string())?;
        resumed.run_all().map_err(|e| format!("resume after {kill}: {e}"))?;
        let got = std::fs::read(dir.path().join(TASKS_FILE)).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("kill point {kill}: tasks.jsonl differs"))?;
        ensure(resumed.run_state().ledger.total == expected_total, || {
            format!("kill point {kill}: ledger {} vs {expected_total}", resumed.run_state().ledger.total)
        })?;
        let ws = dir.path().join(WORKSPACES_DIR);
        ensure(ws.is_dir(), || "workspaces missing after resume".into())?;
    }
    Ok(format!("kill points {points:?} of {total} commits all resumed to identical bytes and ledger"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("fixture end-to-end", fixture_end_to_end),
        ("loop bound", loop_bound),
        ("rule filter", rule_filter),
        ("workspace closure", workspace_closure),
        ("output convention", output_convention),
        ("ledger additivity", ledger_additivity),
        ("parser totality", parser_totality),
        ("dedup/exclusion", dedup_exclusion),
        ("requirements oracle", requirements_oracle),
        ("resumability", resumability),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let verdict = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {name} ({secs:.1}s): {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {reason}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
