use std::collections::BTreeSet;
use std::path::{Component, Path};

use tracing::warn;

use super::snapshot::{walk_tree, RepoSnapshot};
use crate::error::{Error, Result};
use crate::model::{CandidateFile, Workspace};

pub const DATASETS_DIR: &str = "benchmark/datasets";
pub const PRED_RESULTS_DIR: &str = "pred_results";

/// Rejects absolute paths and any `..` component.
pub fn check_relative(rel: &str) -> Result<()> {
    let path = Path::new(rel);
    let safe = !rel.is_empty()
        && path
            .components()
            .all(|c| matches!(c, Component::Normal(_) | Component::CurDir));
    if safe {
        Ok(())
    } else {
        Err(Error::WorkspaceError(format!("path `{rel}` escapes the repository root")))
    }
}

/// Files named by `paths`, where a directory stands for every file beneath it.
/// Paths that match nothing are skipped.
pub fn expand_paths<'a>(snapshot: &'a RepoSnapshot, paths: &[String]) -> Result<BTreeSet<&'a str>> {
    let mut out = BTreeSet::new();
    for raw in paths {
        check_relative(raw)?;
        let rel = raw.trim_start_matches("./").trim_end_matches('/');
        let prefix = format!("{rel}/");
        let before = out.len();
        for f in &snapshot.file_tree {
            if f.path == rel || f.path.starts_with(&prefix) {
                out.insert(f.path.as_str());
            }
        }
        if out.len() == before {
            warn!(repo = %snapshot.repo, path = %raw, "dependency path matches no file");
        }
    }
    Ok(out)
}

/// Copies the candidate and its declared dependencies into a fresh workspace at
/// `out_root`, preserving repository-relative structure.
pub fn build_workspace(snapshot: &RepoSnapshot, candidate: &CandidateFile, out_root: &Path) -> Result<Workspace> {
    let mut declared = vec![candidate.rel_path.clone()];
    declared.extend(candidate.dataset_paths.iter().cloned());
    declared.extend(candidate.module_paths.iter().cloned());
    let files = expand_paths(snapshot, &declared)?;

    let ws_err = |what: &str, p: &Path, e: std::io::Error| {
        Error::WorkspaceError(format!("{what} {}: {e}", p.display()))
    };
    if out_root.exists() {
        std::fs::remove_dir_all(out_root).map_err(|e| ws_err("clear", out_root, e))?;
    }
    let dataset_dir = format!("{DATASETS_DIR}/{}", snapshot.repo_name);
    check_relative(&snapshot.repo_name)?;
    let target_root = out_root.join(&dataset_dir);
    std::fs::create_dir_all(&target_root).map_err(|e| ws_err("create", &target_root, e))?;
    let pred = out_root.join(PRED_RESULTS_DIR);
    std::fs::create_dir_all(&pred).map_err(|e| ws_err("create", &pred, e))?;

    let source_root = snapshot
        .local_root
        .canonicalize()
        .map_err(|e| ws_err("resolve", &snapshot.local_root, e))?;
    let mut copied = Vec::new();
    let mut byte_size = 0u64;
    for rel in files {
        let from = snapshot.local_root.join(rel);
        let meta = std::fs::symlink_metadata(&from).map_err(|e| ws_err("stat", &from, e))?;
        if meta.file_type().is_symlink() || !meta.is_file() {
            warn!(path = %rel, "skipping non-regular file");
            continue;
        }
        let resolved = from.canonicalize().map_err(|e| ws_err("resolve", &from, e))?;
        if !resolved.starts_with(&source_root) {
            return Err(Error::WorkspaceError(format!("`{rel}` resolves outside the repository")));
        }
        let to = target_root.join(rel);
        if let Some(parent) = to.parent() {
            std::fs::create_dir_all(parent).map_err(|e| ws_err("create", parent, e))?;
        }
        byte_size += std::fs::copy(&from, &to).map_err(|e| ws_err("copy", &from, e))?;
        copied.push(rel.to_string());
    }
    Ok(Workspace {
        root: out_root.to_path_buf(),
        candidate: candidate.task_id(),
        copied_paths: copied,
        byte_size,
        dataset_dir,
    })
}

/// Workspace-relative paths of every regular file in a built workspace.
pub fn workspace_files(ws: &Workspace) -> Result<Vec<String>> {
    Ok(walk_tree(&ws.root)?.into_iter().map(|f| f.path).collect())
}

/// Indented listing of the dataset directory, used in adaptation prompts.
pub fn render_tree(ws: &Workspace) -> String {
    let mut out = format!("{}/\n", ws.dataset_dir);
    let mut seen_dirs = BTreeSet::new();
    let mut paths = ws.copied_paths.clone();
    paths.sort();
    for path in &paths {
        let parts: Vec<&str> = path.split('/').collect();
        for depth in 1..parts.len() {
            let dir = parts[..depth].join("/");
            if seen_dirs.insert(dir) {
                out.push_str(&format!("{}{}/\n", "  ".repeat(depth), parts[depth - 1]));
            }
        }
        out.push_str(&format!("{}{}\n", "  ".repeat(parts.len()), parts[parts.len() - 1]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Judgement, RuleVerdict};
    use crate::select::snapshot::FileEntry;

    fn fixture(files: &[(&str, usize)]) -> (tempfile::TempDir, RepoSnapshot) {
        let dir = tempfile::tempdir().unwrap();
        let mut tree = Vec::new();
        for (rel, size) in files {
            let p = dir.path().join(rel);
            std::fs::create_dir_all(p.parent().unwrap()).unwrap();
            std::fs::write(&p, vec![b'x'; *size]).unwrap();
            tree.push(FileEntry { path: rel.to_string(), size: *size as u64 });
        }
        tree.sort_by(|a, b| a.path.cmp(&b.path));
        let snap = RepoSnapshot {
            repo: "lab/mini".into(),
            repo_name: "Mini".into(),
            local_root: dir.path().into(),
            total_bytes: tree.iter().map(|f| f.size).sum(),
            file_tree: tree,
        };
        (dir, snap)
    }

    fn candidate(datasets: &[&str], modules: &[&str]) -> CandidateFile {
        CandidateFile {
            repo: "lab/mini".into(),
            rel_path: "run.py".into(),
            line_count: 10,
            rule_verdict: RuleVerdict::Kept,
            science_verdict: Judgement::Yes,
            dataset_label: Judgement::Yes,
            dataset_paths: datasets.iter().map(|s| s.to_string()).collect(),
            module_paths: modules.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn compact_workspace_holds_only_declared_files() {
        let (_d, snap) = fixture(&[
            ("run.py", 2_000),
            ("data/big.bin", 1_000_000),
            ("data/sub/more.csv", 10),
            ("assets/huge.bin", 9_000_000),
            ("lib/helper.py", 100),
        ]);
        let out = tempfile::tempdir().unwrap();
        let ws = build_workspace(&snap, &candidate(&["data/"], &["lib/helper.py"]), &out.path().join("ws")).unwrap();
        assert_eq!(ws.byte_size, 2_000 + 1_000_000 + 10 + 100);
        assert!(ws.byte_size < snap.total_bytes);
        let files = workspace_files(&ws).unwrap();
        assert_eq!(
            files,
            [
                "benchmark/datasets/Mini/data/big.bin",
                "benchmark/datasets/Mini/data/sub/more.csv",
                "benchmark/datasets/Mini/lib/helper.py",
                "benchmark/datasets/Mini/run.py",
            ]
        );
        assert!(ws.root.join("pred_results").is_dir());
        assert_eq!(ws.dataset_dir, "benchmark/datasets/Mini");
    }

    #[test]
    fn zero_dependencies() {
        let (_d, snap) = fixture(&[("run.py", 5), ("other.py", 5)]);
        let out = tempfile::tempdir().unwrap();
        let ws = build_workspace(&snap, &candidate(&[], &[]), &out.path().join("ws")).unwrap();
        assert_eq!(workspace_files(&ws).unwrap(), ["benchmark/datasets/Mini/run.py"]);
        assert_eq!(std::fs::read_dir(ws.root.join("pred_results")).unwrap().count(), 0);
    }

    #[test]
    fn traversal_is_rejected() {
        let (_d, snap) = fixture(&[("run.py", 5)]);
        let out = tempfile::tempdir().unwrap();
        for bad in ["../secret.txt", "/etc/passwd", "data/../../x"] {
            let err = build_workspace(&snap, &candidate(&[bad], &[]), &out.path().join("ws")).unwrap_err();
            assert!(matches!(err, Error::WorkspaceError(_)), "{bad}: {err}");
        }
    }

    #[cfg(unix)]
    #[test]
    fn symlinks_are_not_materialized() {
        let (d, mut snap) = fixture(&[("run.py", 5)]);
        std::os::unix::fs::symlink("/etc/hostname", d.path().join("link.txt")).unwrap();
        snap.file_tree.push(FileEntry { path: "link.txt".into(), size: 0 });
        snap.file_tree.sort_by(|a, b| a.path.cmp(&b.path));
        let out = tempfile::tempdir().unwrap();
        let ws = build_workspace(&snap, &candidate(&["link.txt"], &[]), &out.path().join("ws")).unwrap();
        assert_eq!(ws.copied_paths, ["run.py"]);
    }

    #[test]
    fn tree_rendering() {
        let ws = Workspace {
            root: "/w".into(),
            candidate: "t".into(),
            copied_paths: vec!["run.py".into(), "data/a.csv".into(), "data/b/c.csv".into()],
            byte_size: 0,
            dataset_dir: "benchmark/datasets/Mini".into(),
        };
        assert_eq!(
            render_tree(&ws),
            "benchmark/datasets/Mini/\n  data/\n    a.csv\n    b/\n      c.csv\n  run.py\n"
        );
    }
}
