use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::error::{Error, IoContext, Result};
use crate::model::RepoRef;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub path: String,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoSnapshot {
    pub repo: String,
    /// Repository name with its original casing; names the workspace dataset directory.
    pub repo_name: String,
    pub local_root: PathBuf,
    pub file_tree: Vec<FileEntry>,
    pub total_bytes: u64,
}

impl RepoSnapshot {
    pub fn from_dir(repo: &RepoRef, root: &Path) -> Result<Self> {
        let file_tree = walk_tree(root)?;
        Ok(Self {
            repo: repo.key(),
            repo_name: repo.name.trim().to_string(),
            local_root: root.to_path_buf(),
            total_bytes: file_tree.iter().map(|f| f.size).sum(),
            file_tree,
        })
    }

    pub fn contains_file(&self, rel: &str) -> bool {
        self.file_tree.binary_search_by(|f| f.path.as_str().cmp(rel)).is_ok()
    }
}

/// Every regular file under `root` except version-control metadata, as sorted
/// `/`-separated relative paths. Symbolic links are not followed or listed.
pub fn walk_tree(root: &Path) -> Result<Vec<FileEntry>> {
    let mut files = Vec::new();
    let walker = WalkDir::new(root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| e.depth() == 0 || e.file_name() != ".git");
    for entry in walker {
        let entry = entry.map_err(|e| {
            Error::io(
                format!("walk {}", root.display()),
                e.into_io_error().unwrap_or_else(|| std::io::Error::other("walk failed")),
            )
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .map_err(|_| Error::WorkspaceError(format!("{} escapes {}", entry.path().display(), root.display())))?;
        let rel = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        let size = entry.metadata().map(|m| m.len()).unwrap_or(0);
        files.push(FileEntry { path: rel, size });
    }
    files.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(files)
}

pub trait SnapshotSource: Send + Sync {
    /// Materializes the default-branch working tree of `repo` at `dest`.
    fn snapshot(&self, repo: &RepoRef, dest: &Path) -> Result<RepoSnapshot>;
}

fn reset_dir(dest: &Path) -> Result<()> {
    if dest.exists() {
        std::fs::remove_dir_all(dest).with_path("clear snapshot dir", dest)?;
    }
    if let Some(parent) = dest.parent() {
        std::fs::create_dir_all(parent).with_path("create snapshot parent", parent)?;
    }
    Ok(())
}

/// Shallow clone through the `git` client.
#[derive(Debug, Clone)]
pub struct GitSnapshotter {
    pub git: String,
}

impl Default for GitSnapshotter {
    fn default() -> Self {
        Self { git: "git".into() }
    }
}

impl SnapshotSource for GitSnapshotter {
    fn snapshot(&self, repo: &RepoRef, dest: &Path) -> Result<RepoSnapshot> {
        reset_dir(dest)?;
        let output = Command::new(&self.git)
            .args(["clone", "--depth", "1", "--single-branch", "--quiet", "--no-tags"])
            .arg(&repo.url)
            .arg(dest)
            .env("GIT_TERMINAL_PROMPT", "0")
            .output()
            .map_err(|e| Error::CloneFailed {
                url: repo.url.clone(),
                reason: format!("cannot run {}: {e}", self.git),
            })?;
        if !output.status.success() {
            let stderr = String::from_utf8_lossy(&output.stderr).trim().to_string();
            let _ = std::fs::remove_dir_all(dest);
            if stderr.contains("Repository not found") || stderr.contains("HTTP 451") {
                return Err(Error::Gone(repo.key()));
            }
            return Err(Error::CloneFailed {
                url: repo.url.clone(),
                reason: stderr,
            });
        }
        RepoSnapshot::from_dir(repo, dest)
    }
}

/// Copies plain directory trees laid out as `<root>/<owner>__<name>`; used for
/// `file://` fixture roots.
#[derive(Debug, Clone)]
pub struct DirectorySnapshotter {
    pub root: PathBuf,
}

impl DirectorySnapshotter {
    pub fn from_url(url: &str) -> Result<Self> {
        let path = url
            .strip_prefix("file://")
            .ok_or_else(|| Error::Config(format!("snapshot root `{url}` is not a file:// URL")))?;
        Ok(Self { root: PathBuf::from(path) })
    }

    pub fn source_dir(&self, repo: &RepoRef) -> PathBuf {
        self.root.join(format!("{}__{}", repo.owner.trim(), repo.name.trim()))
    }
}

impl SnapshotSource for DirectorySnapshotter {
    fn snapshot(&self, repo: &RepoRef, dest: &Path) -> Result<RepoSnapshot> {
        let source = self.source_dir(repo);
        if !source.is_dir() {
            return Err(Error::Gone(repo.key()));
        }
        reset_dir(dest)?;
        std::fs::create_dir_all(dest).with_path("create snapshot", dest)?;
        for file in walk_tree(&source)? {
            let from = source.join(&file.path);
            let to = dest.join(&file.path);
            if let Some(parent) = to.parent() {
                std::fs::create_dir_all(parent).with_path("create dir", parent)?;
            }
            std::fs::copy(&from, &to).map_err(|e| Error::CloneFailed {
                url: repo.url.clone(),
                reason: format!("copy {}: {e}", from.display()),
            })?;
        }
        RepoSnapshot::from_dir(repo, dest)
    }
}
