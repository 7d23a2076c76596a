#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use autosdt::config::PipelineConfig;
use autosdt::llm::Mode;
use autosdt::model::{Host, RepoRef, ResearchVerdict};
use autosdt::pipeline::{Pipeline, Services};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_config_path() -> PathBuf {
    fixtures().join("pipeline.toml")
}

/// Replay-mode fixture configuration writing under `out`.
pub fn fixture_config(out: &Path) -> PipelineConfig {
    let mut config = PipelineConfig::load(&fixture_config_path()).expect("fixture config");
    config.mode = Mode::Replay;
    config.paths.out_dir = Some(out.to_path_buf());
    config
}

pub fn fixture_pipeline(out: &Path) -> autosdt::Result<Pipeline> {
    let config = fixture_config(out);
    let services = Services::from_config(&config)?;
    Pipeline::new(config, services, Arc::new(AtomicBool::new(false)))
}

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autosdt"))
        .args(args)
        .env("RUST_LOG", "warn")
        .env_remove("AUTOSDT_LLM_BASE_URL")
        .env_remove("AUTOSDT_LLM_API_KEY")
        .env_remove("AUTOSDT_GITHUB_TOKEN")
        .output()
        .expect("spawn autosdt")
}

/// `autosdt run --mode replay` on the fixtures into `out`.
pub fn replay_run(out: &Path) -> Output {
    let config = fixture_config_path();
    cli(&[
        "--config",
        config.to_str().unwrap(),
        "--mode",
        "replay",
        "--out-dir",
        out.to_str().unwrap(),
        "run",
    ])
}

pub fn repo(owner: &str, name: &str) -> RepoRef {
    RepoRef {
        host: Host::Github,
        owner: owner.into(),
        name: name.into(),
        url: format!("https://github.com/{owner}/{name}"),
        stars: 10,
        primary_language: "Python".into(),
        discipline_ids: Vec::new(),
        found_by_queries: Vec::new(),
        research_verdict: ResearchVerdict::Unjudged,
        paper_links: Vec::new(),
        license_id: None,
        classification: None,
    }
}
