use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use tracing::error;
use tracing_subscriber::EnvFilter;

use autosdt::config::{Overrides, PipelineConfig};
use autosdt::dataset::{compute_stats, read_corpus, render_stats};
use autosdt::llm::Mode;
use autosdt::pipeline::{Pipeline, Services};
use autosdt::{Error, Result};

#[derive(Parser)]
#[command(name = "autosdt", version, about = "Collect data-driven scientific coding tasks from code hosts")]
struct Cli {
    /// Pipeline configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// LLM mode: live, record or replay.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    state_dir: Option<PathBuf>,
    /// Repositories to drop from search results, one `owner/name` per line.
    #[arg(long, global = true)]
    exclude_file: Option<PathBuf>,
    /// Let candidate programs reach the network.
    #[arg(long, global = true)]
    allow_net: bool,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand keywords, query hosts and classify repositories.
    Search,
    /// Snapshot research repositories, filter files and build workspaces.
    Select,
    /// Adapt candidates, write instructions and emit tasks.
    Adapt,
    /// All stages, then statistics.
    Run,
    /// Corpus statistics for a run or a tasks file.
    Stats {
        /// Read this tasks.jsonl instead of the configured run.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required".into()))?;
    let mut config = PipelineConfig::load(path)?;
    config.apply(&Overrides {
        mode: cli.mode,
        out_dir: cli.out_dir.clone(),
        state_dir: cli.state_dir.clone(),
        exclude_file: cli.exclude_file.clone(),
        allow_net: cli.allow_net,
        workers: cli.workers,
    });
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<()> {
    if let Command::Stats { corpus: Some(path) } = &cli.command {
        let stats = compute_stats(&read_corpus(path)?, None)?;
        print!("{}", render_stats(&stats));
        return Ok(());
    }
    let config = load_config(cli)?;
    let interrupt = Arc::new(AtomicBool::new(false));
    for signal in [signal_hook::consts::SIGINT, signal_hook::consts::SIGTERM] {
        signal_hook::flag::register(signal, Arc::clone(&interrupt)).map_err(|e| Error::io("install signal handler", e))?;
    }
    let services = Services::from_config(&config)?;
    let mut pipeline = Pipeline::new(config, services, interrupt)?;
    match cli.command {
        Command::Search => print!("{}", pipeline.search()?),
        Command::Select => print!("{}", pipeline.select()?),
        Command::Adapt => print!("{}", pipeline.adapt()?),
        Command::Run => print!("{}", pipeline.run_all()?),
        Command::Stats { .. } => print!("{}", render_stats(&pipeline.stats()?)),
    }
    Ok(())
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
