//! Regenerates `fixtures/llm_cache` by running the fixture pipeline in record
//! mode against a scripted model. Run with
//! `cargo run -p autosdt --example record_fixtures [out_dir]`.

use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use autosdt::config::PipelineConfig;
use autosdt::llm::{Mode, Recording, ScriptedProvider};
use autosdt::pipeline::{Pipeline, Services};

const RECORDED_AT: &str = "2025-03-14T09:30:00Z";

const RWR_ADAPTED: &str = r#"import os

import numpy as np

from lib.rwr_core import random_walk_with_restart

DATA_DIR = "benchmark/datasets/circrna-rwr/data"
N_CIRC = 3

adj = np.loadtxt(os.path.join(DATA_DIR, "adjacency.csv"), delimiter=",")
with open(os.path.join(DATA_DIR, "labels.txt")) as fh:
    labels = [line.strip() for line in fh if line.strip()]

os.makedirs("pred_results", exist_ok=True)
with open("pred_results/pred_rwr_scores.csv", "w") as out:
    out.write("circrna,disease,score\n")
    for i in range(N_CIRC):
        scores = random_walk_with_restart(adj, i)
        for j in range(N_CIRC, len(labels)):
            out.write(f"{labels[i]},{labels[j]},{scores[j]:.6f}\n")
"#;

const BUTINA_HEAD: &str = r#"import csv
import os
import sys

import numpy as np

DATA = "benchmark/datasets/butina-cluster/data/fingerprints.csv"


def tanimoto_matrix(fps):
    inter = fps @ fps.T
    counts = fps.sum(axis=1)
    union = counts[:, None] + counts[None, :] - inter
    return 1.0 - inter / np.maximum(union, 1)


def butina(dist, cutoff):
    n = dist.shape[0]
    neighbours = [set(np.where(dist[i] <= cutoff)[0]) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-len(neighbours[i]), i))
    assigned = set()
    clusters = []
    for i in order:
        if i in assigned:
            continue
        members = sorted(m for m in neighbours[i] if m not in assigned)
        assigned.update(members)
        clusters.append((i, members))
    return clusters


with open(DATA) as fh:
    rows = list(csv.DictReader(fh))
"#;

const BUTINA_FIRST_TAIL: &str = r#"if "fingerprint" not in rows[0]:
    sys.exit("error: column 'fingerprint' not found in fingerprints.csv")
names = [r["compound"] for r in rows]
fps = np.array([[int(c) for c in r["fingerprint"]] for r in rows], dtype=float)

os.makedirs("pred_results", exist_ok=True)
with open("pred_results/pred_butina.csv", "w") as out:
    out.write("cluster,centroid,members\n")
    for k, (centroid, members) in enumerate(butina(tanimoto_matrix(fps), 0.35)):
        out.write(f"{k},{names[centroid]},{' '.join(names[m] for m in members)}\n")
"#;

const BUTINA_FIXED_TAIL: &str = r#"names = [r["compound"] for r in rows]
fps = np.array([[int(c) for c in r["bits"]] for r in rows], dtype=float)

os.makedirs("pred_results", exist_ok=True)
with open("pred_results/pred_butina.csv", "w") as out:
    out.write("cluster,centroid,members\n")
    for k, (centroid, members) in enumerate(butina(tanimoto_matrix(fps), 0.35)):
        out.write(f"{k},{names[centroid]},{' '.join(names[m] for m in members)}\n")
"#;

const STROKE_ADAPTED: &str = r#"import json
import os
from collections import defaultdict

import numpy as np

DATA_DIR = "benchmark/datasets/stroke-volume/data"

with open(os.path.join(DATA_DIR, "voxel_size.json")) as fh:
    vs = json.load(fh)
voxel_ml = vs["x_mm"] * vs["y_mm"] * vs["z_mm"] / 1000.0

counts = defaultdict(int)
data = np.genfromtxt(
    os.path.join(DATA_DIR, "lesion_voxels.csv"), delimiter=",", names=True, dtype=None, encoding="utf-8"
)
for row in data:
    counts[row["subject"]] += int(row["label"])

os.makedirs("pred_results", exist_ok=True)
with open("pred_results/pred_lesion_volume.csv", "w") as out:
    out.write("subject,lesion_volume_ml\n")
    for subject in sorted(counts):
        out.write(f"{subject},{counts[subject] * voxel_ml:.3f}\n")
"#;

fn drone_attempt(input: &str) -> String {
    format!(
        r#"import os
import sys

import numpy as np

from geo_transform import fit_similarity

DRONE = "{input}"
SAT = "benchmark/datasets/drone-match/data/sat_kp.csv"

if not os.path.exists(DRONE):
    sys.exit(f"input not found: {{DRONE}}")
drone = np.loadtxt(DRONE, delimiter=",", skiprows=1)
sat = np.loadtxt(SAT, delimiter=",", skiprows=1)
scale, shift = fit_similarity(drone, sat[: len(drone)])
projected = drone * scale + shift
d = np.linalg.norm(projected[:, None, :] - sat[None, :, :], axis=2)
os.makedirs("pred_results", exist_ok=True)
with open("pred_results/pred_match.txt", "w") as out:
    out.write(f"matches: {{d.argmin(axis=1).tolist()}}\n")
"#
    )
}

fn fenced(code: &str) -> String {
    format!("Here is the standalone program.\n\n```python\n{code}```\n")
}

fn line_after<'a>(prompt: &'a str, label: &str) -> &'a str {
    prompt
        .split_once(label)
        .and_then(|(_, rest)| rest.lines().map(str::trim).find(|l| !l.is_empty()))
        .unwrap_or_default()
}

fn keyword_reply(prompt: &str) -> String {
    let keywords = match line_after(prompt, "Discipline: ") {
        "Bioinformatics" => "circular RNA, random walk with restart, disease association",
        "Computational Chemistry" => "Butina, Tanimoto similarity, compound library",
        "Geographical Information Science" => "UAV localisation, satellite tile, keypoint matching",
        _ => "lesion volumetry, MRI, stroke",
    };
    format!("KEYWORDS: [{keywords}]")
}

fn crawl_reply(prompt: &str) -> String {
    let link = if prompt.contains("# Awesome circRNA") {
        return "RESEARCH: NO\nLINKS: []".into();
    } else if prompt.contains("# circrna-rwr") {
        "https://doi.org/10.1000/circrna.rwr.2021"
    } else if prompt.contains("# butina-cluster") {
        "https://doi.org/10.1021/ci9803381"
    } else if prompt.contains("# drone-match") {
        "https://arxiv.org/abs/2203.00001"
    } else {
        "https://doi.org/10.1000/stroke.vol.2022"
    };
    format!("RESEARCH: YES\nLINKS: [{link}]")
}

fn sci_reply(prompt: &str) -> String {
    let name = line_after(prompt, "Program name: ");
    let yes = matches!(name, "rwr_scores.py" | "butina.py" | "match.py" | "lesion_volume.py");
    format!(
        "The program {} a dataset and reports analysis results.\nVERDICT: {}",
        if yes { "loads" } else { "does not load" },
        if yes { "YES" } else { "NO" }
    )
}

fn dep_reply(prompt: &str) -> String {
    let code = prompt.split_once("Python code: ").map_or("", |(_, c)| c);
    if code.contains("random_walk_with_restart") {
        "DATASET_LABEL: Yes\nDATASET_PATHS: [data/adjacency.csv, data/labels.txt]\nMODULE_LABEL: Yes\nMODULE_PATHS: [lib]".into()
    } else if code.contains("tanimoto_matrix") {
        "DATASET_LABEL: Yes\nDATASET_PATHS: [data/fingerprints.csv]\nMODULE_LABEL: No\nMODULE_PATHS: []".into()
    } else if code.contains("fit_similarity") {
        "DATASET_LABEL: Yes\nDATASET_PATHS: [data/drone_kp.csv, data/sat_kp.csv]\nMODULE_LABEL: Yes\nMODULE_PATHS: [./geo_transform.py]".into()
    } else {
        // the second dataset path does not exist in the tree and is dropped
        "DATASET_LABEL: Yes\nDATASET_PATHS: [stroke-volume/data/lesion_voxels.csv, data/voxel_size.json, data/missing.csv]\nMODULE_LABEL: No".into()
    }
}

fn adapt_reply(prompt: &str) -> String {
    let file = line_after(prompt, "Code to be modified:\n");
    let iteration = prompt
        .split_once("Execution feedback from iteration ")
        .and_then(|(_, rest)| rest.split(' ').next())
        .and_then(|n| n.parse::<u32>().ok())
        .map_or(1, |n| n + 1);
    match (file, iteration) {
        ("rwr_scores.py", _) => fenced(RWR_ADAPTED),
        ("butina.py", 1) => fenced(&format!("{BUTINA_HEAD}{BUTINA_FIRST_TAIL}")),
        ("butina.py", _) => fenced(&format!("{BUTINA_HEAD}{BUTINA_FIXED_TAIL}")),
        ("match.py", 1) => fenced(&drone_attempt("benchmark/datasets/drone-match/data/drone_keypoints.csv")),
        ("match.py", 2) => fenced(&drone_attempt("data/drone_kp.csv")),
        ("match.py", _) => fenced(&drone_attempt("benchmark/datasets/drone-match/drone_kp.csv")),
        _ => fenced(STROKE_ADAPTED),
    }
}

fn instruct_reply(prompt: &str) -> String {
    if prompt.contains("random_walk_with_restart") {
        "Prioritise candidate circRNA-disease associations by running a random walk with restart on the \
         heterogeneous network given as an adjacency matrix in adjacency.csv, with node names listed in \
         labels.txt (the first three nodes are circRNAs, the rest diseases). Use each circRNA as the restart \
         node with restart probability 0.7 and record the stationary probability reached at every disease node. \
         Save the scores to pred_results/pred_rwr_scores.csv with columns circrna, disease and score."
            .into()
    } else if prompt.contains("tanimoto_matrix") {
        "Cluster the compound library in fingerprints.csv, which holds one binary fingerprint string per \
         compound, with the Butina algorithm using Tanimoto distance and a distance cutoff of 0.35. Write one \
         row per cluster to pred_results/pred_butina.csv with the cluster index, the centroid compound and the \
         space-separated member compounds."
            .into()
    } else if prompt.contains("The instruction must name the exact files involved.") {
        "Compute the stroke lesion volume of every subject from the voxel-wise lesion labels in \
         lesion_voxels.csv, converting voxel counts to millilitres with the voxel dimensions given in \
         voxel_size.json. Save one row per subject to pred_results/pred_lesion_volume.csv with columns subject \
         and lesion_volume_ml."
            .into()
    } else {
        "Compute the stroke lesion volume of every subject from the voxel-wise lesion labels and save the \
         per-subject volumes in millilitres to pred_results/pred_lesion_volume.csv."
            .into()
    }
}

fn reply(prompt: &str) -> String {
    if prompt.starts_with("You are an expert research librarian") {
        keyword_reply(prompt)
    } else if prompt.starts_with("You are an expert at reading GitHub README") {
        crawl_reply(prompt)
    } else if prompt.starts_with("You are an expert at determining whether a program") {
        sci_reply(prompt)
    } else if prompt.starts_with("You are an expert software engineer") {
        dep_reply(prompt)
    } else if prompt.starts_with("You are an excellent coder") {
        adapt_reply(prompt)
    } else {
        instruct_reply(prompt)
    }
}

/// Pins `recorded_at` so replayed provenance does not depend on when recording happened.
fn pin_timestamps(cache: &Path) -> autosdt::Result<usize> {
    let mut n = 0;
    for entry in std::fs::read_dir(cache).map_err(|e| autosdt::Error::io("list cache", e))? {
        let path = entry.map_err(|e| autosdt::Error::io("list cache", e))?.path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let bytes = std::fs::read(&path).map_err(|e| autosdt::Error::io_path("read", &path, e))?;
        let mut rec: Recording = serde_json::from_slice(&bytes)?;
        rec.recorded_at = RECORDED_AT.into();
        let mut text = serde_json::to_vec_pretty(&rec)?;
        text.push(b'\n');
        std::fs::write(&path, text).map_err(|e| autosdt::Error::io_path("write", &path, e))?;
        n += 1;
    }
    Ok(n)
}

fn main() -> autosdt::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let cache = fixtures.join("llm_cache");
    let _ = std::fs::remove_dir_all(&cache);
    let scratch = tempfile::tempdir().map_err(|e| autosdt::Error::io("create scratch dir", e))?;

    let mut config = PipelineConfig::load(&fixtures.join("pipeline.toml"))?;
    config.mode = Mode::Record;
    // an optional argument keeps the run's artifacts for inspection
    let out_dir = std::env::args().nth(1).map_or_else(|| scratch.path().join("out"), PathBuf::from);
    config.paths.out_dir = Some(out_dir);
    let provider = Arc::new(ScriptedProvider::from_text(reply));
    let services = Services::with_provider(&config, Some(provider.clone()))?;
    let mut pipeline = Pipeline::new(config, services, Arc::new(AtomicBool::new(false)))?;
    let summary = pipeline.run_all()?;
    print!("{summary}");
    let n = pin_timestamps(&cache)?;
    println!("{} provider calls, {n} recordings in {}", provider.call_count(), cache.display());
    Ok(())
}
