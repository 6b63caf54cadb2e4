use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, ValueEnum};
use homcompat::formats::{attach_labels, emit_labels};
use homcompat::{emit_dimacs, emit_graph6, Graph, GraphFormat};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Graph6,
    Dimacs,
    Both,
}

#[derive(Debug, Args)]
pub struct GraphOutput {
    /// Path prefix for output files (`PREFIX.g6`, `PREFIX.dimacs`, `PREFIX.labels.json`).
    #[arg(long, value_name = "PREFIX", global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Both, global = true)]
    pub format: OutputFormat,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn labels_path(graph_path: &Path) -> PathBuf {
    graph_path.with_extension("labels.json")
}

/// Reads a graph6 or DIMACS file, attaching `<stem>.labels.json` if present.
pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = GraphFormat::detect(&path.to_string_lossy(), &text);
    let g = format.parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let sidecar = labels_path(path);
    if sidecar.exists() {
        let json = std::fs::read_to_string(&sidecar).with_context(|| format!("reading {}", sidecar.display()))?;
        return attach_labels(g, &json).with_context(|| format!("attaching {}", sidecar.display()));
    }
    Ok(g)
}

/// Writes the requested encodings plus the label sidecar; returns written paths.
pub fn write_graph(g: &Graph, out: &GraphOutput) -> anyhow::Result<Vec<String>> {
    let Some(prefix) = &out.out else {
        return Ok(Vec::new());
    };
    let mut files = Vec::new();
    let mut write = |path: PathBuf, body: String| -> anyhow::Result<()> {
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        files.push(path.display().to_string());
        Ok(())
    };
    if matches!(out.format, OutputFormat::Graph6 | OutputFormat::Both) {
        write(with_suffix(prefix, ".g6"), emit_graph6(g) + "\n")?;
    }
    if matches!(out.format, OutputFormat::Dimacs | OutputFormat::Both) {
        write(with_suffix(prefix, ".dimacs"), emit_dimacs(g) + "\n")?;
    }
    if let Some(labels) = emit_labels(g) {
        write(with_suffix(prefix, ".labels.json"), labels)?;
    }
    Ok(files)
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

/// Prints the report on stdout and, if asked, writes a copy to `out`.
pub fn emit_report<T: Serialize>(report: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let text = to_json(report);
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e).context("writing report"),
        _ => {}
    }
    if let Some(path) = out {
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
