use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, Subcommand};
use homcompat::{complete_graph, cycle_graph, emit_graph6, kneser_graph, mycielskian, Graph};
use serde::Serialize;

use crate::io::{emit_report, read_graph, write_graph, GraphOutput};
use crate::Status;

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[command(flatten)]
    output: GraphOutput,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Kneser graph KG(n, k).
    Kneser {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Complete graph K_m.
    Complete {
        #[arg(long)]
        m: usize,
    },
    /// Cycle C_m.
    Cycle {
        #[arg(long)]
        m: usize,
    },
    /// Iterated Mycielskian of an input graph.
    Mycielski {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
}

#[derive(Serialize)]
struct GenReport {
    kind: &'static str,
    vertex_count: usize,
    edge_count: usize,
    graph6: String,
    files: Vec<String>,
}

pub fn run(args: GenArgs) -> anyhow::Result<Status> {
    let (kind, g): (&'static str, Graph) = match &args.kind {
        GenKind::Kneser { n, k } => ("kneser", kneser_graph(*n, *k)?),
        GenKind::Complete { m } => ("complete", complete_graph(*m)?),
        GenKind::Cycle { m } => ("cycle", cycle_graph(*m)?),
        GenKind::Mycielski { input, iterations } => {
            if *iterations == 0 {
                bail!("--iterations must be positive");
            }
            let mut g = read_graph(input)?;
            for _ in 0..*iterations {
                g = mycielskian(&g);
            }
            ("mycielski", g)
        }
    };
    let files = write_graph(&g, &args.output)?;
    let report = GenReport {
        kind,
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        graph6: emit_graph6(&g),
        files,
    };
    emit_report(&report, None)?;
    Ok(Status::Ok)
}
