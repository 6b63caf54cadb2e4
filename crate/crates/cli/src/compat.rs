use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use homcompat::hom::DEFAULT_ELEMENT_CAP;
use homcompat::{kneser_graph, CompatGraph, Graph, HomPoset, TuckerInstance};
use serde::Serialize;

use crate::io::{emit_report, read_graph, to_json, write_graph, GraphOutput};
use crate::Status;

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Host graph plus `r`, shared by `compat` and `verify`.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Use the Kneser graph KG(N, K) as host.
    #[arg(long, num_args = 2, value_names = ["N", "K"], required_unless_present = "host", conflicts_with = "host")]
    pub kneser: Option<Vec<usize>>,
    /// Host graph file (graph6 or DIMACS).
    #[arg(long, value_name = "FILE")]
    pub host: Option<PathBuf>,
    #[arg(long)]
    pub r: usize,
    /// Maximum number of poset elements to enumerate.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, value_parser = positive)]
    pub cap: usize,
}

pub struct Built {
    pub description: String,
    pub host: Graph,
    pub kneser: Option<(usize, usize)>,
    pub compat: CompatGraph,
    /// Vertices read by the Tucker labeling, when the host is KG(n, k) with n >= rk.
    pub binomial_core: Option<Vec<usize>>,
}

impl SourceArgs {
    pub fn build(&self) -> anyhow::Result<Built> {
        if let Some(nk) = &self.kneser {
            let (n, k) = (nk[0], nk[1]);
            let host = kneser_graph(n, k)?;
            let description = format!("KG({n},{k})");
            if k >= 1 && self.r >= 2 && n >= self.r * k {
                let inst = TuckerInstance::with_cap(n, k, self.r, self.cap)?;
                let core = inst.binomial_core()?;
                return Ok(Built {
                    description,
                    host,
                    kneser: Some((n, k)),
                    compat: inst.compat().clone(),
                    binomial_core: Some(core),
                });
            }
            let compat = CompatGraph::build(HomPoset::enumerate_with_cap(&host, self.r, self.cap)?);
            return Ok(Built { description, host, kneser: Some((n, k)), compat, binomial_core: None });
        }
        let path = self.host.as_ref().expect("clap enforces --kneser or --host");
        let host = read_graph(path)?;
        let compat = CompatGraph::build(HomPoset::enumerate_with_cap(&host, self.r, self.cap)?);
        Ok(Built { description: path.display().to_string(), host, kneser: None, compat, binomial_core: None })
    }
}

#[derive(Debug, Args)]
pub struct CompatArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    output: GraphOutput,
}

#[derive(Serialize)]
struct CompatReport {
    host: String,
    r: usize,
    poset_size: usize,
    vertex_count: usize,
    edge_count: usize,
    support_size_histogram: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
    files: Vec<String>,
}

pub fn run(args: CompatArgs) -> anyhow::Result<Status> {
    let built = args.source.build()?;
    let cg = &built.compat;
    let stats = cg.poset().stats();
    let warning = cg.poset().is_empty().then(|| {
        format!("Hom(K_{}, {}) is empty: the host has no K_{}", args.source.r, built.description, args.source.r)
    });
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    let mut files = write_graph(cg.graph(), &args.output)?;
    let mut report = CompatReport {
        host: built.description.clone(),
        r: args.source.r,
        poset_size: stats.element_count,
        vertex_count: cg.vertex_count(),
        edge_count: cg.graph().edge_count(),
        support_size_histogram: stats.size_histogram,
        warning,
        files: Vec::new(),
    };
    if let Some(prefix) = &args.output.out {
        let mut path = prefix.as_os_str().to_owned();
        path.push(".stats.json");
        let path = PathBuf::from(path);
        std::fs::write(&path, to_json(&report) + "\n").with_context(|| format!("writing {}", path.display()))?;
        files.push(path.display().to_string());
    }
    report.files = files;
    emit_report(&report, None)?;
    Ok(Status::Ok)
}
