use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use homcompat::solvers::DEFAULT_NODE_BUDGET;
use homcompat::{
    check_proper, clique_number, exact_chromatic_number, girth, kneser_canonical_coloring, pullback_coloring,
    ChromaticOptions, ChromaticOutcome, Coloring, Girth, SearchProgress,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::compat::{Built, SourceArgs};
use crate::io::emit_report;
use crate::Status;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Require this exact chromatic number.
    #[arg(long)]
    expect_chi: Option<usize>,
    /// Require this exact clique number (the clique <= r check always runs).
    #[arg(long)]
    expect_clique: Option<usize>,
    /// Compute the chromatic number without an expectation.
    #[arg(long)]
    chi: bool,
    /// Check that the pullback of a host coloring is proper.
    #[arg(long)]
    pullback: bool,
    /// Report the girth of the compatibility graph.
    #[arg(long)]
    girth: bool,
    /// Node budget for the exact chromatic search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Include wall-clock times (makes reports non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
    Info,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: CheckStatus,
    detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct VerifyReport {
    host: String,
    r: usize,
    poset_size: usize,
    vertex_count: usize,
    edge_count: usize,
    checks: Vec<Check>,
    status: CheckStatus,
}

fn pass_if(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn host_coloring(built: &Built, budget: u64) -> anyhow::Result<Option<Coloring>> {
    if let Some((n, k)) = built.kneser {
        return Ok(Some(kneser_canonical_coloring(n, k)?));
    }
    let res = exact_chromatic_number(&built.host, ChromaticOptions { node_budget: budget, ..Default::default() });
    Ok(res.exact().map(|_| res.witness().clone()))
}

pub fn run(args: VerifyArgs) -> anyhow::Result<Status> {
    let r = args.source.r;
    let built = args.source.build()?;
    let g = built.compat.graph();
    if built.compat.poset().is_empty() {
        eprintln!("warning: the Hom poset is empty; checks are vacuous");
    }
    let mut checks = Vec::new();
    let mut timed = |name: &'static str, f: &mut dyn FnMut() -> anyhow::Result<(CheckStatus, Value)>| {
        let start = Instant::now();
        let (status, detail) = f()?;
        let elapsed_ms = args.timing.then(|| start.elapsed().as_millis());
        checks.push(Check { name, status, detail, elapsed_ms });
        anyhow::Ok(())
    };

    timed("clique", &mut || {
        let res = clique_number(g, None);
        let mut ok = res.size <= r;
        if let Some(want) = args.expect_clique {
            ok &= res.size == want;
        }
        Ok((pass_if(ok), json!({"clique_number": res.size, "at_most": r, "expected": args.expect_clique, "witness": res.witness})))
    })?;

    if args.chi || args.expect_chi.is_some() {
        timed("chromatic", &mut || {
            let mut report_progress = |p: SearchProgress| eprintln!("progress: trying {} colors, {} nodes", p.colors, p.nodes);
            let res = exact_chromatic_number(
                g,
                ChromaticOptions {
                    node_budget: args.budget,
                    core: built.binomial_core.clone(),
                    progress: Some(&mut report_progress),
                    ..Default::default()
                },
            );
            let mut detail = json!({
                "expected": args.expect_chi,
                "clique_number": res.clique_number,
                "greedy_upper": res.greedy_upper,
                "nodes": res.nodes,
                "core_refuted": res.core_refuted,
            });
            let status = match res.outcome {
                ChromaticOutcome::Exact { chromatic_number, ref witness } => {
                    check_proper(g, witness)?;
                    detail["chromatic_number"] = json!(chromatic_number);
                    let mut ok = args.expect_chi.is_none_or(|want| want == chromatic_number);
                    if let (Some((n, k)), false) = (built.kneser, built.compat.poset().is_empty()) {
                        // Tucker lower bound and pullback upper bound
                        let lower = n as isize - (r * (k - 1)) as isize;
                        let upper = n as isize - 2 * k as isize + 2;
                        let within = lower <= chromatic_number as isize && chromatic_number as isize <= upper;
                        detail["kneser_bounds"] = json!({"lower": lower, "upper": upper, "within": within});
                        ok &= within;
                    }
                    pass_if(ok)
                }
                ChromaticOutcome::Inconclusive { lower, upper, .. } => {
                    detail["bracket"] = json!([lower, upper]);
                    match args.expect_chi {
                        Some(want) if want < lower || want > upper => CheckStatus::Fail,
                        _ => CheckStatus::Inconclusive,
                    }
                }
            };
            Ok((status, detail))
        })?;
    }

    if args.pullback {
        timed("pullback", &mut || match host_coloring(&built, args.budget)? {
            Some(host) => {
                let pulled = pullback_coloring(&built.compat, &host)?;
                let conflict = check_proper(g, &pulled).err().map(|e| e.to_string());
                Ok((
                    pass_if(conflict.is_none()),
                    json!({"host_colors": host.color_count(), "conflict": conflict}),
                ))
            }
            None => Ok((CheckStatus::Inconclusive, json!({"reason": "host coloring search exhausted its budget"}))),
        })?;
    }

    if args.girth {
        timed("girth", &mut || {
            let value = match girth(g) {
                Girth::Acyclic => Value::Null,
                Girth::Cycle(len) => json!(len),
            };
            Ok((CheckStatus::Info, json!({"girth": value})))
        })?;
    }

    let status = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if checks.iter().any(|c| c.status == CheckStatus::Inconclusive) {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Pass
    };
    let report = VerifyReport {
        host: built.description.clone(),
        r,
        poset_size: built.compat.poset().len(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        checks,
        status,
    };
    emit_report(&report, args.out.as_deref())?;
    Ok(match status {
        CheckStatus::Fail => Status::Fail,
        CheckStatus::Inconclusive => Status::Inconclusive,
        _ => Status::Ok,
    })
}
