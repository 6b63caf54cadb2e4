use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Subcommand, ValueEnum};
use homcompat::hom::DEFAULT_ELEMENT_CAP;
use homcompat::solvers::DEFAULT_NODE_BUDGET;
use homcompat::tucker::{DEFAULT_SWEEP_CAP, LABELING_EXPORT_CAP};
use homcompat::{
    check_equivariance, exact_chromatic_number, find_bad_pair, random_coloring, random_equivariant_labeling,
    refute_or_certify, support_labeling, ChromaticOptions, Coloring, TieBreak, TuckerInstance, TuckerParams,
    Verdict, VectorSpace,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{emit_report, to_json};
use crate::Status;

#[derive(Debug, Subcommand)]
pub enum TuckerCommand {
    /// Build λ from a coloring and search for a bad pair.
    Refute(RefuteArgs),
    /// Random equivariant labelings below level n: count those with a bad pair.
    Stress(StressArgs),
    /// Exhaustively check that λ is equivariant.
    Equivariance(LambdaArgs),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringChoice {
    /// Pullback of the canonical Kneser coloring.
    Pullback,
    /// Witness of the exact chromatic search.
    Exact,
    /// Uniform random colors `1..=C` from `--seed`.
    Random(usize),
    /// Every vertex gets color 1.
    Constant,
}

impl FromStr for ColoringChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pullback" => Ok(Self::Pullback),
            "exact" => Ok(Self::Exact),
            "constant" => Ok(Self::Constant),
            _ => match s.strip_prefix("random:").map(str::parse::<usize>) {
                Some(Ok(c)) if c >= 1 => Ok(Self::Random(c)),
                _ => Err(format!("expected pullback, exact, constant, or random:C with C >= 1, got {s:?}")),
            },
        }
    }
}

impl ColoringChoice {
    fn name(&self) -> String {
        match self {
            Self::Pullback => "pullback".into(),
            Self::Exact => "exact".into(),
            Self::Random(c) => format!("random:{c}"),
            Self::Constant => "constant".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    LexLeast,
    SmallestShift,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::LexLeast => TieBreak::LexLeast,
            TieBreakArg::SmallestShift => TieBreak::SmallestShift,
        }
    }
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "pullback")]
    coloring: ColoringChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TieBreakArg::LexLeast)]
    tie_break: TieBreakArg,
    /// Maximum number of signed vectors to sweep.
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    sweep_cap: u64,
    /// Maximum number of Hom poset elements.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    /// Node budget for `--coloring exact`.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RefuteArgs {
    #[command(flatten)]
    lambda: LambdaArgs,
    /// Write the full labeling as a JSON table.
    #[arg(long, value_name = "FILE")]
    export_labeling: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StressArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Largest level drawn; defaults to n - 1.
    #[arg(long)]
    max_level: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Trial i uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    sweep_cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn check_sweep(cap: u64) -> anyhow::Result<()> {
    if cap == 0 {
        bail!("--sweep-cap must be positive");
    }
    Ok(())
}

struct Prepared {
    inst: TuckerInstance,
    coloring: Coloring,
}

impl LambdaArgs {
    fn prepare(&self) -> anyhow::Result<Prepared> {
        check_sweep(self.sweep_cap)?;
        // fail fast on the vector sweep before enumerating the poset
        VectorSpace::new(self.n, self.r, self.sweep_cap)?;
        if self.cap == 0 {
            bail!("--cap must be positive");
        }
        let inst = TuckerInstance::with_cap(self.n, self.k, self.r, self.cap)?;
        let len = inst.compat().vertex_count();
        let coloring = match self.coloring {
            ColoringChoice::Pullback => inst.pullback_coloring()?,
            ColoringChoice::Constant => Coloring::new(vec![1; len], 1)?,
            ColoringChoice::Random(c) => random_coloring(len, c, self.seed)?,
            ColoringChoice::Exact => {
                let mut report = |p: homcompat::SearchProgress| {
                    eprintln!("progress: trying {} colors, {} nodes", p.colors, p.nodes)
                };
                let res = exact_chromatic_number(
                    inst.compat().graph(),
                    ChromaticOptions {
                        node_budget: self.budget,
                        core: Some(inst.binomial_core()?),
                        progress: Some(&mut report),
                        ..Default::default()
                    },
                );
                if res.exact().is_none() {
                    bail!("exact coloring search inconclusive, bracket {:?}", res.bracket());
                }
                res.witness().clone()
            }
        };
        Ok(Prepared { inst, coloring })
    }

    fn parameters(&self, colors: usize, vertices: usize) -> Value {
        json!({
            "n": self.n, "k": self.k, "r": self.r,
            "coloring": self.coloring.name(),
            "colors": colors,
            "seed": self.seed,
            "tie_break": TieBreak::from(self.tie_break),
            "compat_vertices": vertices,
        })
    }
}

#[derive(Serialize)]
struct RefuteReport {
    parameters: Value,
    verdict: &'static str,
    bound: Option<Value>,
    certificate: Option<Value>,
    anomaly: Option<Value>,
}

fn refute(args: RefuteArgs) -> anyhow::Result<Status> {
    let a = &args.lambda;
    let prep = a.prepare()?;
    let params = TuckerParams::new(&prep.inst, &prep.coloring)?.with_tie_break(a.tie_break.into());
    if let Some(path) = &args.export_labeling {
        let table = params.labeling(a.sweep_cap.min(LABELING_EXPORT_CAP))?.export()?;
        std::fs::write(path, to_json(&table) + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let verdict = refute_or_certify(&params, a.sweep_cap)?;
    let mut report = RefuteReport {
        parameters: a.parameters(prep.coloring.color_count(), prep.inst.compat().vertex_count()),
        verdict: verdict.name(),
        bound: None,
        certificate: None,
        anomaly: None,
    };
    match verdict {
        Verdict::NoBadPair { bound } => report.bound = Some(json!(bound)),
        Verdict::Case3BadPair { pair, certificate } => {
            report.certificate = Some(json!({
                "x": pair.x, "y": pair.y, "g": pair.g,
                "label_x": pair.label_x, "label_y": pair.label_y,
                "edge": certificate.edge,
                "color": certificate.color,
                "elements": certificate.elements,
            }))
        }
        Verdict::AnomalousBadPair { pair, case_x, case_y, rk_minus_1 } => {
            report.anomaly = Some(json!({
                "x": pair.x, "y": pair.y, "g": pair.g,
                "label_x": pair.label_x, "label_y": pair.label_y,
                "case_x": case_x, "case_y": case_y,
                "rk_minus_1": rk_minus_1,
            }))
        }
    }
    emit_report(&report, a.out.as_deref())?;
    Ok(Status::Ok)
}

fn equivariance(a: LambdaArgs) -> anyhow::Result<Status> {
    let prep = a.prepare()?;
    let params = TuckerParams::new(&prep.inst, &prep.coloring)?.with_tie_break(a.tie_break.into());
    let labeling = params.labeling(a.sweep_cap)?;
    let violation = check_equivariance(&labeling);
    let report = json!({
        "parameters": a.parameters(prep.coloring.color_count(), prep.inst.compat().vertex_count()),
        "vectors_checked": labeling.space().codes() - 1,
        "equivariant": violation.is_none(),
        "counterexample": violation,
    });
    emit_report(&report, a.out.as_deref())?;
    Ok(if violation.is_none() { Status::Ok } else { Status::Fail })
}

fn stress(a: StressArgs) -> anyhow::Result<Status> {
    check_sweep(a.sweep_cap)?;
    let space = VectorSpace::new(a.n, a.r, a.sweep_cap)?;
    let max_level = a.max_level.unwrap_or(a.n.saturating_sub(1));
    if max_level == 0 {
        bail!("--max-level must be positive");
    }
    let mut with_pair = 0u64;
    let mut misses = Vec::new();
    for i in 0..a.trials {
        let seed = a.seed.wrapping_add(i);
        let lab = random_equivariant_labeling(space, max_level, seed)?;
        match find_bad_pair(&lab)? {
            Some(_) => with_pair += 1,
            None => misses.push(seed),
        }
    }
    let explicit = support_labeling(space);
    let explicit_pair = find_bad_pair(&explicit)?;
    let forced = max_level < a.n;
    let report = json!({
        "parameters": {"n": a.n, "r": a.r, "max_level": max_level, "trials": a.trials, "seed": a.seed},
        "bad_pairs": with_pair,
        "seeds_without_bad_pair": misses,
        "lemma_applies": forced,
        "support_labeling": {"max_level": explicit.max_level(), "bad_pair": explicit_pair},
    });
    emit_report(&report, a.out.as_deref())?;
    Ok(if forced && with_pair != a.trials { Status::Fail } else { Status::Ok })
}

pub fn run(cmd: TuckerCommand) -> anyhow::Result<Status> {
    match cmd {
        TuckerCommand::Refute(args) => refute(args),
        TuckerCommand::Stress(args) => stress(args),
        TuckerCommand::Equivariance(args) => equivariance(args),
    }
}
