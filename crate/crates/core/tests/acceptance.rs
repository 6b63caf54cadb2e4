//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use homcompat::tucker::{lambda_case, LambdaCase, DEFAULT_SWEEP_CAP};
use homcompat::{
    check_equivariance, check_proper, clique_number, complete_graph, cycle_graph, dsatur_coloring,
    exact_chromatic_number, find_bad_pair, kneser_graph, mycielskian, pullback_coloring, random_coloring,
    random_equivariant_labeling, refute_or_certify, support_labeling, sv_act, sv_leq, ChromaticOptions,
    CompatGraph, Coloring, Graph, HomPoset, SignedVector, TuckerInstance, TuckerParams, Verdict, VectorSpace,
};

use common::{brute_chromatic_number, brute_clique_number, count_k2_multihoms, small_corpus};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_chi(g: &Graph, core: Option<Vec<usize>>) -> Result<(usize, Coloring), String> {
    let res = exact_chromatic_number(g, ChromaticOptions { core, ..Default::default() });
    match res.exact() {
        Some(chi) => Ok((chi, res.witness().clone())),
        None => Err(format!("chromatic search inconclusive, bracket {:?}", res.bracket())),
    }
}

/// Kneser proof chain on `KG(n, k)` with `r = 2`: vertex count against the
/// brute-force oracle, exact clique number 2, exact chromatic number `n - 2k + 2`.
fn kneser_chain(n: usize, k: usize) -> Result<String, String> {
    let host = kneser_graph(n, k).unwrap();
    let oracle = count_k2_multihoms(&host);
    let inst = TuckerInstance::new(n, k, 2).map_err(|e| e.to_string())?;
    let g = inst.compat().graph();
    ensure(g.vertex_count() == oracle, || format!("{} vertices, oracle says {oracle}", g.vertex_count()))?;
    let omega = clique_number(g, None);
    ensure(omega.exact && omega.size == 2, || format!("clique number {}", omega.size))?;
    let core = inst.binomial_core().map_err(|e| e.to_string())?;
    let (chi, witness) = exact_chi(g, Some(core))?;
    check_proper(g, &witness).map_err(|e| e.to_string())?;
    let expected = n - 2 * k + 2;
    ensure(chi == expected, || format!("chi = {chi}, expected {expected}"))?;
    Ok(format!("V={} E={} (oracle {oracle}), omega=2, chi={chi}", g.vertex_count(), g.edge_count()))
}

fn criterion_1() -> Result<String, String> {
    kneser_chain(5, 2)
}

fn criterion_2() -> Result<String, String> {
    kneser_chain(6, 2)
}

struct Cell {
    host_name: &'static str,
    host: Graph,
    r: usize,
    /// `(n, k)` when the host is a Kneser graph with `n >= rk`.
    kneser: Option<(usize, usize)>,
}

fn matrix() -> Vec<Cell> {
    type Host = (&'static str, Graph, Option<(usize, usize)>);
    let hosts: Vec<Host> = vec![
        ("K4", complete_graph(4).unwrap(), None),
        ("K5", complete_graph(5).unwrap(), None),
        ("C5", cycle_graph(5).unwrap(), None),
        ("petersen", kneser_graph(5, 2).unwrap(), Some((5, 2))),
        ("KG(6,2)", kneser_graph(6, 2).unwrap(), Some((6, 2))),
    ];
    let mut cells = Vec::new();
    for r in [2, 3] {
        for (name, host, kn) in &hosts {
            cells.push(Cell {
                host_name: name,
                host: host.clone(),
                r,
                kneser: kn.filter(|&(n, k)| n >= r * k),
            });
        }
    }
    cells
}

fn build_cell(cell: &Cell) -> (CompatGraph, Option<Vec<usize>>) {
    match cell.kneser {
        Some((n, k)) => {
            let inst = TuckerInstance::new(n, k, cell.r).unwrap();
            let core = inst.binomial_core().unwrap();
            (inst.compat().clone(), Some(core))
        }
        None => (CompatGraph::build(HomPoset::enumerate(&cell.host, cell.r).unwrap()), None),
    }
}

fn criterion_3() -> Result<String, String> {
    let mut notes = Vec::new();
    for cell in matrix() {
        let (cg, _) = build_cell(&cell);
        let tag = format!("{}/r={}", cell.host_name, cell.r);
        if cg.poset().is_empty() {
            // the host has no K_r, so there is nothing to bound
            ensure(cell.host.vertex_count() > 0 && brute_clique_number(&cell.host) < cell.r, || {
                format!("{tag}: empty poset but host contains K_r")
            })?;
            notes.push(format!("{tag}: empty poset (host has no K_{}), vacuous", cell.r));
            continue;
        }
        let omega = clique_number(cg.graph(), None);
        ensure(omega.exact && omega.size == cell.r, || format!("{tag}: clique number {}", omega.size))?;
        let orbit: Vec<usize> = cg.element(0).orbit().iter().map(|m| cg.vertex_of(m).unwrap()).collect();
        for (i, &a) in orbit.iter().enumerate() {
            for &b in &orbit[i + 1..] {
                ensure(a != b && cg.graph().has_edge(a, b), || format!("{tag}: orbit is not a clique"))?;
            }
        }
        notes.push(format!("{tag}: V={} omega={}", cg.vertex_count(), omega.size));
    }
    Ok(notes.join("; "))
}

fn criterion_4() -> Result<String, String> {
    let mut notes = Vec::new();
    for cell in matrix() {
        let (cg, core) = build_cell(&cell);
        let tag = format!("{}/r={}", cell.host_name, cell.r);
        if cg.poset().is_empty() {
            notes.push(format!("{tag}: empty"));
            continue;
        }
        let (chi_h, host_coloring) = exact_chi(&cell.host, None)?;
        let pulled = pullback_coloring(&cg, &host_coloring).map_err(|e| format!("{tag}: {e}"))?;
        check_proper(cg.graph(), &pulled).map_err(|e| format!("{tag}: pullback not proper: {e}"))?;
        let (chi_c, _) = exact_chi(cg.graph(), core).map_err(|e| format!("{tag}: {e}"))?;
        ensure(chi_c <= chi_h, || format!("{tag}: chi(C) = {chi_c} > chi(H) = {chi_h}"))?;
        notes.push(format!("{tag}: chi(C)={chi_c} <= chi(H)={chi_h}"));
    }
    Ok(notes.join("; "))
}

const R2_PARAMS: [(usize, usize, usize); 5] = [(2, 1, 3), (2, 1, 4), (2, 2, 4), (2, 2, 5), (2, 2, 6)];

fn criterion_5() -> Result<String, String> {
    let mut notes = Vec::new();
    for (r, k, n) in R2_PARAMS {
        let inst = TuckerInstance::new(n, k, r).map_err(|e| e.to_string())?;
        let col = inst.pullback_coloring().map_err(|e| e.to_string())?;
        let lab = TuckerParams::new(&inst, &col)
            .and_then(|p| p.labeling(DEFAULT_SWEEP_CAP))
            .map_err(|e| e.to_string())?;
        if let Some(v) = check_equivariance(&lab) {
            return Err(format!("({r},{k},{n}): violation at {} under shift {}", v.x, v.shift));
        }
        notes.push(format!("({r},{k},{n}) {} vectors", lab.space().codes() - 1));
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Result<String, String> {
    let mut notes = Vec::new();
    for (r, k, n) in R2_PARAMS {
        let inst = TuckerInstance::new(n, k, r).map_err(|e| e.to_string())?;
        let g = inst.compat().graph();
        let core = inst.binomial_core().map_err(|e| e.to_string())?;
        let colorings = [
            ("pullback", inst.pullback_coloring().map_err(|e| e.to_string())?),
            ("dsatur", dsatur_coloring(g)),
            ("exact", exact_chi(g, Some(core))?.1),
        ];
        for (name, col) in &colorings {
            check_proper(g, col).map_err(|e| format!("({r},{k},{n}) {name}: {e}"))?;
            let lab = TuckerParams::new(&inst, col)
                .and_then(|p| p.labeling(DEFAULT_SWEEP_CAP))
                .map_err(|e| e.to_string())?;
            let found = find_bad_pair(&lab).map_err(|e| e.to_string())?;
            ensure(found.is_none(), || format!("({r},{k},{n}) {name}: bad pair {found:?}"))?;
        }
        notes.push(format!("({r},{k},{n})"));
    }
    Ok(format!("no bad pair for pullback, dsatur and exact colorings at {}", notes.join(", ")))
}

fn criterion_7() -> Result<String, String> {
    let inst = TuckerInstance::new(5, 2, 2).map_err(|e| e.to_string())?;
    let cg = inst.compat();
    let mut certified = 0;
    for seed in 0..100 {
        let col = random_coloring(cg.vertex_count(), 2, seed).map_err(|e| e.to_string())?;
        let params = TuckerParams::new(&inst, &col).map_err(|e| e.to_string())?;
        match refute_or_certify(&params, DEFAULT_SWEEP_CAP).map_err(|e| format!("seed {seed}: {e}"))? {
            Verdict::Case3BadPair { certificate, .. } => {
                let (a, b) = certificate.edge;
                let (ea, eb) = (cg.element(a), cg.element(b));
                let compatible = (1..2).any(|j| {
                    let s = eb.shift(j);
                    s.le(ea) || ea.le(&s)
                });
                ensure(a != b && compatible, || format!("seed {seed}: ({a},{b}) not compatible"))?;
                ensure(col.color(a) == col.color(b), || format!("seed {seed}: ({a},{b}) not monochromatic"))?;
                certified += 1;
            }
            other => return Err(format!("seed {seed}: verdict {}", other.name())),
        }
    }
    ensure(certified == 100, || format!("{certified}/100"))?;
    Ok("100/100 Case3BadPair with re-verified monochromatic edges".into())
}

fn criterion_8() -> Result<String, String> {
    let mut notes = Vec::new();
    for (n, r) in [(3, 2), (4, 2), (3, 3)] {
        let space = VectorSpace::new(n, r, DEFAULT_SWEEP_CAP).map_err(|e| e.to_string())?;
        let mut hits = 0;
        for seed in 0..1000 {
            let lab = random_equivariant_labeling(space, n - 1, seed).map_err(|e| e.to_string())?;
            if let Some(p) = find_bad_pair(&lab).map_err(|e| e.to_string())? {
                let ok = sv_leq(&p.x, &p.y).unwrap()
                    && lab.get(&p.x).level == lab.get(&p.y).level
                    && lab.get(&p.x) == lab.get(&p.y).act(p.g, r)
                    && p.g != 0;
                ensure(ok, || format!("(n={n}, r={r}) seed {seed}: malformed pair {p:?}"))?;
                hits += 1;
            }
        }
        ensure(hits == 1000, || format!("(n={n}, r={r}): {hits}/1000 bad pairs"))?;
        let explicit = support_labeling(space);
        ensure(explicit.max_level() == n, || "explicit labeling level".into())?;
        let found = find_bad_pair(&explicit).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || format!("(n={n}, r={r}): explicit labeling has {found:?}"))?;
        notes.push(format!("(n={n},r={r}) 1000/1000"));
    }
    Ok(format!("{}; support labeling at max_level = n evades the search", notes.join(", ")))
}

fn criterion_9() -> Result<String, String> {
    let corpus = small_corpus();
    for (name, g) in &corpus {
        let omega = clique_number(g, None);
        let want_omega = brute_clique_number(g);
        ensure(omega.exact && omega.size == want_omega, || format!("{name}: omega {} vs {want_omega}", omega.size))?;
        let (chi, witness) = exact_chi(g, None)?;
        let want_chi = brute_chromatic_number(g);
        ensure(chi == want_chi, || format!("{name}: chi {chi} vs {want_chi}"))?;
        ensure(g.vertex_count() == 0 || check_proper(g, &witness).is_ok(), || format!("{name}: bad witness"))?;
    }
    let grotzsch = mycielskian(&mycielskian(&complete_graph(2).unwrap()));
    ensure(grotzsch.vertex_count() == 11 && grotzsch.edge_count() == 20, || "Grötzsch size".into())?;
    ensure(grotzsch.is_triangle_free(), || "Grötzsch has a triangle".into())?;
    let (chi, _) = exact_chi(&grotzsch, None)?;
    ensure(chi == 4, || format!("Grötzsch chi = {chi}"))?;
    Ok(format!("{} graphs match brute force; Grötzsch: 11 vertices, triangle-free, chi=4", corpus.len()))
}

fn criterion_10() -> Result<String, String> {
    let (n, k, r) = (3, 1, 3);
    let inst = TuckerInstance::new(n, k, r).map_err(|e| e.to_string())?;
    let col = inst.pullback_coloring().map_err(|e| e.to_string())?;
    let params = TuckerParams::new(&inst, &col).map_err(|e| e.to_string())?;
    let verdict = refute_or_certify(&params, DEFAULT_SWEEP_CAP).map_err(|e| e.to_string())?;

    let hand_x = SignedVector::new(vec![0, 2, 1], r).unwrap();
    let hand_y = SignedVector::new(vec![1, 2, 1], r).unwrap();
    let (lx, ly) = (params.label(&hand_x).unwrap(), params.label(&hand_y).unwrap());
    let hand_is_bad = sv_leq(&hand_x, &hand_y).unwrap() && lx.level == ly.level && lx.sign != ly.sign;
    let hand_cases = (lambda_case(&hand_x, r, k), lambda_case(&hand_y, r, k));
    let orbit_bad = (0..r).all(|j| {
        let (a, b) = (sv_act(&hand_x, j, r), sv_act(&hand_y, j, r));
        let (la, lb) = (params.label(&a).unwrap(), params.label(&b).unwrap());
        la.level == lb.level && la.sign != lb.sign
    });

    let report = serde_json::json!({
        "parameters": {"r": r, "k": k, "n": n, "colors": col.color_count()},
        "search": verdict,
        "hand_pair": {
            "x": hand_x, "y": hand_y,
            "label_x": lx, "label_y": ly,
            "cases": [hand_cases.0, hand_cases.1],
            "is_bad_pair": hand_is_bad,
            "whole_orbit_bad": orbit_bad,
        },
    });
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("open_question_r3_k1_n3.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).map_err(|e| e.to_string())?;

    let found = match &verdict {
        Verdict::AnomalousBadPair { pair, case_x, case_y, .. } => format!(
            "AnomalousBadPair x={} y={} labels {:?}/{:?} cases {case_x:?}/{case_y:?}",
            pair.x, pair.y, pair.label_x, pair.label_y
        ),
        other => other.name().to_string(),
    };
    let both_case2 = hand_cases == (LambdaCase::Mixed, LambdaCase::Mixed);
    Ok(format!(
        "report-only: search found {found}; hand pair bad={hand_is_bad} (both case 2: {both_case2}); artifact {}",
        path.display()
    ))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("C(Hom(K2,KG(5,2))): 110 vertices, omega=2, chi=3", criterion_1),
        ("C(Hom(K2,KG(6,2))): 2120 vertices, omega=2, chi=4", criterion_2),
        ("clique number = r across the host matrix", criterion_3),
        ("pullback colorings proper, chi(C) <= chi(H)", criterion_4),
        ("lambda equivariance, r=2 parameter set", criterion_5),
        ("no bad pair for proper colorings, r=2 parameter set", criterion_6),
        ("random 2-colorings refuted with certificates", criterion_7),
        ("bad pairs forced below level n", criterion_8),
        ("solver oracles on the small corpus and Grötzsch", criterion_9),
        ("case-2 probe at (r,k,n)=(3,1,3)", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} [{secs:.2}s] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} [{secs:.2}s] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
