//! Exact clique and chromatic numbers, colorings and their verification.
//!
//! The clique search is a bitset branch-and-bound with greedy-coloring bounds
//! on each branch. The chromatic search is iterative deepening over the number
//! of colors; each step is a DSATUR-ordered backtracking search with forward
//! checking and color-symmetry breaking (a fresh color is only ever the
//! smallest unused one).

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::compat::CompatGraph;
use crate::graph::{kneser_vertices, Graph};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
/// The exact coloring search keeps candidate colors in a `u64` mask.
pub const MAX_SEARCH_COLORS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring covers {got} vertices, graph has {expected}")]
    Uncovered { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={color_count}")]
    ColorOutOfRange { vertex: usize, color: usize, color_count: usize },
    #[error("edge ({0}, {1}) is monochromatic")]
    Conflict(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Assignment of colors `1..=color_count` to every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    color_count: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, color_count: usize) -> Result<Self, ColoringError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > color_count) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, color_count });
        }
        Ok(Self { colors, color_count })
    }

    /// Color count taken as the largest color used.
    pub fn from_colors(colors: Vec<usize>) -> Result<Self, ColoringError> {
        let count = colors.iter().copied().max().unwrap_or(0);
        Self::new(colors, count)
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// JSON object `{vertex: color}`.
    pub fn to_json_map(&self) -> BTreeMap<usize, usize> {
        self.colors.iter().copied().enumerate().collect()
    }
}

/// Ok when no edge is monochromatic, otherwise the lexicographically first such edge.
pub fn check_proper(g: &Graph, c: &Coloring) -> Result<(), ColoringError> {
    if c.len() != g.vertex_count() {
        return Err(ColoringError::Uncovered { expected: g.vertex_count(), got: c.len() });
    }
    match g.edges().find(|&(u, v)| c.color(u) == c.color(v)) {
        Some((u, v)) => Err(ColoringError::Conflict(u, v)),
        None => Ok(()),
    }
}

pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    check_proper(g, c).is_ok()
}

/// First-fit coloring in the given vertex order.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Coloring {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "order must be a permutation of the vertices");
    let mut colors = vec![0usize; n];
    let mut used = Vec::new();
    for &v in order {
        assert!(colors[v] == 0, "vertex {v} repeated in order");
        used.clear();
        used.resize(n + 2, false);
        for u in g.neighbors(v).iter() {
            used[colors[u]] = true;
        }
        colors[v] = (1..).find(|&c| !used[c]).expect("some color is free");
    }
    Coloring::from_colors(colors).expect("first-fit colors are positive")
}

/// Smallest-last (degeneracy) order: repeatedly remove a minimum-degree vertex,
/// lowest index first, and reverse.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        for u in g.neighbors(v).iter() {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
        out.push(v);
    }
    out.reverse();
    out
}

/// Classic DSATUR heuristic (no backtracking).
pub fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![0usize; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 2]; n];
    let mut sat = vec![0usize; n];
    let deg = g.degrees();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by_key(|&v| (sat[v], deg[v], std::cmp::Reverse(v)))
            .expect("uncolored vertex");
        let c = (1..).find(|&c| !seen[v][c]).expect("free color");
        colors[v] = c;
        for u in g.neighbors(v).iter() {
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    Coloring::from_colors(colors).expect("DSATUR colors are positive")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    /// Exact clique number, or the cap when the search stopped early.
    pub size: usize,
    /// `true` when `size` is exact; `false` means "at least `size`".
    pub exact: bool,
    pub witness: Vec<usize>,
    pub nodes: u64,
}

/// Maximum clique by branch-and-bound. With `cap`, stops as soon as a clique
/// of that size is found.
pub fn clique_number(g: &Graph, cap: Option<usize>) -> CliqueResult {
    let n = g.vertex_count();
    // renumber by non-increasing degree so bitset scans follow the initial order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let h = g.induced_subgraph(&order);
    let mut search = CliqueSearch {
        g: &h,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        cap: cap.unwrap_or(usize::MAX),
    };
    search.expand(Bitset::full(n));
    let mut witness: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    witness.sort_unstable();
    let size = witness.len();
    CliqueResult { size, exact: size < search.cap, witness, nodes: search.nodes }
}

struct CliqueSearch<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    cap: usize,
}

impl CliqueSearch<'_> {
    /// Greedy coloring of `p` into independent classes; returns vertices with
    /// their class number (1-based), ordered by class.
    fn color_bound(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut class = 0;
        while !uncolored.is_empty() {
            class += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(self.g.neighbors(v));
                uncolored.remove(v);
                out.push((v, class));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bitset) {
        self.nodes += 1;
        let ranked = self.color_bound(&p);
        for &(v, class) in ranked.iter().rev() {
            if self.best.len() >= self.cap || self.current.len() + class <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = p.intersection(self.g.neighbors(v));
            if next.is_empty() || self.current.len() >= self.cap {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchProgress {
    pub colors: usize,
    pub nodes: u64,
}

pub struct ChromaticOptions<'a> {
    pub lb_hint: Option<usize>,
    pub ub_hint: Option<usize>,
    pub node_budget: u64,
    /// Induced subgraph on which infeasibility is tried first. A color count
    /// refuted on the core is refuted on the whole graph, since adding
    /// vertices never lowers the chromatic number.
    pub core: Option<Vec<usize>>,
    /// Called every `progress_interval` search nodes.
    pub progress: Option<&'a mut dyn FnMut(SearchProgress)>,
    pub progress_interval: u64,
}

impl Default for ChromaticOptions<'_> {
    fn default() -> Self {
        Self {
            lb_hint: None,
            ub_hint: None,
            node_budget: DEFAULT_NODE_BUDGET,
            core: None,
            progress: None,
            progress_interval: 1 << 22,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticOutcome {
    Exact { chromatic_number: usize, witness: Coloring },
    /// Budget ran out; `lower <= χ <= upper`, with a coloring achieving `upper`.
    Inconclusive { lower: usize, upper: usize, witness: Coloring },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub outcome: ChromaticOutcome,
    pub clique_number: usize,
    pub greedy_upper: usize,
    pub nodes: u64,
    /// Largest color count refuted on the core alone, if any.
    pub core_refuted: Option<usize>,
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<usize> {
        match self.outcome {
            ChromaticOutcome::Exact { chromatic_number, .. } => Some(chromatic_number),
            ChromaticOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn witness(&self) -> &Coloring {
        match &self.outcome {
            ChromaticOutcome::Exact { witness, .. } | ChromaticOutcome::Inconclusive { witness, .. } => witness,
        }
    }

    pub fn bracket(&self) -> (usize, usize) {
        match self.outcome {
            ChromaticOutcome::Exact { chromatic_number, .. } => (chromatic_number, chromatic_number),
            ChromaticOutcome::Inconclusive { lower, upper, .. } => (lower, upper),
        }
    }
}

/// Exact chromatic number by iterative deepening from the clique bound (or
/// `lb_hint`, if larger) up to the best greedy coloring.
///
/// `ub_hint` is trusted only for the reported bracket when the search is
/// inconclusive; a returned witness is always one the solver found.
pub fn exact_chromatic_number(g: &Graph, mut opts: ChromaticOptions<'_>) -> ChromaticResult {
    let n = g.vertex_count();
    let omega = clique_number(g, None).size;
    let mut best = dsatur_coloring(g);
    let alt = greedy_coloring(g, &degeneracy_order(g));
    if alt.color_count() < best.color_count() {
        best = alt;
    }
    let greedy_upper = best.color_count();
    let mut lower = omega.max(opts.lb_hint.unwrap_or(0)).min(greedy_upper);
    if n == 0 {
        lower = 0;
    }
    let mut nodes = 0u64;
    let mut core_refuted = None;
    let core_graph = opts.core.as_ref().map(|vs| g.induced_subgraph(vs));
    let mut core_useful = core_graph.is_some();
    let mut c = lower;
    let mut noop = |_: SearchProgress| {};
    while c < best.color_count() && c <= MAX_SEARCH_COLORS {
        let targets: &[&Graph] = match &core_graph {
            Some(cg) if core_useful => &[cg, g],
            _ => &[g],
        };
        let mut step = None;
        for (i, &target) in targets.iter().enumerate() {
            let on_core = targets.len() == 2 && i == 0;
            let remaining = opts.node_budget.saturating_sub(nodes);
            let mut search = ColorSearch::new(target, c, remaining, opts.progress_interval);
            let found = match opts.progress.as_mut() {
                Some(cb) => search.run(&mut **cb),
                None => search.run(&mut noop),
            };
            nodes += search.nodes;
            match found {
                Decision::Colorable(_) if on_core => {
                    // the core no longer separates anything above this count
                    core_useful = false;
                }
                Decision::Uncolorable if on_core => {
                    core_refuted = Some(c);
                    step = Some(Decision::Uncolorable);
                    break;
                }
                other => {
                    step = Some(other);
                    break;
                }
            }
        }
        match step.expect("the last target always decides") {
            Decision::Colorable(colors) => {
                best = Coloring::new(colors, c).expect("search colors are in range");
                break;
            }
            Decision::Uncolorable => {
                c += 1;
                lower = c;
            }
            Decision::BudgetExceeded => {
                let upper = opts.ub_hint.map_or(best.color_count(), |u| u.min(best.color_count()).max(lower));
                return ChromaticResult {
                    outcome: ChromaticOutcome::Inconclusive { lower, upper, witness: best },
                    clique_number: omega,
                    greedy_upper,
                    nodes,
                    core_refuted,
                };
            }
        }
    }
    if c < best.color_count() {
        // more colors than the search supports
        return ChromaticResult {
            outcome: ChromaticOutcome::Inconclusive { lower, upper: best.color_count(), witness: best },
            clique_number: omega,
            greedy_upper,
            nodes,
            core_refuted,
        };
    }
    debug_assert!(is_proper(g, &best));
    ChromaticResult {
        outcome: ChromaticOutcome::Exact { chromatic_number: best.color_count(), witness: best },
        clique_number: omega,
        greedy_upper,
        nodes,
        core_refuted,
    }
}

enum Decision {
    Colorable(Vec<usize>),
    Uncolorable,
    BudgetExceeded,
}

/// Backtracking search for a proper coloring with exactly `colors` available.
struct ColorSearch<'g> {
    g: &'g Graph,
    colors: usize,
    neighbors: Vec<Vec<usize>>,
    degree: Vec<usize>,
    assigned: Vec<usize>,
    domain: Vec<u64>,
    /// (vertex, removed color bit) for undoing forward checking
    trail: Vec<(usize, u64)>,
    uncolored: Vec<usize>,
    pos: Vec<usize>,
    max_used: usize,
    nodes: u64,
    budget: u64,
    interval: u64,
}

impl<'g> ColorSearch<'g> {
    fn new(g: &'g Graph, colors: usize, budget: u64, interval: u64) -> Self {
        let n = g.vertex_count();
        let full = if colors == 64 { u64::MAX } else { (1u64 << colors) - 1 };
        Self {
            g,
            colors,
            neighbors: (0..n).map(|v| g.neighbors(v).to_vec()).collect(),
            degree: g.degrees(),
            assigned: vec![0; n],
            domain: vec![full; n],
            trail: Vec::new(),
            uncolored: (0..n).collect(),
            pos: (0..n).collect(),
            max_used: 0,
            nodes: 0,
            budget,
            interval: interval.max(1),
        }
    }

    fn run(&mut self, progress: &mut dyn FnMut(SearchProgress)) -> Decision {
        if self.colors == 0 {
            return if self.g.vertex_count() == 0 { Decision::Colorable(Vec::new()) } else { Decision::Uncolorable };
        }
        match self.search(progress) {
            Some(true) => Decision::Colorable(self.assigned.clone()),
            Some(false) => Decision::Uncolorable,
            None => Decision::BudgetExceeded,
        }
    }

    fn take(&mut self, v: usize) {
        let i = self.pos[v];
        let last = *self.uncolored.last().expect("non-empty");
        self.uncolored.swap_remove(i);
        if last != v {
            self.pos[last] = i;
        }
    }

    fn restore(&mut self, v: usize) {
        self.pos[v] = self.uncolored.len();
        self.uncolored.push(v);
    }

    /// Most saturated uncolored vertex (smallest domain), then most uncolored
    /// neighbours, then lowest index.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, 0usize);
        for &v in &self.uncolored {
            let k = (self.domain[v].count_ones(), self.degree[v]);
            if k.0 < key.0 || (k.0 == key.0 && (k.1 > key.1 || (k.1 == key.1 && v < best))) {
                key = k;
                best = v;
            }
        }
        best
    }

    /// `Some(true)` colorable, `Some(false)` refuted, `None` budget exhausted.
    fn search(&mut self, progress: &mut dyn FnMut(SearchProgress)) -> Option<bool> {
        if self.uncolored.is_empty() {
            return Some(true);
        }
        let v = self.select();
        let limit = (self.max_used + 1).min(self.colors);
        let allowed = if limit == 64 { u64::MAX } else { (1u64 << limit) - 1 };
        let mut options = self.domain[v] & allowed;
        self.take(v);
        while options != 0 {
            let bit = options & options.wrapping_neg();
            options &= options - 1;
            let color = bit.trailing_zeros() as usize + 1;

            self.nodes += 1;
            if self.nodes > self.budget {
                self.restore(v);
                return None;
            }
            if self.nodes.is_multiple_of(self.interval) {
                progress(SearchProgress { colors: self.colors, nodes: self.nodes });
            }

            let mark = self.trail.len();
            let mut wiped = false;
            for i in 0..self.neighbors[v].len() {
                let u = self.neighbors[v][i];
                if self.assigned[u] == 0 && self.domain[u] & bit != 0 {
                    self.domain[u] &= !bit;
                    self.trail.push((u, bit));
                    if self.domain[u] == 0 {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                self.assigned[v] = color;
                for &u in &self.neighbors[v] {
                    self.degree[u] -= 1;
                }
                let saved_max = self.max_used;
                self.max_used = self.max_used.max(color);
                match self.search(progress) {
                    Some(true) => return Some(true),
                    None => {
                        self.restore(v);
                        return None;
                    }
                    Some(false) => {}
                }
                self.max_used = saved_max;
                self.assigned[v] = 0;
                for &u in &self.neighbors[v] {
                    self.degree[u] += 1;
                }
            }
            while self.trail.len() > mark {
                let (u, b) = self.trail.pop().expect("trail entry");
                self.domain[u] |= b;
            }
        }
        self.restore(v);
        Some(false)
    }
}

/// `color(S) = min(min S, n - 2k + 2)` on `KG(n, k)`, in the generator's vertex order.
pub fn kneser_canonical_coloring(n: usize, k: usize) -> Result<Coloring, ColoringError> {
    if k == 0 || n + 1 < 2 * k {
        return Err(ColoringError::InvalidParameter(format!("need k >= 1 and n >= 2k - 1, got n={n}, k={k}")));
    }
    let cap = n + 2 - 2 * k;
    let verts = kneser_vertices(n, k).map_err(|e| ColoringError::InvalidParameter(e.to_string()))?;
    Coloring::new(verts.iter().map(|s| s.min().min(cap)).collect(), cap)
}

/// Sends each vertex `(A_1, ..., A_r)` of the compatibility graph to `min A_1`.
pub fn representative_map(cg: &CompatGraph) -> Vec<usize> {
    cg.poset()
        .elements()
        .iter()
        .map(|e| e.part(0).first().expect("parts are non-empty"))
        .collect()
}

/// Pulls a proper host coloring back along [`representative_map`].
pub fn pullback_coloring(cg: &CompatGraph, host_coloring: &Coloring) -> Result<Coloring, ColoringError> {
    check_proper(cg.poset().host(), host_coloring)?;
    let colors = representative_map(cg).into_iter().map(|v| host_coloring.color(v)).collect();
    Coloring::new(colors, host_coloring.color_count())
}
