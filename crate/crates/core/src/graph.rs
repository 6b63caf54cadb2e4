//! Simple undirected graphs with bitset adjacency rows, the standard
//! generators (complete, cycle, Kneser, Mycielskian), and a few structural
//! queries.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::Bitset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("label {0:?} is used by more than one vertex")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("graph has {n} vertices, above the limit of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Immutable once built; every constructor goes through [`Graph::from_edges`]
/// or keeps the rows symmetric and loop-free itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<Bitset>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { rows: (0..n).map(|_| Bitset::new(n)).collect(), labels: None }
    }

    /// Builds a graph from an edge list, deduplicating repeated pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.rows[u].insert(v);
                    g.rows[v].insert(u);
                }
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount { expected: self.vertex_count(), got: labels.len() });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.rows[u].is_disjoint(&self.rows[v]))
    }

    /// Verifies that `map` sends every edge of `self` to an edge of `target`.
    /// Returns the first violated edge otherwise.
    pub fn check_homomorphism(&self, target: &Graph, map: &[usize]) -> Result<(), (usize, usize)> {
        assert_eq!(map.len(), self.vertex_count(), "vertex map length");
        for (u, v) in self.edges() {
            if !target.has_edge(map[u], map[v]) {
                return Err((u, v));
            }
        }
        Ok(())
    }

    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for (u, row) in self.rows.iter().enumerate() {
            if row.capacity() != n {
                return Err(GraphError::InvalidParameter(format!("row {u} has wrong width")));
            }
            if row.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            if let Some(v) = row.iter().find(|&v| !self.rows[v].contains(u)) {
                return Err(GraphError::InvalidParameter(format!("asymmetric edge ({u}, {v})")));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub fn complete_graph(m: usize) -> Result<Graph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidParameter("complete graph needs m >= 1".into()));
    }
    Ok(Graph::from_fn(m, |_, _| true))
}

pub fn cycle_graph(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::InvalidParameter(format!("cycle needs m >= 3, got {m}")));
    }
    Ok(Graph::from_fn(m, |u, v| v == u + 1 || (u == 0 && v == m - 1)))
}

pub fn path_graph(m: usize) -> Graph {
    Graph::from_fn(m, |u, v| v == u + 1)
}

/// A vertex of `KG(n, k)`: a sorted `k`-subset of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KneserVertex {
    elements: Vec<usize>,
}

impl KneserVertex {
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self, GraphError> {
        elements.sort_unstable();
        let distinct = elements.windows(2).all(|w| w[0] < w[1]);
        if !distinct || elements.iter().any(|&e| e == 0 || e > n) {
            return Err(GraphError::InvalidParameter(format!(
                "{elements:?} is not a subset of 1..={n}"
            )));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn min(&self) -> usize {
        self.elements[0]
    }

    /// Ground-set membership mask, bit `i - 1` for element `i`.
    pub fn mask(&self) -> u64 {
        self.elements.iter().fold(0, |m, &e| m | 1 << (e - 1))
    }

    pub fn is_disjoint(&self, other: &KneserVertex) -> bool {
        self.mask() & other.mask() == 0
    }
}

impl fmt::Display for KneserVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<KneserVertex> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<KneserVertex>) {
        if cur.len() == k {
            out.push(KneserVertex { elements: cur.clone() });
            return;
        }
        let needed = k - cur.len();
        for e in start..=n + 1 - needed {
            cur.push(e);
            rec(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Largest ground set accepted by the Kneser generator (subsets are stored as `u64` masks).
pub const MAX_KNESER_N: usize = 64;

pub fn kneser_vertices(n: usize, k: usize) -> Result<Vec<KneserVertex>, GraphError> {
    if k == 0 || k > n {
        return Err(GraphError::InvalidParameter(format!("Kneser graph needs n >= k >= 1, got n={n}, k={k}")));
    }
    if n > MAX_KNESER_N {
        return Err(GraphError::TooLarge { n, cap: MAX_KNESER_N });
    }
    Ok(k_subsets(n, k))
}

/// `KG(n, k)`: vertices are the `k`-subsets of `{1..n}` in lexicographic order,
/// adjacent when disjoint. Labels are the subsets, e.g. `{1,3}`.
pub fn kneser_graph(n: usize, k: usize) -> Result<Graph, GraphError> {
    let verts = kneser_vertices(n, k)?;
    let masks: Vec<u64> = verts.iter().map(KneserVertex::mask).collect();
    let g = Graph::from_fn(verts.len(), |u, v| masks[u] & masks[v] == 0);
    g.with_labels(verts.iter().map(ToString::to_string).collect())
}

/// Mycielskian of `g`: vertices `0..n` are the originals, `n..2n` their
/// shadows, and `2n` the apex. Shadow `n + i` is adjacent to `N(i)` and to the apex.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..n {
        edges.extend(g.neighbors(i).iter().map(|j| (n + i, j)));
        edges.push((n + i, 2 * n));
    }
    Graph::from_edges(2 * n + 1, &edges).expect("mycielskian edges are in range and loop-free")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Acyclic,
    Cycle(usize),
}

/// Shortest cycle length via breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for v in g.neighbors(u).iter() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Cycle(best)
    }
}

pub const ISOMORPHISM_VERTEX_CAP: usize = 12;

/// Backtracking isomorphism test for small graphs (at most 12 vertices).
pub fn is_isomorphic_small(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count() > ISOMORPHISM_VERTEX_CAP {
            return Err(GraphError::TooLarge { n: g.vertex_count(), cap: ISOMORPHISM_VERTEX_CAP });
        }
    }
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let d1 = g1.degrees();
    let d2 = g2.degrees();
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }

    fn extend(
        i: usize,
        g1: &Graph,
        g2: &Graph,
        d1: &[usize],
        d2: &[usize],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == g1.vertex_count() {
            return true;
        }
        for c in 0..g2.vertex_count() {
            if used[c] || d1[i] != d2[c] {
                continue;
            }
            let consistent = (0..i).all(|j| g1.has_edge(i, j) == g2.has_edge(c, map[j]));
            if !consistent {
                continue;
            }
            used[c] = true;
            map.push(c);
            if extend(i + 1, g1, g2, d1, d2, map, used) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }

    Ok(extend(0, g1, g2, &d1, &d2, &mut Vec::with_capacity(n), &mut vec![false; n]))
}
