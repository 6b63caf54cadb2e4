//! The poset `Hom_p(K_r, H)`: r-tuples of non-empty, pairwise completely
//! adjacent vertex sets of a host graph, ordered by coordinatewise inclusion,
//! with `Z_r` acting by cyclic rotation of the coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::graph::Graph;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("r must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("Hom poset has at least {projected} elements, above the cap of {cap}")]
    CapExceeded { projected: u128, cap: usize },
    #[error("tuples have different lengths ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("invalid tuple: {0}")]
    Invalid(String),
}

/// One element `(A_1, ..., A_r)` of `Hom_p(K_r, H)`; parts are bitsets over `V(H)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiHom {
    parts: Vec<Bitset>,
}

impl MultiHom {
    /// Wraps parts without validation; see [`MultiHom::validate`].
    pub fn from_parts(parts: Vec<Bitset>) -> Self {
        Self { parts }
    }

    pub fn from_indices(host_n: usize, parts: &[&[usize]]) -> Self {
        Self { parts: parts.iter().map(|p| Bitset::from_indices(host_n, p.iter().copied())).collect() }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Bitset] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Bitset {
        &self.parts[i]
    }

    /// `|A_1 ∪ ... ∪ A_r|`.
    pub fn support_size(&self) -> usize {
        self.parts.iter().map(Bitset::count).sum()
    }

    /// Checks non-emptiness, disjointness and complete adjacency between parts.
    pub fn validate(&self, host: &Graph) -> Result<(), HomError> {
        for (i, a) in self.parts.iter().enumerate() {
            if a.capacity() != host.vertex_count() {
                return Err(HomError::Invalid(format!("part {i} has the wrong universe")));
            }
            if a.is_empty() {
                return Err(HomError::Invalid(format!("part {i} is empty")));
            }
            for (j, b) in self.parts.iter().enumerate().skip(i + 1) {
                if !a.is_disjoint(b) {
                    return Err(HomError::Invalid(format!("parts {i} and {j} intersect")));
                }
                for u in a.iter() {
                    if !b.is_subset(host.neighbors(u)) {
                        return Err(HomError::Invalid(format!(
                            "parts {i} and {j} are not completely adjacent at vertex {u}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coordinatewise inclusion; assumes equal rank.
    #[inline]
    pub fn le(&self, other: &MultiHom) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset(b))
    }

    pub fn leq(&self, other: &MultiHom) -> Result<bool, HomError> {
        if self.rank() != other.rank() {
            return Err(HomError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.le(other))
    }

    /// `ω^j.(A_1, ..., A_r) = (A_{1+j}, ..., A_{r+j})`, indices mod `r`.
    pub fn shift(&self, j: usize) -> MultiHom {
        let r = self.rank();
        let j = j % r;
        Self { parts: (0..r).map(|i| self.parts[(i + j) % r].clone()).collect() }
    }

    /// `shift(self, j) <= other`, without materializing the shifted tuple.
    #[inline]
    pub fn shifted_le(&self, j: usize, other: &MultiHom) -> bool {
        let r = self.rank();
        (0..r).all(|i| self.parts[(i + j) % r].is_subset(&other.parts[i]))
    }

    /// `other <= shift(self, j)`.
    #[inline]
    pub fn shifted_ge(&self, j: usize, other: &MultiHom) -> bool {
        let r = self.rank();
        (0..r).all(|i| other.parts[i].is_subset(&self.parts[(i + j) % r]))
    }

    pub fn orbit(&self) -> Vec<MultiHom> {
        (0..self.rank()).map(|j| self.shift(j)).collect()
    }

    pub fn to_indices(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(Bitset::to_vec).collect()
    }

    /// Applies a host vertex map to every part.
    pub fn map_vertices(&self, map: &[usize], target_n: usize) -> MultiHom {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| Bitset::from_indices(target_n, p.iter().map(|v| map[v])))
                .collect(),
        }
    }

    /// Compact JSON description, e.g. `[[0],[2,3]]`.
    pub fn describe(&self) -> String {
        serde_json::to_string(&self.to_indices()).expect("nested integer arrays serialize")
    }
}

impl Ord for MultiHom {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.parts.iter().zip(&other.parts) {
            match a.cmp_sorted(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for MultiHom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Enumerated `Hom_p(K_r, H)` in canonical order (lexicographic over the
/// tuple of sorted parts).
#[derive(Debug, Clone)]
pub struct HomPoset {
    host: Graph,
    r: usize,
    elements: Vec<MultiHom>,
    index: HashMap<MultiHom, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetStats {
    pub element_count: usize,
    /// `|A_1 ∪ ... ∪ A_r|` → number of elements of that size.
    pub size_histogram: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetExport {
    pub r: usize,
    pub host_vertex_count: usize,
    pub elements: Vec<Vec<Vec<usize>>>,
    pub stats: PosetStats,
}

impl HomPoset {
    pub fn enumerate(host: &Graph, r: usize) -> Result<Self, HomError> {
        Self::enumerate_with_cap(host, r, DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(host: &Graph, r: usize, cap: usize) -> Result<Self, HomError> {
        if r < 2 {
            return Err(HomError::RankTooSmall(r));
        }
        let projected = projected_size(host, r, cap)?;
        let mut elements = Vec::new();
        let mut parts = Vec::with_capacity(r);
        let all = Bitset::full(host.vertex_count());
        let complete = grow_part(host, r, &all, &mut parts, &mut elements, cap);
        if !complete {
            return Err(HomError::CapExceeded { projected: projected.max(cap as u128 + 1), cap });
        }
        elements.sort_unstable();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Self { host: host.clone(), r, elements, index })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[MultiHom] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MultiHom {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &MultiHom) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Poset indices of `shift(x, j)` for every element `x`.
    pub fn shift_permutation(&self, j: usize) -> Vec<usize> {
        self.elements
            .iter()
            .map(|e| self.index_of(&e.shift(j)).expect("Hom poset is closed under the Z_r action"))
            .collect()
    }

    pub fn stats(&self) -> PosetStats {
        let mut size_histogram = BTreeMap::new();
        for e in &self.elements {
            *size_histogram.entry(e.support_size()).or_insert(0) += 1;
        }
        PosetStats { element_count: self.len(), size_histogram }
    }

    pub fn export(&self) -> PosetExport {
        PosetExport {
            r: self.r,
            host_vertex_count: self.host.vertex_count(),
            elements: self.elements.iter().map(MultiHom::to_indices).collect(),
            stats: self.stats(),
        }
    }
}

/// Upper bound on the element count: each of parts `2..r` is a non-empty subset
/// of the common neighbourhood of `A_1`. Exact for `r = 2`.
fn projected_size(host: &Graph, r: usize, cap: usize) -> Result<u128, HomError> {
    let n = host.vertex_count();
    let mut total: u128 = 0;
    let mut branches = 0usize;
    let mut stack: Vec<(usize, Bitset)> = (0..n).map(|v| (v, host.neighbors(v).clone())).collect();
    stack.reverse();
    while let Some((last, nbhd)) = stack.pop() {
        let m = nbhd.count() as u32;
        if m == 0 {
            continue;
        }
        branches += 1;
        if branches > cap {
            return Err(HomError::CapExceeded { projected: total.max(branches as u128), cap });
        }
        let per_part = if m >= 127 { u128::MAX } else { (1u128 << m) - 1 };
        total = total.saturating_add(per_part.saturating_pow(r as u32 - 1));
        for v in last + 1..n {
            let next = nbhd.intersection(host.neighbors(v));
            if !next.is_empty() {
                stack.push((v, next));
            }
        }
    }
    Ok(total)
}

/// Depth-first growth of the current part from `cand`, then recursion into the
/// next part within the shrinking common neighbourhood. Returns `false` once
/// more than `cap` elements have been produced.
fn grow_part(
    host: &Graph,
    r: usize,
    cand: &Bitset,
    parts: &mut Vec<Bitset>,
    out: &mut Vec<MultiHom>,
    cap: usize,
) -> bool {
    let n = host.vertex_count();
    let last_part = parts.len() + 1 == r;
    // (part so far, common neighbourhood within cand, next vertex allowed)
    let mut stack: Vec<(Bitset, Bitset, usize)> = Vec::new();
    for v in cand.iter().collect::<Vec<_>>().into_iter().rev() {
        stack.push((Bitset::from_indices(n, [v]), cand.intersection(host.neighbors(v)), v + 1));
    }
    while let Some((part, nbhd, next)) = stack.pop() {
        if !last_part && nbhd.is_empty() {
            continue;
        }
        // children pushed first so they pop after this node's subtree is emitted
        let mut children = Vec::new();
        for v in cand.iter().filter(|&v| v >= next) {
            // v must stay adjacent to every earlier part; cand guarantees that
            let mut child = part.clone();
            child.insert(v);
            children.push((child, nbhd.intersection(host.neighbors(v)), v + 1));
        }
        if last_part {
            let mut full = parts.clone();
            full.push(part);
            out.push(MultiHom { parts: full });
            if out.len() > cap {
                return false;
            }
        } else {
            parts.push(part);
            let ok = grow_part(host, r, &nbhd, parts, out, cap);
            parts.pop();
            if !ok {
                return false;
            }
        }
        stack.extend(children.into_iter().rev());
    }
    true
}
