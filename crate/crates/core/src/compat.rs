//! Compatibility graph of a `Z_r`-poset: `x ~ y` when `x` is comparable to
//! `g.y` for some non-identity `g`. Also the map on compatibility graphs
//! induced by a host homomorphism.

use thiserror::Error;

use crate::graph::Graph;
use crate::hom::{HomPoset, MultiHom};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompatError {
    #[error("vertex map is not a homomorphism: edge ({0}, {1}) is not preserved")]
    NotHomomorphism(usize, usize),
    #[error("vertex map has length {got}, host has {expected} vertices")]
    MapLength { expected: usize, got: usize },
    #[error("posets have different r ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("internal error: image {0} is missing from the target poset")]
    MissingImage(String),
}

/// Compatibility graph on an abstract poset of `len` elements. `action[j]` is
/// the permutation of element indices induced by the `j`-th group element
/// (`action[0]` is the identity), and `le(a, b)` is the order.
pub fn compat_from_action(
    len: usize,
    action: &[Vec<usize>],
    le: impl Fn(usize, usize) -> bool,
) -> Graph {
    debug_assert!(action[0].iter().enumerate().all(|(i, &p)| i == p));
    for x in 0..len {
        for perm in &action[1..] {
            debug_assert!(
                !le(x, perm[x]) && !le(perm[x], x),
                "action is not free at element {x}"
            );
        }
    }
    Graph::from_fn(len, |x, y| {
        action[1..].iter().any(|perm| {
            let gy = perm[y];
            le(gy, x) || le(x, gy)
        })
    })
}

/// `C_P` for `P = Hom_p(K_r, H)`. Vertex `i` is poset element `i`; labels
/// are the JSON descriptions of the elements.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    graph: Graph,
    poset: HomPoset,
}

impl CompatGraph {
    pub fn build(poset: HomPoset) -> Self {
        let r = poset.rank();
        let action: Vec<Vec<usize>> = (0..r).map(|j| poset.shift_permutation(j)).collect();
        let elements = poset.elements();
        let graph = compat_from_action(poset.len(), &action, |a, b| elements[a].le(&elements[b]));
        let graph = graph
            .with_labels(elements.iter().map(MultiHom::describe).collect())
            .expect("poset elements are distinct");
        Self { graph, poset }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn poset(&self) -> &HomPoset {
        &self.poset
    }

    pub fn rank(&self) -> usize {
        self.poset.rank()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn element(&self, v: usize) -> &MultiHom {
        self.poset.element(v)
    }

    pub fn vertex_of(&self, m: &MultiHom) -> Option<usize> {
        self.poset.index_of(m)
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Vertex map `C(Hom(K_r, H)) -> C(Hom(K_r, K))` induced by a homomorphism
/// `psi: H -> K`, sending `(A_1, ..., A_r)` to `(psi(A_1), ..., psi(A_r))`.
pub fn induced_map(psi: &[usize], source: &HomPoset, target: &HomPoset) -> Result<Vec<usize>, CompatError> {
    let h = source.host();
    if psi.len() != h.vertex_count() {
        return Err(CompatError::MapLength { expected: h.vertex_count(), got: psi.len() });
    }
    if source.rank() != target.rank() {
        return Err(CompatError::RankMismatch(source.rank(), target.rank()));
    }
    if psi.iter().any(|&v| v >= target.host().vertex_count()) {
        return Err(CompatError::MapLength { expected: target.host().vertex_count(), got: psi.len() });
    }
    h.check_homomorphism(target.host(), psi)
        .map_err(|(u, v)| CompatError::NotHomomorphism(u, v))?;
    let tn = target.host().vertex_count();
    source
        .elements()
        .iter()
        .map(|e| {
            let image = e.map_vertices(psi, tn);
            target.index_of(&image).ok_or_else(|| CompatError::MissingImage(image.describe()))
        })
        .collect()
}
