//! Compatibility graphs of Hom posets `Hom_p(K_r, H)`: construction, exact
//! clique and chromatic numbers, and the equivariant `Z_r`-Tucker labelings
//! used to lower-bound their chromatic number.

pub mod bitset;
pub mod compat;
pub mod formats;
pub mod graph;
pub mod hom;
pub mod solvers;
pub mod tucker;

pub use bitset::Bitset;
pub use compat::{induced_map, CompatError, CompatGraph};
pub use formats::{emit_dimacs, emit_graph6, parse_dimacs, parse_graph6, GraphFormat, ParseError};
pub use graph::{
    complete_graph, cycle_graph, girth, is_isomorphic_small, kneser_graph, kneser_vertices, mycielskian,
    path_graph, Girth, Graph,
    GraphError, KneserVertex,
};
pub use hom::{HomError, HomPoset, MultiHom};
pub use solvers::{
    check_proper, clique_number, degeneracy_order, dsatur_coloring, exact_chromatic_number, greedy_coloring,
    is_proper, kneser_canonical_coloring, pullback_coloring, representative_map, ChromaticOptions,
    ChromaticOutcome, ChromaticResult, CliqueResult, Coloring, ColoringError, SearchProgress,
};
pub use tucker::{
    check_equivariance, find_bad_pair, random_coloring, random_equivariant_labeling, refute_or_certify,
    support_labeling, sv_act, sv_leq, BadPair, Labeling, SignedVector, TieBreak, TuckerError,
    TuckerInstance, TuckerLabel, TuckerParams, Verdict, VectorSpace,
};
