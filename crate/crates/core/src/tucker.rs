//! `Z_r`-Tucker machinery for compatibility graphs of `Hom_p(K_r, KG(n, k))`.
//!
//! Signed vectors are points of `(Z_r ∪ {0})^n \ {0}`. An entry is stored as
//! an exponent: `0` for zero, `1..r` for `ω^1, ..., ω^r`, where `ω^r = e`.
//! Class `X_i` (for `i` in `1..=r`) is the set of positions holding `ω^i`, and
//! tuple position `i` of a Hom-poset element corresponds to class `i`.
//!
//! A coloring `c` of the compatibility graph yields the λ-labeling with three
//! cases by class sizes:
//! * all `|X_i| < k`: level `Σ|X_i|`, sign of the first nonzero entry;
//! * mixed: level `r(k-1) + #{i : |X_i| >= k}`, sign of the first nonzero
//!   entry whose class is large;
//! * all `|X_i| >= k`: the rotation `t` minimizing `c(binom(ω^t.x))`, ties
//!   broken by the lexicographically least rotated vector; level
//!   `rk - 1 + c(...)`, sign `-t`.
//!
//! An equivariant labeling with levels below `n` must have a bad pair
//! `x <= y` with equal levels and different signs. For a proper coloring, a
//! bad pair in the third case is impossible (it would exhibit a monochromatic
//! edge), which is what [`refute_or_certify`] checks and reports.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::compat::CompatGraph;
use crate::graph::{kneser_graph, kneser_vertices, GraphError};
use crate::hom::{HomError, HomPoset, MultiHom, DEFAULT_ELEMENT_CAP};
use crate::solvers::{check_proper, kneser_canonical_coloring, pullback_coloring, Coloring, ColoringError};

pub const DEFAULT_SWEEP_CAP: u64 = 1_000_000;
pub const LABELING_EXPORT_CAP: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuckerError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("signed vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("the zero vector has no label")]
    ZeroVector,
    #[error("entry {entry} at position {position} is outside 0..={r}")]
    BadEntry { position: usize, entry: u8, r: usize },
    #[error("class {class} has {size} elements, fewer than k = {k}")]
    ClassTooSmall { class: usize, size: usize, k: usize },
    #[error("sweep of {size} vectors exceeds the cap of {cap}")]
    SweepCap { size: u128, cap: u64 },
    #[error("coloring has no color for {0}")]
    MissingVertex(String),
    #[error("labeling is not equivariant at {x} under shift {shift}")]
    NotEquivariant { x: String, shift: usize },
    #[error("certificate failed re-verification: {0}")]
    Certificate(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A nonzero vector over `Z_r ∪ {0}`, entries stored as exponents `0..=r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedVector {
    entries: Vec<u8>,
}

impl SignedVector {
    pub fn new(entries: Vec<u8>, r: usize) -> Result<Self, TuckerError> {
        if let Some((position, &entry)) = entries.iter().enumerate().find(|(_, &e)| e as usize > r) {
            return Err(TuckerError::BadEntry { position, entry, r });
        }
        if entries.iter().all(|&e| e == 0) {
            return Err(TuckerError::ZeroVector);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }
}

impl fmt::Debug for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

impl fmt::Display for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for SignedVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Group element of an entry exponent: `ω^i` with `ω^r = ω^0`.
#[inline]
fn group_element(entry: u8, r: usize) -> usize {
    entry as usize % r
}

/// `x <= y`: every nonzero entry of `x` equals the entry of `y` there.
pub fn sv_leq(x: &SignedVector, y: &SignedVector) -> Result<bool, TuckerError> {
    if x.len() != y.len() {
        return Err(TuckerError::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.entries.iter().zip(&y.entries).all(|(&a, &b)| a == 0 || a == b))
}

/// `ω^j.x`: multiplies each nonzero entry by `ω^j`.
pub fn sv_act(x: &SignedVector, j: usize, r: usize) -> SignedVector {
    SignedVector { entries: x.entries.iter().map(|&e| act_entry(e, j, r)).collect() }
}

#[inline]
fn act_entry(e: u8, j: usize, r: usize) -> u8 {
    if e == 0 {
        0
    } else {
        ((e as usize - 1 + j) % r + 1) as u8
    }
}

/// Classes `X_1..X_r` as 0-based position lists; `out[i - 1]` is `X_i`.
pub fn classes(x: &SignedVector, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); r];
    for (s, &e) in x.entries.iter().enumerate() {
        if e != 0 {
            out[e as usize - 1].push(s);
        }
    }
    out
}

/// Entry order used by the case-3 tie-break: `0 < e < ω < ... < ω^{r-1}`.
fn tie_key(e: u8, r: usize) -> usize {
    match e as usize {
        0 => 0,
        x if x == r => 1,
        x => x + 1,
    }
}

fn cmp_rotations(a: &SignedVector, b: &SignedVector, r: usize) -> Ordering {
    a.entries.iter().map(|&e| tie_key(e, r)).cmp(b.entries.iter().map(|&e| tie_key(e, r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TuckerLabel {
    /// Exponent `t` of `ω^t`, in `0..r`.
    pub sign: usize,
    pub level: usize,
}

impl TuckerLabel {
    pub fn act(self, j: usize, r: usize) -> TuckerLabel {
        TuckerLabel { sign: (self.sign + j) % r, level: self.level }
    }
}

/// Enumeration of `(Z_r ∪ {0})^n \ {0}` by base-`(r+1)` code; code order is
/// lexicographic order on entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VectorSpace {
    pub n: usize,
    pub r: usize,
}

impl VectorSpace {
    pub fn new(n: usize, r: usize, cap: u64) -> Result<Self, TuckerError> {
        if n == 0 || r < 2 {
            return Err(TuckerError::InvalidParams(format!("need n >= 1 and r >= 2, got n={n}, r={r}")));
        }
        let size = (r as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(TuckerError::SweepCap { size, cap });
        }
        Ok(Self { n, r })
    }

    /// Number of codes, including the zero vector at code 0.
    pub fn codes(&self) -> usize {
        (self.r + 1).pow(self.n as u32)
    }

    pub fn decode(&self, mut code: usize) -> SignedVector {
        let base = self.r + 1;
        let mut entries = vec![0u8; self.n];
        for slot in entries.iter_mut().rev() {
            *slot = (code % base) as u8;
            code /= base;
        }
        SignedVector { entries }
    }

    pub fn encode(&self, x: &SignedVector) -> usize {
        x.entries.iter().fold(0, |acc, &e| acc * (self.r + 1) + e as usize)
    }

    pub fn vectors(&self) -> impl Iterator<Item = SignedVector> + '_ {
        (1..self.codes()).map(|c| self.decode(c))
    }
}

/// A total labeling of the nonzero vectors, indexed by code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    space: VectorSpace,
    labels: Vec<TuckerLabel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelingEntry {
    pub x: SignedVector,
    pub sign: usize,
    pub level: usize,
}

impl Labeling {
    pub fn from_fn(
        space: VectorSpace,
        mut f: impl FnMut(&SignedVector) -> Result<TuckerLabel, TuckerError>,
    ) -> Result<Self, TuckerError> {
        let labels = space.vectors().map(|x| f(&x)).collect::<Result<_, _>>()?;
        Ok(Self { space, labels })
    }

    pub fn space(&self) -> VectorSpace {
        self.space
    }

    pub fn get(&self, x: &SignedVector) -> TuckerLabel {
        self.labels[self.space.encode(x) - 1]
    }

    fn by_code(&self, code: usize) -> TuckerLabel {
        self.labels[code - 1]
    }

    pub fn max_level(&self) -> usize {
        self.labels.iter().map(|l| l.level).max().unwrap_or(0)
    }

    pub fn export(&self) -> Result<Vec<LabelingEntry>, TuckerError> {
        let size = self.labels.len() as u64;
        if size > LABELING_EXPORT_CAP {
            return Err(TuckerError::SweepCap { size: size as u128, cap: LABELING_EXPORT_CAP });
        }
        Ok(self
            .space
            .vectors()
            .zip(&self.labels)
            .map(|(x, l)| LabelingEntry { x, sign: l.sign, level: l.level })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceViolation {
    pub x: SignedVector,
    pub shift: usize,
    /// `λ(ω^shift.x)`
    pub label_of_shifted: TuckerLabel,
    /// `ω^shift.λ(x)`
    pub shifted_label: TuckerLabel,
}

/// Exhaustively checks `λ(ω^j.x) = ω^j.λ(x)`; returns the first violation.
pub fn check_equivariance(labeling: &Labeling) -> Option<EquivarianceViolation> {
    let space = labeling.space;
    let r = space.r;
    for code in 1..space.codes() {
        let x = space.decode(code);
        let lx = labeling.by_code(code);
        for j in 1..r {
            let jx = sv_act(&x, j, r);
            let got = labeling.get(&jx);
            let want = lx.act(j, r);
            if got != want {
                return Some(EquivarianceViolation { x, shift: j, label_of_shifted: got, shifted_label: want });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPair {
    pub x: SignedVector,
    pub y: SignedVector,
    /// Non-identity exponent with `λ(x) = ω^g.λ(y)`.
    pub g: usize,
    pub label_x: TuckerLabel,
    pub label_y: TuckerLabel,
}

/// Scans all pairs `x <= y` (each `y` in lexicographic order, then every `x`
/// obtained by zeroing a proper subset of `y`'s support, by mask order) for
/// equal levels with different signs.
pub fn find_bad_pair(labeling: &Labeling) -> Result<Option<BadPair>, TuckerError> {
    if let Some(v) = check_equivariance(labeling) {
        return Err(TuckerError::NotEquivariant { x: v.x.to_string(), shift: v.shift });
    }
    let space = labeling.space;
    let r = space.r;
    let base = r + 1;
    let place: Vec<usize> = (0..space.n).map(|s| base.pow((space.n - 1 - s) as u32)).collect();
    for ycode in 1..space.codes() {
        let y = space.decode(ycode);
        let ly = labeling.by_code(ycode);
        let support: Vec<usize> = (0..space.n).filter(|&s| y.entries[s] != 0).collect();
        let full = (1u64 << support.len()) - 1;
        for mask in 1..full {
            let xcode = support
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .fold(ycode, |c, (_, &s)| c - y.entries[s] as usize * place[s]);
            let lx = labeling.by_code(xcode);
            if lx.level == ly.level && lx.sign != ly.sign {
                return Ok(Some(BadPair {
                    x: space.decode(xcode),
                    y,
                    g: (lx.sign + r - ly.sign) % r,
                    label_x: lx,
                    label_y: ly,
                }));
            }
        }
    }
    Ok(None)
}

/// Random labeling, equivariant by construction: one uniformly random label per
/// orbit representative (the first vector of each orbit in code order),
/// extended along the orbit.
pub fn random_equivariant_labeling(space: VectorSpace, max_level: usize, seed: u64) -> Result<Labeling, TuckerError> {
    if max_level == 0 {
        return Err(TuckerError::InvalidParams("max_level must be at least 1".into()));
    }
    let r = space.r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<Option<TuckerLabel>> = vec![None; space.codes()];
    for code in 1..space.codes() {
        if labels[code].is_some() {
            continue;
        }
        let base = TuckerLabel { sign: rng.gen_range(0..r), level: rng.gen_range(1..=max_level) };
        let x = space.decode(code);
        for j in 0..r {
            labels[space.encode(&sv_act(&x, j, r))] = Some(base.act(j, r));
        }
    }
    Ok(Labeling { space, labels: labels.into_iter().skip(1).map(|l| l.expect("every orbit labeled")).collect() })
}

/// Level = number of nonzero entries, sign = first nonzero entry. Levels reach
/// `n` and no bad pair exists: `x <= y` with equal support sizes forces `x = y`.
pub fn support_labeling(space: VectorSpace) -> Labeling {
    let r = space.r;
    Labeling::from_fn(space, |x| {
        let first = x.entries.iter().copied().find(|&e| e != 0).expect("nonzero vector");
        Ok(TuckerLabel { sign: group_element(first, r), level: x.support_size() })
    })
    .expect("infallible")
}

/// Seeded uniform coloring with colors `1..=colors`.
pub fn random_coloring(len: usize, colors: usize, seed: u64) -> Result<Coloring, ColoringError> {
    if colors == 0 {
        return Err(ColoringError::InvalidParameter("need at least one color".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Coloring::new((0..len).map(|_| rng.gen_range(1..=colors)).collect(), colors)
}

/// The compatibility graph `C(Hom(K_r, KG(n, k)))` with the lookups the
/// λ-labeling needs.
#[derive(Debug, Clone)]
pub struct TuckerInstance {
    n: usize,
    k: usize,
    r: usize,
    /// Ground-set mask of each Kneser vertex.
    kneser_masks: Vec<u64>,
    compat: CompatGraph,
}

impl TuckerInstance {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self, TuckerError> {
        Self::with_cap(n, k, r, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(n: usize, k: usize, r: usize, element_cap: usize) -> Result<Self, TuckerError> {
        if r < 2 || k < 1 || n < r * k {
            return Err(TuckerError::InvalidParams(format!(
                "need r >= 2, k >= 1 and n >= rk, got r={r}, k={k}, n={n}"
            )));
        }
        let kneser_masks = kneser_vertices(n, k)?.iter().map(|v| v.mask()).collect();
        let host = kneser_graph(n, k)?;
        let poset = HomPoset::enumerate_with_cap(&host, r, element_cap)?;
        Ok(Self { n, k, r, kneser_masks, compat: CompatGraph::build(poset) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn compat(&self) -> &CompatGraph {
        &self.compat
    }

    pub fn space(&self, cap: u64) -> Result<VectorSpace, TuckerError> {
        VectorSpace::new(self.n, self.r, cap)
    }

    /// `(A_1, ..., A_r)` with `A_i` the `k`-subsets of `X_i`, as Kneser vertex sets.
    pub fn binom_tuple(&self, x: &SignedVector) -> Result<MultiHom, TuckerError> {
        if x.len() != self.n {
            return Err(TuckerError::LengthMismatch(x.len(), self.n));
        }
        let nv = self.kneser_masks.len();
        let parts = classes(x, self.r)
            .iter()
            .enumerate()
            .map(|(i, class)| {
                if class.len() < self.k {
                    return Err(TuckerError::ClassTooSmall { class: i + 1, size: class.len(), k: self.k });
                }
                let ground = class.iter().fold(0u64, |m, &s| m | 1 << s);
                Ok(Bitset::from_indices(
                    nv,
                    self.kneser_masks.iter().enumerate().filter(|(_, &m)| m & !ground == 0).map(|(v, _)| v),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiHom::from_parts(parts))
    }

    /// Compatibility-graph vertex of `binom_tuple(x)`.
    pub fn binom_vertex(&self, x: &SignedVector) -> Result<usize, TuckerError> {
        let m = self.binom_tuple(x)?;
        self.compat.vertex_of(&m).ok_or_else(|| TuckerError::MissingVertex(m.describe()))
    }

    /// Every vertex of the form `binom_tuple(x)`: the only vertices whose colors
    /// the λ-labeling reads. Sorted.
    pub fn binomial_core(&self) -> Result<Vec<usize>, TuckerError> {
        let space = VectorSpace::new(self.n, self.r, u64::MAX)?;
        let mut out = BTreeSet::new();
        for x in space.vectors() {
            if classes(&x, self.r).iter().all(|c| c.len() >= self.k) {
                out.insert(self.binom_vertex(&x)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Pullback of the canonical `(n - 2k + 2)`-coloring of `KG(n, k)`.
    pub fn pullback_coloring(&self) -> Result<Coloring, TuckerError> {
        let host = kneser_canonical_coloring(self.n, self.k)?;
        Ok(pullback_coloring(&self.compat, &host)?)
    }
}

/// Case-3 rotation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Lexicographically least rotated vector among minimizers (equivariant).
    #[default]
    LexLeast,
    /// Smallest shift among minimizers. Not equivariant; kept to exercise the checker.
    SmallestShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaCase {
    AllSmall,
    Mixed,
    AllLarge,
}

pub fn lambda_case(x: &SignedVector, r: usize, k: usize) -> LambdaCase {
    let sizes: Vec<usize> = classes(x, r).iter().map(Vec::len).collect();
    if sizes.iter().all(|&s| s < k) {
        LambdaCase::AllSmall
    } else if sizes.iter().all(|&s| s >= k) {
        LambdaCase::AllLarge
    } else {
        LambdaCase::Mixed
    }
}

/// `n`, `k`, `r` plus a (purportedly proper) coloring of the compatibility graph.
#[derive(Debug, Clone)]
pub struct TuckerParams<'a> {
    pub instance: &'a TuckerInstance,
    pub coloring: &'a Coloring,
    pub tie_break: TieBreak,
}

impl<'a> TuckerParams<'a> {
    pub fn new(instance: &'a TuckerInstance, coloring: &'a Coloring) -> Result<Self, TuckerError> {
        let expected = instance.compat.vertex_count();
        if coloring.len() != expected {
            return Err(ColoringError::Uncovered { expected, got: coloring.len() }.into());
        }
        Ok(Self { instance, coloring, tie_break: TieBreak::LexLeast })
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn color_count(&self) -> usize {
        self.coloring.color_count()
    }

    /// Case-3 rotation: returns `(t*, color of binom(ω^t*.x))`.
    fn best_rotation(&self, x: &SignedVector) -> Result<(usize, usize), TuckerError> {
        let r = self.instance.r;
        let mut best: Option<(usize, usize, SignedVector)> = None;
        for t in 0..r {
            let z = sv_act(x, t, r);
            let c = self.coloring.color(self.instance.binom_vertex(&z)?);
            let better = match &best {
                None => true,
                Some((_, bc, bz)) => {
                    c < *bc
                        || (c == *bc
                            && self.tie_break == TieBreak::LexLeast
                            && cmp_rotations(&z, bz, r) == Ordering::Less)
                }
            };
            if better {
                best = Some((t, c, z));
            }
        }
        let (t, c, _) = best.expect("r >= 2 rotations");
        Ok((t, c))
    }

    pub fn label(&self, x: &SignedVector) -> Result<TuckerLabel, TuckerError> {
        let (n, k, r) = (self.instance.n, self.instance.k, self.instance.r);
        if x.len() != n {
            return Err(TuckerError::LengthMismatch(x.len(), n));
        }
        if x.entries.iter().all(|&e| e == 0) {
            return Err(TuckerError::ZeroVector);
        }
        let sizes: Vec<usize> = classes(x, r).iter().map(Vec::len).collect();
        let label = match lambda_case(x, r, k) {
            LambdaCase::AllSmall => {
                let first = x.entries.iter().copied().find(|&e| e != 0).expect("nonzero");
                TuckerLabel { sign: group_element(first, r), level: sizes.iter().sum() }
            }
            LambdaCase::Mixed => {
                let first = x
                    .entries
                    .iter()
                    .copied()
                    .find(|&e| e != 0 && sizes[e as usize - 1] >= k)
                    .expect("some class is large");
                let large = sizes.iter().filter(|&&s| s >= k).count();
                TuckerLabel { sign: group_element(first, r), level: r * (k - 1) + large }
            }
            LambdaCase::AllLarge => {
                let (t, c) = self.best_rotation(x)?;
                TuckerLabel { sign: (r - t) % r, level: r * k - 1 + c }
            }
        };
        Ok(label)
    }

    pub fn labeling(&self, cap: u64) -> Result<Labeling, TuckerError> {
        let space = self.instance.space(cap)?;
        Labeling::from_fn(space, |x| self.label(x))
    }
}

/// Level arithmetic behind a no-bad-pair verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundArithmetic {
    pub colors: usize,
    /// `C + r(k - 1)`: the largest level a proper coloring can produce.
    pub level_ceiling: usize,
    pub max_level: usize,
    /// `n - r(k - 1)`.
    pub chromatic_lower_bound: isize,
    /// `max_level >= n`, as the Tucker-type lemma demands of a bad-pair-free labeling.
    pub lemma_consistent: bool,
    /// `C >= n - r(k - 1)`.
    pub bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonochromaticEdge {
    pub edge: (usize, usize),
    pub color: usize,
    pub elements: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    NoBadPair { bound: BoundArithmetic },
    Case3BadPair { pair: BadPair, certificate: MonochromaticEdge },
    AnomalousBadPair { pair: BadPair, case_x: LambdaCase, case_y: LambdaCase, rk_minus_1: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoBadPair { .. } => "NoBadPair",
            Verdict::Case3BadPair { .. } => "Case3BadPair",
            Verdict::AnomalousBadPair { .. } => "AnomalousBadPair",
        }
    }
}

/// Builds λ from the coloring, searches for a bad pair, and classifies it.
/// Case-3 certificates are re-verified against the poset order and the
/// compatibility graph before being returned.
pub fn refute_or_certify(params: &TuckerParams<'_>, sweep_cap: u64) -> Result<Verdict, TuckerError> {
    let inst = params.instance;
    let (n, k, r) = (inst.n, inst.k, inst.r);
    let labeling = params.labeling(sweep_cap)?;
    let Some(pair) = find_bad_pair(&labeling)? else {
        let colors = params.color_count();
        let max_level = labeling.max_level();
        return Ok(Verdict::NoBadPair {
            bound: BoundArithmetic {
                colors,
                level_ceiling: colors + r * (k - 1),
                max_level,
                chromatic_lower_bound: n as isize - (r * (k - 1)) as isize,
                lemma_consistent: max_level >= n,
                bound_holds: colors + r * (k - 1) >= n,
            },
        });
    };
    let case_x = lambda_case(&pair.x, r, k);
    let case_y = lambda_case(&pair.y, r, k);
    if pair.label_x.level < r * k {
        return Ok(Verdict::AnomalousBadPair { pair, case_x, case_y, rk_minus_1: r * k - 1 });
    }
    if case_x != LambdaCase::AllLarge || case_y != LambdaCase::AllLarge {
        return Err(TuckerError::Certificate(format!("level {} above rk - 1 outside case 3", pair.label_x.level)));
    }
    let certificate = verify_case3(params, &pair)?;
    Ok(Verdict::Case3BadPair { pair, certificate })
}

fn verify_case3(params: &TuckerParams<'_>, pair: &BadPair) -> Result<MonochromaticEdge, TuckerError> {
    let inst = params.instance;
    let r = inst.r;
    let ux = sv_act(&pair.x, (r - pair.label_x.sign) % r, r);
    let uy = sv_act(&pair.y, (r - pair.label_y.sign) % r, r);
    let a = inst.binom_tuple(&ux)?;
    let b = inst.binom_tuple(&uy)?;
    let (va, vb) = (inst.binom_vertex(&ux)?, inst.binom_vertex(&uy)?);
    if va == vb {
        return Err(TuckerError::Certificate("both ends are the same vertex".into()));
    }
    let comparable = (1..r).any(|j| {
        let sb = b.shift(j);
        sb.le(&a) || a.le(&sb)
    });
    if !comparable {
        return Err(TuckerError::Certificate(format!("{a:?} and {b:?} are not compatible")));
    }
    if !inst.compat.graph().has_edge(va, vb) {
        return Err(TuckerError::Certificate(format!("edge ({va}, {vb}) missing from the graph")));
    }
    let (ca, cb) = (params.coloring.color(va), params.coloring.color(vb));
    if ca != cb {
        return Err(TuckerError::Certificate(format!("colors differ: {ca} vs {cb}")));
    }
    let level = r * inst.k - 1 + ca;
    if level != pair.label_x.level || level != pair.label_y.level {
        return Err(TuckerError::Certificate(format!("level {level} does not match the pair")));
    }
    let edge = (va.min(vb), va.max(vb));
    debug_assert!(check_proper(inst.compat.graph(), params.coloring).is_err());
    Ok(MonochromaticEdge { edge, color: ca, elements: (a.describe(), b.describe()) })
}
