//! Finitely presented infinite complexes, exposed only through their finite
//! truncations, together with the depth calculus.

use crate::complex::{combinations, FiniteOrderedComplex};
use crate::error::{Error, Result};
use crate::rng::set_coin;

/// Arithmetic vertex stream `start, start+step, start+2*step, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexStream {
    pub start: u32,
    pub step: u32,
}

impl VertexStream {
    pub fn naturals() -> Self {
        VertexStream { start: 0, step: 1 }
    }

    pub fn evens() -> Self {
        VertexStream { start: 0, step: 2 }
    }

    fn label(&self, index: usize) -> u32 {
        self.start + self.step * index as u32
    }

    /// Position of a label in the stream, if it ever appears.
    fn position_of(&self, label: u32) -> Option<usize> {
        if label < self.start {
            return None;
        }
        let offset = label - self.start;
        if self.step == 0 {
            return None;
        }
        if offset.is_multiple_of(self.step) {
            Some((offset / self.step) as usize)
        } else {
            None
        }
    }
}

impl Default for VertexStream {
    fn default() -> Self {
        Self::naturals()
    }
}

/// An infinite complex `(A, S_A)` in one of five finite presentations.
/// Truncations are coherent: `truncate(m).approx(n) == truncate(n)` for
/// `n <= m`.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexOracle {
    /// All finite subsets of the stream are faces.
    FullSimplex { stream: VertexStream },
    /// Faces are the subsets of size at most `k`.
    KBoundedFull { k: usize, stream: VertexStream },
    /// Only singletons are faces (the Ellentuck identification of an
    /// infinite set with a pure-set pair).
    PureSet { stream: VertexStream },
    /// Faces of size below `k` are all present; each k-subset is a face
    /// independently with probability `bias`, decided by a stateless seeded
    /// coin over the subset's labels. This is the truncation-coherent
    /// presentation of a random k-polyhedron.
    SeededRandom { k: usize, seed: u64, bias: f64 },
    /// User-supplied consecutive truncations, coherence-checked on load.
    Explicit {
        truncations: Vec<FiniteOrderedComplex>,
    },
}

impl ComplexOracle {
    pub fn full_simplex() -> Self {
        ComplexOracle::FullSimplex {
            stream: VertexStream::naturals(),
        }
    }

    pub fn pure_set_naturals() -> Self {
        ComplexOracle::PureSet {
            stream: VertexStream::naturals(),
        }
    }

    pub fn k_bounded(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("face bound k must be at least 1"));
        }
        Ok(ComplexOracle::KBoundedFull {
            k,
            stream: VertexStream::naturals(),
        })
    }

    pub fn seeded_random(k: usize, seed: u64, bias: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("random streams need a face bound k >= 2"));
        }
        if !(bias > 0.0 && bias < 1.0) {
            return Err(Error::invalid("bias must lie strictly between 0 and 1"));
        }
        Ok(ComplexOracle::SeededRandom { k, seed, bias })
    }

    /// Builds an explicit oracle, validating that the stored truncations are
    /// consecutive approximations of one another.
    pub fn explicit(truncations: Vec<FiniteOrderedComplex>) -> Result<Self> {
        if truncations.is_empty() {
            return Err(Error::invalid("an explicit oracle needs at least one truncation"));
        }
        for (i, t) in truncations.iter().enumerate() {
            if t.len() != i + 1 {
                return Err(Error::invalid(format!(
                    "truncation #{} must have exactly {} vertices, found {}",
                    i,
                    i + 1,
                    t.len()
                )));
            }
        }
        for i in 0..truncations.len() - 1 {
            let derived = truncations[i + 1].approx(i + 1).expect("length checked");
            if derived != truncations[i] {
                return Err(Error::invalid(format!(
                    "truncations #{} and #{} are incoherent",
                    i,
                    i + 1
                )));
            }
        }
        Ok(ComplexOracle::Explicit { truncations })
    }

    /// The label of the stream vertex at `index`, if presented.
    pub fn vertex(&self, index: usize) -> Option<u32> {
        match self {
            ComplexOracle::FullSimplex { stream }
            | ComplexOracle::KBoundedFull { stream, .. }
            | ComplexOracle::PureSet { stream } => Some(stream.label(index)),
            ComplexOracle::SeededRandom { .. } => Some(index as u32),
            ComplexOracle::Explicit { truncations } => {
                let last = truncations.last().unwrap();
                last.vertices().get(index).copied()
            }
        }
    }

    /// How far this presentation can be truncated (None = unbounded).
    pub fn presented_length(&self) -> Option<usize> {
        match self {
            ComplexOracle::Explicit { truncations } => Some(truncations.len()),
            _ => None,
        }
    }

    /// The nth approximation as a finite complex with exactly `n` vertices.
    pub fn truncate(&self, n: usize) -> Result<FiniteOrderedComplex> {
        if n == 0 {
            return Ok(FiniteOrderedComplex::empty());
        }
        if let ComplexOracle::Explicit { truncations } = self {
            if n > truncations.len() {
                return Err(Error::invalid(format!(
                    "explicit oracle presents only {} truncations, requested {n}",
                    truncations.len()
                )));
            }
            return Ok(truncations[n - 1].clone());
        }
        let labels: Vec<u32> = (0..n)
            .map(|i| self.vertex(i).expect("arithmetic streams are total"))
            .collect();
        Ok(self.restrict_to_stream_labels(&labels))
    }

    /// The induced pair of the oracle on stream labels (must be presented
    /// stream vertices, strictly increasing).
    pub fn restrict_to(&self, labels: &[u32], horizon: usize) -> Result<FiniteOrderedComplex> {
        let mut labels = labels.to_vec();
        labels.sort_unstable();
        labels.dedup();
        for &v in &labels {
            if !matches!(self.stream_position(v, horizon), StreamPosition::At(_)) {
                return Err(Error::invalid(format!(
                    "label {v} is outside the presented stream"
                )));
            }
        }
        if let ComplexOracle::Explicit { truncations } = self {
            return truncations.last().unwrap().restrict(&labels);
        }
        Ok(self.restrict_to_stream_labels(&labels))
    }

    /// Direct antichain construction of the induced pair on validated
    /// stream labels (non-explicit kinds).
    fn restrict_to_stream_labels(&self, labels: &[u32]) -> FiniteOrderedComplex {
        let n = labels.len();
        if n == 0 {
            return FiniteOrderedComplex::empty();
        }
        match self {
            ComplexOracle::FullSimplex { .. } => FiniteOrderedComplex::simplex_on(labels),
            ComplexOracle::PureSet { .. } => FiniteOrderedComplex::pure_set(labels),
            ComplexOracle::KBoundedFull { k, .. } => {
                if *k >= n {
                    return FiniteOrderedComplex::simplex_on(labels);
                }
                // the k-subsets form a covering antichain; sort into colex
                let mut facets: Vec<Vec<u32>> = combinations(n, *k)
                    .into_iter()
                    .map(|combo| combo.iter().map(|&i| labels[i]).collect())
                    .collect();
                facets.sort_by(|a, b| crate::complex::colex_cmp(a, b));
                FiniteOrderedComplex::from_facets_unchecked(labels.to_vec(), facets)
            }
            ComplexOracle::SeededRandom { k, seed, bias } => {
                if n < *k {
                    return FiniteOrderedComplex::simplex_on(labels);
                }
                // facets: heads k-subsets, plus the (k-1)-subsets not below
                // any of them; each layer is an antichain of a single size
                let heads: Vec<Vec<u32>> = combinations(n, *k)
                    .into_iter()
                    .map(|combo| combo.iter().map(|&i| labels[i]).collect::<Vec<u32>>())
                    .filter(|face| set_coin(*seed, face, *bias))
                    .collect();
                let head_set: std::collections::HashSet<&[u32]> =
                    heads.iter().map(|f| f.as_slice()).collect();
                let mut facets: Vec<Vec<u32>> = Vec::new();
                for combo in combinations(n, *k - 1) {
                    let face: Vec<u32> = combo.iter().map(|&i| labels[i]).collect();
                    let covered = labels.iter().any(|&v| {
                        if face.binary_search(&v).is_ok() {
                            return false;
                        }
                        let mut sup = face.clone();
                        let at = sup.partition_point(|&x| x < v);
                        sup.insert(at, v);
                        head_set.contains(sup.as_slice())
                    });
                    if !covered {
                        facets.push(face);
                    }
                }
                facets.sort_by(|a, b| crate::complex::colex_cmp(a, b));
                let mut heads = heads;
                heads.sort_by(|a, b| crate::complex::colex_cmp(a, b));
                facets.extend(heads);
                FiniteOrderedComplex::from_facets_unchecked(labels.to_vec(), facets)
            }
            ComplexOracle::Explicit { .. } => unreachable!("handled by the callers"),
        }
    }

    /// Where the label occurs in the vertex stream, searching up to
    /// `horizon` positions.
    pub fn stream_position(&self, label: u32, horizon: usize) -> StreamPosition {
        match self {
            ComplexOracle::FullSimplex { stream }
            | ComplexOracle::KBoundedFull { stream, .. }
            | ComplexOracle::PureSet { stream } => match stream.position_of(label) {
                Some(i) if i < horizon => StreamPosition::At(i),
                Some(_) => StreamPosition::HorizonExhausted,
                None => StreamPosition::Absent,
            },
            ComplexOracle::SeededRandom { .. } => {
                let i = label as usize;
                if i < horizon {
                    StreamPosition::At(i)
                } else {
                    StreamPosition::HorizonExhausted
                }
            }
            ComplexOracle::Explicit { truncations } => {
                let last = truncations.last().unwrap();
                match last.position_of(label) {
                    Some(i) if i < horizon => StreamPosition::At(i),
                    Some(_) => StreamPosition::HorizonExhausted,
                    None => {
                        if last.max_vertex().is_none_or(|m| label > m) {
                            // the presentation ends before reaching the label
                            StreamPosition::HorizonExhausted
                        } else {
                            StreamPosition::Absent
                        }
                    }
                }
            }
        }
    }

    /// Face membership test by the presentation's semantics, without
    /// materializing a truncation. Labels beyond the presented stream yield
    /// `None` (unknown).
    pub fn contains_face(&self, u: &[u32], horizon: usize) -> Option<bool> {
        if u.is_empty() {
            return Some(true);
        }
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        for &v in &u {
            match self.stream_position(v, horizon) {
                StreamPosition::At(_) => {}
                StreamPosition::Absent => return Some(false),
                StreamPosition::HorizonExhausted => return None,
            }
        }
        match self {
            ComplexOracle::FullSimplex { .. } => Some(true),
            ComplexOracle::KBoundedFull { k, .. } => Some(u.len() <= *k),
            ComplexOracle::PureSet { .. } => Some(u.len() <= 1),
            ComplexOracle::SeededRandom { k, seed, bias } => Some(match u.len() {
                l if l < *k => true,
                l if l == *k => set_coin(*seed, &u, *bias),
                _ => false,
            }),
            ComplexOracle::Explicit { truncations } => {
                Some(truncations.last().unwrap().contains_face(&u))
            }
        }
    }

    /// The induced pair `(y, S_A | y)` on a small label set drawn from the
    /// presented stream.
    pub fn induced_pair(&self, y: &[u32], horizon: usize) -> Result<FiniteOrderedComplex> {
        let mut y = y.to_vec();
        y.sort_unstable();
        y.dedup();
        if y.len() > 16 {
            return Err(Error::limit("induced pairs are built on at most 16 labels"));
        }
        for &v in &y {
            if !matches!(self.stream_position(v, horizon), StreamPosition::At(_)) {
                return Err(Error::invalid(format!(
                    "label {v} is outside the presented stream"
                )));
            }
        }
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for mask in 1u32..(1 << y.len()) {
            if mask.count_ones() < 2 {
                continue;
            }
            let subset: Vec<u32> = y
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            if self.contains_face(&subset, horizon) == Some(true) {
                gens.push(subset);
            }
        }
        FiniteOrderedComplex::close_downward(&gens, &y)
    }
}

/// Outcome of a bounded stream search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPosition {
    At(usize),
    /// The stream provably never contains the label.
    Absent,
    /// The search ran out of presented stream before deciding.
    HorizonExhausted,
}

/// The depth of a finite approximation inside an oracle: the least `n` with
/// `a <=_fin r_n(A)`, or undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Defined(usize),
    /// `horizon_limited` distinguishes a definitive "never dominated" from
    /// a search that ran out of horizon.
    Undefined { horizon_limited: bool },
}

impl Depth {
    pub fn as_defined(&self) -> Option<usize> {
        match self {
            Depth::Defined(n) => Some(*n),
            Depth::Undefined { .. } => None,
        }
    }
}

/// Computes `depth_A(a)`. Because `<=_fin` forces `max(a)` to equal the last
/// vertex of the truncation, the only candidate is the position of `max(a)`
/// in the stream.
pub fn depth(a: &FiniteOrderedComplex, oracle: &ComplexOracle, horizon: usize) -> Result<Depth> {
    let top = a
        .max_vertex()
        .ok_or_else(|| Error::invalid("depth is undefined on the empty complex"))?;
    match oracle.stream_position(top, horizon) {
        StreamPosition::Absent => Ok(Depth::Undefined {
            horizon_limited: false,
        }),
        StreamPosition::HorizonExhausted => Ok(Depth::Undefined {
            horizon_limited: true,
        }),
        StreamPosition::At(i) => {
            let n = i + 1;
            let trunc = oracle.truncate(n)?;
            if a.leq(&trunc) {
                Ok(Depth::Defined(n))
            } else {
                Ok(Depth::Undefined {
                    horizon_limited: false,
                })
            }
        }
    }
}

/// Horizon-bounded pair order between oracles: sound for `false`,
/// provisional for `true`. Checks that the first `horizon` vertices of `b`
/// appear in `a`'s stream and that every facet of `b`'s truncation is a face
/// of `a`.
pub fn oracle_leq(b: &ComplexOracle, a: &ComplexOracle, horizon: usize) -> bool {
    let span = match b.presented_length() {
        Some(len) => len.min(horizon),
        None => horizon,
    };
    let trunc = match b.truncate(span) {
        Ok(t) => t,
        Err(_) => return false,
    };
    for &v in trunc.vertices() {
        if a.stream_position(v, horizon.max(span * 2)) == StreamPosition::Absent {
            return false;
        }
    }
    for facet in trunc.facets() {
        if a.contains_face(facet, horizon.max(span * 2)) == Some(false) {
            return false;
        }
    }
    true
}

/// Horizon-bounded mixed order: a finite complex below an oracle.
pub fn leq_finite_oracle(c: &FiniteOrderedComplex, a: &ComplexOracle, horizon: usize) -> bool {
    for &v in c.vertices() {
        if matches!(a.stream_position(v, horizon), StreamPosition::Absent) {
            return false;
        }
    }
    c.facets()
        .iter()
        .all(|f| a.contains_face(f, horizon) != Some(false))
}
