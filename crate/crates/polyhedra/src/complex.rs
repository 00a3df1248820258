//! Finite ordered complexes: a strictly increasing vertex sequence together
//! with a hereditary face family, stored by its facet antichain.
//!
//! The face family of `(x, S_x)` is determined by the maximal faces: a set is
//! a face exactly when it is contained in some facet. All singletons of the
//! vertex set are faces (the family covers its vertex set), and the empty
//! face is considered a member of every nonempty family but is never stored.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::guards::Guards;

/// A finite ordered polyhedron `(x, S_x)`.
///
/// Vertex labels are arbitrary naturals; equality is literal (labels matter).
/// Order-isomorphism is tested through [`FiniteOrderedComplex::canonicalize`].
/// The empty complex (no vertices, no facets) is a legal value: it is the
/// 0th approximation of everything.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteOrderedComplex {
    vertices: Vec<u32>,
    facets: Vec<Vec<u32>>,
}

/// Size first, then colexicographic: the canonical order on faces used for
/// facet storage, JSON output and flip streams.
pub fn colex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // both sorted ascending
    let mut i = 0;
    for &x in a {
        while i < b.len() && b[i] < x {
            i += 1;
        }
        if i == b.len() || b[i] != x {
            return false;
        }
        i += 1;
    }
    true
}

fn sorted_dedup(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Prune to the inclusion-maximal antichain and sort by (size, colex).
fn normalize_facets(sets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut sets: Vec<Vec<u32>> = sets.into_iter().map(sorted_dedup).collect();
    sets.sort_by(|a, b| colex_cmp(a, b));
    sets.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    // sorted by size ascending, so later sets never sit below earlier ones
    'next: for s in sets.into_iter().rev() {
        for kept in &out {
            if is_subset(&s, kept) {
                continue 'next;
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| colex_cmp(a, b));
    out
}

impl FiniteOrderedComplex {
    /// The empty complex.
    pub fn empty() -> Self {
        FiniteOrderedComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// The pure set on the given labels: only singleton faces.
    pub fn pure_set(labels: &[u32]) -> Self {
        let vertices = sorted_dedup(labels.to_vec());
        let facets = vertices.iter().map(|&v| vec![v]).collect();
        FiniteOrderedComplex { vertices, facets }
    }

    /// The full simplex on `{0, .., n-1}`.
    pub fn full_simplex(n: usize) -> Self {
        let labels: Vec<u32> = (0..n as u32).collect();
        Self::simplex_on(&labels)
    }

    /// The full simplex on the given labels.
    pub fn simplex_on(labels: &[u32]) -> Self {
        let vertices = sorted_dedup(labels.to_vec());
        if vertices.is_empty() {
            return Self::empty();
        }
        let facets = vec![vertices.clone()];
        FiniteOrderedComplex { vertices, facets }
    }

    /// The complete ordered graph on `{0, .., n-1}`: every pair is a face,
    /// no larger face.
    pub fn complete_graph(n: usize) -> Self {
        if n <= 1 {
            return Self::pure_set(&(0..n as u32).collect::<Vec<_>>());
        }
        let mut facets = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                facets.push(vec![i, j]);
            }
        }
        FiniteOrderedComplex {
            vertices: (0..n as u32).collect(),
            facets,
        }
    }

    /// Builds the complex whose family is the downward closure of the given
    /// sets together with all singletons of `vertex_set`. Facets are
    /// recomputed as the maximal antichain.
    pub fn close_downward(sets: &[Vec<u32>], vertex_set: &[u32]) -> Result<Self> {
        let vertices = sorted_dedup(vertex_set.to_vec());
        let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(sets.len() + vertices.len());
        for s in sets {
            let s = sorted_dedup(s.clone());
            if !is_subset(&s, &vertices) {
                return Err(Error::invalid(format!(
                    "set {s:?} is not contained in the vertex set"
                )));
            }
            if !s.is_empty() {
                candidates.push(s);
            }
        }
        for &v in &vertices {
            candidates.push(vec![v]);
        }
        Ok(FiniteOrderedComplex {
            vertices,
            facets: normalize_facets(candidates),
        })
    }

    /// Constructor for callers that already hold the canonical antichain
    /// (sorted by (size, colex), pairwise incomparable, covering). Cheap
    /// structural checks in debug builds only.
    pub(crate) fn from_facets_unchecked(vertices: Vec<u32>, facets: Vec<Vec<u32>>) -> Self {
        #[cfg(debug_assertions)]
        {
            debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
            debug_assert!(facets
                .windows(2)
                .all(|w| colex_cmp(&w[0], &w[1]) == Ordering::Less));
            let mut covered: BTreeSet<u32> = BTreeSet::new();
            for f in &facets {
                debug_assert!(!f.is_empty() && f.windows(2).all(|w| w[0] < w[1]));
                debug_assert!(is_subset(f, &vertices));
                covered.extend(f.iter().copied());
            }
            debug_assert_eq!(covered.len(), vertices.len());
        }
        FiniteOrderedComplex { vertices, facets }
    }

    /// Validating constructor used by deserialization: the facet list must
    /// already be the canonical antichain presentation.
    pub fn from_parts(vertices: Vec<u32>, facets: Vec<Vec<u32>>) -> Result<Self> {
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Format(
                "vertices must be strictly increasing".into(),
            ));
        }
        for f in &facets {
            if f.is_empty() {
                return Err(Error::Format("facets must be nonempty".into()));
            }
            if !f.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Format(
                    "each facet must be strictly increasing".into(),
                ));
            }
            if !is_subset(f, &vertices) {
                return Err(Error::Format(format!(
                    "facet {f:?} is not contained in the vertex set"
                )));
            }
        }
        for w in facets.windows(2) {
            if colex_cmp(&w[0], &w[1]) != Ordering::Less {
                return Err(Error::Format(
                    "facets must be strictly sorted by (size, colex)".into(),
                ));
            }
        }
        for (i, f) in facets.iter().enumerate() {
            for g in facets.iter().skip(i + 1) {
                if is_subset(f, g) || is_subset(g, f) {
                    return Err(Error::Format(format!(
                        "facets {f:?} and {g:?} are comparable"
                    )));
                }
            }
        }
        let mut covered: BTreeSet<u32> = BTreeSet::new();
        for f in &facets {
            covered.extend(f.iter().copied());
        }
        if covered.len() != vertices.len() {
            return Err(Error::Format(
                "every vertex must belong to some facet".into(),
            ));
        }
        Ok(FiniteOrderedComplex { vertices, facets })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Number of vertices (the length of the pair).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_vertex(&self) -> Option<u32> {
        self.vertices.last().copied()
    }

    /// Position of a label in the vertex sequence.
    pub fn position_of(&self, label: u32) -> Option<usize> {
        self.vertices.binary_search(&label).ok()
    }

    /// Face membership: a nonempty set is a face iff some facet contains it.
    /// The empty set is a face of every nonempty complex.
    pub fn contains_face(&self, u: &[u32]) -> bool {
        if u.is_empty() {
            return !self.is_empty();
        }
        let u = sorted_dedup(u.to_vec());
        self.facets.iter().any(|f| is_subset(&u, f))
    }

    /// Largest face size.
    pub fn dimension_bound(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// The restriction `(y, S_x |` `y)`. For hereditary families the trace
    /// `{u ∩ y : u ∈ S_x}` equals the induced family `{v ∈ S_x : v ⊆ y}`.
    pub fn restrict(&self, y: &[u32]) -> Result<Self> {
        let y = sorted_dedup(y.to_vec());
        if !is_subset(&y, &self.vertices) {
            return Err(Error::invalid(
                "restriction set is not contained in the vertex set",
            ));
        }
        let traces: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| y.binary_search(v).is_ok()).collect())
            .filter(|t: &Vec<u32>| !t.is_empty())
            .collect();
        Ok(FiniteOrderedComplex {
            vertices: y,
            facets: normalize_facets(traces),
        })
    }

    /// The nth approximation: the restriction to the first `n` vertices.
    /// `approx(0)` is the empty complex.
    pub fn approx(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::invalid(format!(
                "approximation length {n} exceeds vertex count {}",
                self.len()
            )));
        }
        self.restrict(&self.vertices[..n])
    }

    /// The pair order: `self <= other` iff the vertex set and the face
    /// family are both contained in `other`'s.
    pub fn leq(&self, other: &Self) -> bool {
        is_subset(&self.vertices, &other.vertices)
            && self.facets.iter().all(|f| other.contains_face(f))
    }

    /// Finitized order: `leq` plus equal maximal vertices. Errors on empty
    /// inputs, where the maximum is undefined.
    pub fn leq_fin(&self, other: &Self) -> Result<bool> {
        match (self.max_vertex(), other.max_vertex()) {
            (Some(a), Some(b)) => Ok(a == b && self.leq(other)),
            _ => Err(Error::invalid("leq_fin is undefined on empty complexes")),
        }
    }

    /// True iff `self`'s vertices are an initial segment of `other`'s and
    /// `self.leq(other)` holds.
    pub fn initial_segment(&self, other: &Self) -> bool {
        other.vertices.len() >= self.vertices.len()
            && other.vertices[..self.vertices.len()] == self.vertices[..]
            && self.leq(other)
    }

    /// Relabels vertices order-preservingly onto `{0, .., n-1}`. Idempotent;
    /// two complexes are order-isomorphic iff their canonical forms agree.
    pub fn canonicalize(&self) -> Self {
        let rank = |v: u32| self.vertices.binary_search(&v).unwrap() as u32;
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| rank(v)).collect())
            .collect();
        FiniteOrderedComplex {
            vertices: (0..self.vertices.len() as u32).collect(),
            facets,
        }
    }

    /// Applies a strictly increasing relabeling given as parallel slices.
    pub(crate) fn relabel(&self, from: &[u32], to: &[u32]) -> Self {
        debug_assert_eq!(from, self.vertices.as_slice());
        let map = |v: u32| to[from.binary_search(&v).unwrap()];
        FiniteOrderedComplex {
            vertices: to.to_vec(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|&v| map(v)).collect())
                .collect(),
        }
    }

    /// All nonempty faces as bitmasks over vertex positions. Cost is
    /// exponential in facet sizes; guarded for desk scale.
    pub fn family_masks(&self) -> Result<BTreeSet<u64>> {
        if self.len() > 64 {
            return Err(Error::limit("family enumeration supports at most 64 vertices"));
        }
        let work: u64 = self.facets.iter().map(|f| 1u64 << f.len().min(63)).sum();
        if work > 1 << 26 {
            return Err(Error::limit("face family too large to materialize"));
        }
        let mut set = BTreeSet::new();
        for f in &self.facets {
            let mask = self.mask_of(f);
            let mut s = mask;
            loop {
                if s != 0 {
                    set.insert(s);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & mask;
            }
        }
        Ok(set)
    }

    /// All nonempty faces as label sets, in (size, colex) order.
    pub fn faces(&self) -> Result<Vec<Vec<u32>>> {
        let mut out: Vec<Vec<u32>> = self
            .family_masks()?
            .into_iter()
            .map(|m| self.unmask(m))
            .collect();
        out.sort_by(|a, b| colex_cmp(a, b));
        Ok(out)
    }

    /// Number of nonempty faces.
    pub fn face_count(&self) -> Result<u64> {
        Ok(self.family_masks()?.len() as u64)
    }

    pub(crate) fn mask_of(&self, labels: &[u32]) -> u64 {
        let mut m = 0u64;
        for &v in labels {
            m |= 1 << self.vertices.binary_search(&v).unwrap();
        }
        m
    }

    pub(crate) fn unmask(&self, mut mask: u64) -> Vec<u32> {
        let mut out = Vec::new();
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            out.push(self.vertices[i]);
            mask &= mask - 1;
        }
        out
    }
}

impl Default for FiniteOrderedComplex {
    fn default() -> Self {
        Self::empty()
    }
}

/// All weak sub-pairs `(y, S_y) <= c` with vertex set exactly `y`: the
/// hereditary subfamilies of the induced family on `y` that still cover `y`.
/// Returned in a deterministic order, the pure set on `y` first.
pub fn subpairs_on(c: &FiniteOrderedComplex, y: &[u32]) -> Result<Vec<FiniteOrderedComplex>> {
    let induced = c.restrict(y)?;
    let y = induced.vertices().to_vec();
    // every hereditary subfamily containing all singletons is determined by
    // the antichain of its maximal faces of size >= 2, drawn from the faces
    // of the induced family
    let ge2: Vec<u64> = induced
        .family_masks()?
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .collect();
    let mut ordered: Vec<Vec<u32>> = ge2.iter().map(|&m| induced.unmask(m)).collect();
    ordered.sort_by(|a, b| colex_cmp(a, b));
    let masks: Vec<u64> = ordered.iter().map(|f| induced.mask_of(f)).collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    antichain_dfs(&masks, 0, &mut chosen, &mut |idxs| {
        let gens: Vec<Vec<u32>> = idxs.iter().map(|&i| ordered[i].clone()).collect();
        out.push(FiniteOrderedComplex::close_downward(&gens, &y).expect("generators within y"));
    });
    Ok(out)
}

/// DFS over antichains of the given masks, indices strictly increasing.
fn antichain_dfs(
    masks: &[u64],
    start: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    emit(chosen);
    for i in start..masks.len() {
        let m = masks[i];
        let comparable = chosen
            .iter()
            .any(|&j| (masks[j] & m) == masks[j] || (masks[j] & m) == m);
        if comparable {
            continue;
        }
        chosen.push(i);
        antichain_dfs(masks, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// All weak sub-pairs of `c` with exactly `k` vertices, over every k-subset
/// of the vertex set in lexicographic order.
pub fn enumerate_subpairs(
    c: &FiniteOrderedComplex,
    k: usize,
    guards: &Guards,
) -> Result<Vec<FiniteOrderedComplex>> {
    let n = c.len();
    if k > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for combo in combinations(n, k) {
        let y: Vec<u32> = combo.iter().map(|&i| c.vertices()[i]).collect();
        out.extend(subpairs_on(c, &y)?);
        if out.len() > guards.enumeration_budget {
            return Err(Error::limit(format!(
                "sub-pair enumeration exceeded {} items",
                guards.enumeration_budget
            )));
        }
    }
    Ok(out)
}

/// The finite down-set `{b : b <=_fin a}`: sub-pairs whose vertex set
/// contains `max(a)`.
pub fn leq_fin_down_set(
    a: &FiniteOrderedComplex,
    guards: &Guards,
) -> Result<Vec<FiniteOrderedComplex>> {
    let top = a
        .max_vertex()
        .ok_or_else(|| Error::invalid("the down-set of the empty complex is undefined"))?;
    let others: Vec<u32> = a.vertices()[..a.len() - 1].to_vec();
    let mut out = Vec::new();
    for size in 0..=others.len() {
        for combo in combinations(others.len(), size) {
            let mut y: Vec<u32> = combo.iter().map(|&i| others[i]).collect();
            y.push(top);
            out.extend(subpairs_on(a, &y)?);
            if out.len() > guards.enumeration_budget {
                return Err(Error::limit("down-set enumeration exceeded the budget"));
            }
        }
    }
    Ok(out)
}

/// Lexicographic k-combinations of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All canonical complexes on the vertex set `{0, .., n-1}` with faces of at
/// most the class bound, in a deterministic total order (the pure set
/// first). Backed by a DFS over antichains of candidate faces.
pub fn enumerate_class(
    n: usize,
    class: &ClassSpec,
    guards: &Guards,
) -> Result<Vec<FiniteOrderedComplex>> {
    if n > class.enumeration_guard() {
        return Err(Error::limit(format!(
            "enumeration of {class} class members is guarded at {} vertices, got {n}",
            class.enumeration_guard()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let vertices: Vec<u32> = (0..n as u32).collect();
    let kmax = class.max_face_size.unwrap_or(n).min(n);
    // candidate generating faces, size >= 2, ordered by (size, colex)
    let mut cand: Vec<Vec<u32>> = Vec::new();
    for size in 2..=kmax {
        for combo in combinations(n, size) {
            cand.push(combo.iter().map(|&i| i as u32).collect());
        }
    }
    cand.sort_by(|a, b| colex_cmp(a, b));
    let masks: Vec<u64> = cand
        .iter()
        .map(|f| f.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut overflow = false;
    antichain_dfs(&masks, 0, &mut chosen, &mut |idxs| {
        if out.len() <= guards.enumeration_budget {
            let gens: Vec<Vec<u32>> = idxs.iter().map(|&i| cand[i].clone()).collect();
            out.push(
                FiniteOrderedComplex::close_downward(&gens, &vertices)
                    .expect("generators within [n]"),
            );
        } else {
            overflow = true;
        }
    });
    if overflow {
        return Err(Error::limit("class enumeration exceeded the budget"));
    }
    Ok(out)
}

impl std::fmt::Display for FiniteOrderedComplex {
    /// One-line text format: `V: 0 1 2 | F: 0,1 1,2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "V:")?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, " | F:")?;
        for facet in &self.facets {
            let parts: Vec<String> = facet.iter().map(|v| v.to_string()).collect();
            write!(f, " {}", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: materialize the downward closure of the given
    /// sets plus singletons by direct subset enumeration, then report the
    /// maximal elements.
    fn naive_closure_facets(sets: &[Vec<u32>], vertex_set: &[u32]) -> Vec<Vec<u32>> {
        let mut family: BTreeSet<Vec<u32>> = BTreeSet::new();
        for &v in vertex_set {
            family.insert(vec![v]);
        }
        for s in sets {
            let s = sorted_dedup(s.clone());
            for mask in 1u32..(1 << s.len()) {
                let sub: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                family.insert(sub);
            }
        }
        let all: Vec<Vec<u32>> = family.into_iter().collect();
        let mut maximal: Vec<Vec<u32>> = all
            .iter()
            .filter(|u| !all.iter().any(|v| v != *u && is_subset(u, v)))
            .cloned()
            .collect();
        maximal.sort_by(|a, b| colex_cmp(a, b));
        maximal
    }

    #[test]
    fn close_downward_single_simplex() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1, 2]], &[0, 1, 2]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 1, 2]]);
        assert_eq!(c.face_count().unwrap(), 7);
    }

    #[test]
    fn close_downward_forces_singletons() {
        let c = FiniteOrderedComplex::close_downward(&[], &[0, 3]).unwrap();
        assert_eq!(c.facets(), &[vec![0], vec![3]]);
    }

    #[test]
    fn close_downward_hollow_triangle() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let c = FiniteOrderedComplex::close_downward(&sets, &[0, 1, 2]).unwrap();
        let expected = naive_closure_facets(&sets, &[0, 1, 2]);
        assert_eq!(c.facets().to_vec(), expected);
        assert_eq!(c.facets().len(), 3);
        assert!(!c.contains_face(&[0, 1, 2]));
    }

    #[test]
    fn close_downward_rejects_stray_labels() {
        let err = FiniteOrderedComplex::close_downward(&[vec![0, 5]], &[0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    /// Independent oracle for restriction: enumerate the trace family
    /// `{u ∩ y}` over the materialized family and take maxima.
    fn naive_trace_facets(c: &FiniteOrderedComplex, y: &[u32]) -> Vec<Vec<u32>> {
        let faces = c.faces().unwrap();
        let mut traced: BTreeSet<Vec<u32>> = BTreeSet::new();
        for u in faces {
            let t: Vec<u32> = u.into_iter().filter(|v| y.contains(v)).collect();
            if !t.is_empty() {
                traced.insert(t);
            }
        }
        let all: Vec<Vec<u32>> = traced.into_iter().collect();
        let mut maximal: Vec<Vec<u32>> = all
            .iter()
            .filter(|u| !all.iter().any(|v| v != *u && is_subset(u, v)))
            .cloned()
            .collect();
        maximal.sort_by(|a, b| colex_cmp(a, b));
        maximal
    }

    #[test]
    fn restrict_simplex_trace() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1, 2]], &[0, 1, 2]).unwrap();
        let r = c.restrict(&[0, 2]).unwrap();
        assert_eq!(r.facets(), &[vec![0, 2]]);
    }

    #[test]
    fn restrict_identity() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1], vec![2, 3]], &[0, 1, 2, 3])
            .unwrap();
        assert_eq!(c.restrict(c.vertices()).unwrap(), c);
    }

    #[test]
    fn restrict_two_edges() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1], vec![2, 3]], &[0, 1, 2, 3])
            .unwrap();
        let r = c.restrict(&[1, 2]).unwrap();
        assert_eq!(r.facets().to_vec(), naive_trace_facets(&c, &[1, 2]));
        assert_eq!(r.facets(), &[vec![1], vec![2]]);
    }

    #[test]
    fn restrict_rejects_foreign_vertices() {
        let c = FiniteOrderedComplex::pure_set(&[0, 1]);
        assert!(c.restrict(&[0, 7]).is_err());
    }

    #[test]
    fn approx_zero_is_empty() {
        let c = FiniteOrderedComplex::full_simplex(4);
        assert_eq!(c.approx(0).unwrap(), FiniteOrderedComplex::empty());
        assert!(c.approx(5).is_err());
    }

    #[test]
    fn leq_restriction_is_subpair() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1, 2], vec![2, 4]], &[0, 1, 2, 4])
            .unwrap();
        let r = c.restrict(&[1, 2, 4]).unwrap();
        assert!(r.leq(&c));
    }

    #[test]
    fn leq_edge_not_below_pure_pair() {
        let edge = FiniteOrderedComplex::close_downward(&[vec![0, 1]], &[0, 1]).unwrap();
        let pure = FiniteOrderedComplex::pure_set(&[0, 1]);
        assert!(!edge.leq(&pure));
        assert!(pure.leq(&edge));
    }

    #[test]
    fn leq_by_family_inclusion() {
        let small = FiniteOrderedComplex::pure_set(&[0, 2]);
        let big = FiniteOrderedComplex::close_downward(&[vec![0, 2]], &[0, 2]).unwrap();
        assert!(small.leq(&big));
    }

    #[test]
    fn leq_fin_cases() {
        let c = FiniteOrderedComplex::pure_set(&[0, 5]);
        assert!(c.leq_fin(&c).unwrap());
        let d = FiniteOrderedComplex::pure_set(&[0, 3]);
        assert!(!c.leq_fin(&d).unwrap());
        assert!(FiniteOrderedComplex::empty().leq_fin(&c).is_err());
    }

    #[test]
    fn initial_segment_cases() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1, 2]], &[0, 1, 2]).unwrap();
        for n in 0..=3 {
            assert!(c.approx(n).unwrap().initial_segment(&c));
        }
        let shifted = FiniteOrderedComplex::pure_set(&[1]);
        let pair = FiniteOrderedComplex::pure_set(&[0, 1]);
        assert!(!shifted.initial_segment(&pair));
        // a coarser family on an initial segment still counts
        let pure01 = FiniteOrderedComplex::pure_set(&[0, 1]);
        assert!(pure01.initial_segment(&c));
    }

    #[test]
    fn canonicalize_relabels() {
        let c = FiniteOrderedComplex::close_downward(&[vec![3, 7]], &[3, 7]).unwrap();
        let expected = FiniteOrderedComplex::close_downward(&[vec![0, 1]], &[0, 1]).unwrap();
        assert_eq!(c.canonicalize(), expected);
        assert_eq!(
            FiniteOrderedComplex::empty().canonicalize(),
            FiniteOrderedComplex::empty()
        );
    }

    #[test]
    fn trace_equals_induced_small() {
        // {u ∩ y : u ∈ S} = {v ∈ S : v ⊆ y} for hereditary families
        let c = FiniteOrderedComplex::close_downward(
            &[vec![0, 1, 2], vec![2, 3], vec![4, 5]],
            &[0, 1, 2, 3, 4, 5],
        )
        .unwrap();
        for y in [vec![0u32, 2, 3], vec![1, 4], vec![0, 1, 2, 5]] {
            let restricted = c.restrict(&y).unwrap();
            let induced: BTreeSet<Vec<u32>> = c
                .faces()
                .unwrap()
                .into_iter()
                .filter(|u| is_subset(u, &y))
                .collect();
            let traced: BTreeSet<Vec<u32>> =
                restricted.faces().unwrap().into_iter().collect();
            assert_eq!(traced, induced);
            assert_eq!(restricted.facets().to_vec(), naive_trace_facets(&c, &y));
        }
    }

    #[test]
    fn enumerate_class_counts() {
        let g = Guards::default();
        let unbounded = ClassSpec::unbounded();
        assert_eq!(enumerate_class(1, &unbounded, &g).unwrap().len(), 1);
        assert_eq!(enumerate_class(2, &unbounded, &g).unwrap().len(), 2);
        assert_eq!(enumerate_class(3, &unbounded, &g).unwrap().len(), 9);
        let graphs = ClassSpec::bounded(2).unwrap();
        assert_eq!(enumerate_class(3, &graphs, &g).unwrap().len(), 8);
        let pure = ClassSpec::bounded(1).unwrap();
        for n in 1..=5 {
            assert_eq!(enumerate_class(n, &pure, &g).unwrap().len(), 1);
        }
    }

    #[test]
    fn enumerate_class_guard() {
        let g = Guards::default();
        assert!(matches!(
            enumerate_class(7, &ClassSpec::unbounded(), &g),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn enumerate_class_members_are_canonical_and_distinct() {
        let g = Guards::default();
        for class in [ClassSpec::unbounded(), ClassSpec::bounded(2).unwrap()] {
            let members = enumerate_class(4, &class, &g).unwrap();
            let set: BTreeSet<_> = members.iter().cloned().collect();
            assert_eq!(set.len(), members.len());
            for m in &members {
                assert_eq!(m.canonicalize(), *m);
                assert!(class.contains(m));
            }
        }
    }

    #[test]
    fn subpairs_on_pair() {
        let simplex = FiniteOrderedComplex::full_simplex(2);
        let pairs = subpairs_on(&simplex, &[0, 1]).unwrap();
        assert_eq!(pairs.len(), 2); // with and without the edge face
        let pure = FiniteOrderedComplex::pure_set(&[0, 1]);
        assert_eq!(subpairs_on(&pure, &[0, 1]).unwrap().len(), 1);
    }

    #[test]
    fn down_set_of_pure_triple() {
        let a = FiniteOrderedComplex::pure_set(&[0, 1, 2]);
        let down = leq_fin_down_set(&a, &Guards::default()).unwrap();
        // subsets containing the maximum: {2}, {0,2}, {1,2}, {0,1,2}
        assert_eq!(down.len(), 4);
        for b in &down {
            assert!(b.leq_fin(&a).unwrap());
        }
    }

    #[test]
    fn combinations_basic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
    }

    #[test]
    fn display_round_shape() {
        let c = FiniteOrderedComplex::close_downward(&[vec![0, 1], vec![1, 2]], &[0, 1, 2])
            .unwrap();
        assert_eq!(c.to_string(), "V: 0 1 2 | F: 0,1 1,2");
        assert_eq!(FiniteOrderedComplex::empty().to_string(), "V: | F:");
    }
}
