//! Order-preserving embedding search, in both the weak (face-preserving)
//! and strong (induced) senses.

use serde::{Deserialize, Serialize};

use crate::complex::FiniteOrderedComplex;
use crate::error::{Error, Result};
use crate::guards::Guards;

/// Which invariants an embedding carries.
///
/// A weak embedding pushes faces to faces; a strong embedding additionally
/// pulls faces back, so its image carries exactly the induced family.
/// Every strong embedding is weak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingMode {
    Weak,
    Strong,
}

/// An order-preserving injective vertex map, stored as (source, target)
/// pairs sorted by source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    map: Vec<(u32, u32)>,
    mode: EmbeddingMode,
}

impl Embedding {
    /// Validates strict monotonicity in both coordinates.
    pub fn new(mut map: Vec<(u32, u32)>, mode: EmbeddingMode) -> Result<Self> {
        map.sort_unstable();
        for w in map.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::invalid(
                    "an embedding must be strictly increasing in sources and targets",
                ));
            }
        }
        Ok(Embedding { map, mode })
    }

    pub fn identity(c: &FiniteOrderedComplex, mode: EmbeddingMode) -> Self {
        Embedding {
            map: c.vertices().iter().map(|&v| (v, v)).collect(),
            mode,
        }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.map
    }

    pub fn mode(&self) -> EmbeddingMode {
        self.mode
    }

    pub fn sources(&self) -> Vec<u32> {
        self.map.iter().map(|p| p.0).collect()
    }

    pub fn image(&self) -> Vec<u32> {
        self.map.iter().map(|p| p.1).collect()
    }

    pub fn apply_vertex(&self, v: u32) -> Option<u32> {
        self.map
            .binary_search_by_key(&v, |p| p.0)
            .ok()
            .map(|i| self.map[i].1)
    }

    pub fn apply_set(&self, u: &[u32]) -> Option<Vec<u32>> {
        u.iter().map(|&v| self.apply_vertex(v)).collect()
    }

    /// `other` after `self` (self: A -> B, other: B -> C).
    pub fn compose(&self, other: &Embedding) -> Result<Embedding> {
        if self.mode != other.mode {
            return Err(Error::invalid("cannot compose embeddings of different modes"));
        }
        let map = self
            .map
            .iter()
            .map(|&(s, t)| {
                other
                    .apply_vertex(t)
                    .map(|u| (s, u))
                    .ok_or_else(|| Error::invalid("composition leaves the second embedding's domain"))
            })
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(map, self.mode)
    }
}

/// Checks whether the vertex map is an embedding of the requested mode.
/// Maps that are not injective functions into `b`'s vertex set are rejected
/// as invalid input; order or face violations yield `Ok(false)`.
pub fn is_embedding(
    map: &[(u32, u32)],
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    mode: EmbeddingMode,
) -> Result<bool> {
    let mut map = map.to_vec();
    map.sort_unstable();
    let sources: Vec<u32> = map.iter().map(|p| p.0).collect();
    if sources != a.vertices() {
        return Err(Error::invalid("the map must be total on the source vertices"));
    }
    let mut targets: Vec<u32> = map.iter().map(|p| p.1).collect();
    for &t in &targets {
        if b.position_of(t).is_none() {
            return Err(Error::invalid(format!("target {t} is not a vertex of the codomain")));
        }
    }
    let before = targets.len();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != before {
        return Err(Error::invalid("the map must be injective"));
    }
    // order preservation: sources ascend, so targets must ascend too
    if !map.windows(2).all(|w| w[0].1 < w[1].1) {
        return Ok(false);
    }
    let embedding = Embedding {
        map,
        mode,
    };
    // weak: facets of A land on faces of B (heredity covers the rest)
    for facet in a.facets() {
        let img = embedding.apply_set(facet).expect("total by construction");
        if !b.contains_face(&img) {
            return Ok(false);
        }
    }
    if mode == EmbeddingMode::Strong {
        // induced: the pullback of B's family on the image is exactly S_A
        let induced = b.restrict(&embedding.image())?;
        let pulled = induced.relabel(&embedding.image(), a.vertices());
        if pulled != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All embeddings of `a` into `b` of the given mode, in increasing
/// lexicographic order of the target sequence. Backtracking over
/// order-preserving injections with face-constraint pruning.
pub fn enumerate_embeddings(
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    mode: EmbeddingMode,
    guards: &Guards,
) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    let mut nodes = 0u64;
    search_embeddings(a, b, mode, guards, &mut nodes, &mut |e| {
        out.push(e.clone());
        true
    })?;
    Ok(out)
}

/// Early-exit variant: does any embedding of `a` into `b` exist?
pub fn exists_embedding(
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    mode: EmbeddingMode,
    guards: &Guards,
) -> Result<bool> {
    let mut found = false;
    let mut nodes = 0u64;
    search_embeddings(a, b, mode, guards, &mut nodes, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

fn search_embeddings(
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    mode: EmbeddingMode,
    guards: &Guards,
    nodes: &mut u64,
    visit: &mut impl FnMut(&Embedding) -> bool,
) -> Result<()> {
    let na = a.len();
    let nb = b.len();
    if na > nb {
        return Ok(());
    }
    if na == 0 {
        // the empty map is the unique embedding of the empty complex
        let e = Embedding {
            map: Vec::new(),
            mode,
        };
        visit(&e);
        return Ok(());
    }
    let mut chosen: Vec<usize> = Vec::new(); // positions in b
    descend(a, b, mode, guards, nodes, &mut chosen, visit)?;
    Ok(())
}

fn descend(
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    mode: EmbeddingMode,
    guards: &Guards,
    nodes: &mut u64,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&Embedding) -> bool,
) -> Result<bool> {
    let na = a.len();
    let i = chosen.len();
    if i == na {
        let map: Vec<(u32, u32)> = a
            .vertices()
            .iter()
            .zip(chosen.iter())
            .map(|(&s, &t)| (s, b.vertices()[t]))
            .collect();
        // weak constraints were enforced during descent; strong needs the
        // final induced comparison
        if mode == EmbeddingMode::Strong {
            let image: Vec<u32> = map.iter().map(|p| p.1).collect();
            let induced = b.restrict(&image)?;
            let pulled = induced.relabel(&image, a.vertices());
            if pulled != *a {
                return Ok(true);
            }
        }
        let e = Embedding { map, mode };
        return Ok(visit(&e));
    }
    let lo = if i == 0 { 0 } else { chosen[i - 1] + 1 };
    let hi = b.len() - (na - i - 1);
    for t in lo..hi {
        *nodes += 1;
        if *nodes > guards.node_budget {
            return Err(Error::limit(format!(
                "embedding search exceeded {} nodes",
                guards.node_budget
            )));
        }
        chosen.push(t);
        // prune: every facet of A lying within the placed prefix must map
        // to a face of B (valid for both modes, strong being stronger)
        let placed = &a.vertices()[..=i];
        let ok = a
            .facets()
            .iter()
            .filter(|f| f.iter().all(|v| placed.binary_search(v).is_ok()))
            .all(|f| {
                let img: Vec<u32> = f
                    .iter()
                    .map(|v| {
                        let idx = a.vertices().binary_search(v).unwrap();
                        b.vertices()[chosen[idx]]
                    })
                    .collect();
                b.contains_face(&img)
            });
        if ok {
            let keep_going = descend(a, b, mode, guards, nodes, chosen, visit)?;
            if !keep_going {
                chosen.pop();
                return Ok(false);
            }
        }
        chosen.pop();
    }
    Ok(true)
}

/// Copies of `a` inside `b`. Strong copies are induced restrictions of `b`
/// (equal vertex sets give equal copies); weak copies carry the pushed-
/// forward face family of `a`.
pub fn enumerate_copies(
    b: &FiniteOrderedComplex,
    a: &FiniteOrderedComplex,
    mode: EmbeddingMode,
    guards: &Guards,
) -> Result<Vec<FiniteOrderedComplex>> {
    let embeddings = enumerate_embeddings(a, b, mode, guards)?;
    embeddings
        .iter()
        .map(|e| copy_of(b, a, e))
        .collect::<Result<Vec<_>>>()
}

/// The copy determined by one embedding.
pub fn copy_of(
    b: &FiniteOrderedComplex,
    a: &FiniteOrderedComplex,
    e: &Embedding,
) -> Result<FiniteOrderedComplex> {
    match e.mode() {
        EmbeddingMode::Strong => b.restrict(&e.image()),
        EmbeddingMode::Weak => {
            let facets: Vec<Vec<u32>> = a
                .facets()
                .iter()
                .map(|f| e.apply_set(f).ok_or_else(|| Error::invalid("partial embedding")))
                .collect::<Result<_>>()?;
            FiniteOrderedComplex::close_downward(&facets, &e.image())
        }
    }
}

/// The inclusion witness of a nonempty complex into the full simplex on
/// `{0, .., max(vertices)}`; always a weak embedding.
pub fn simplex_embed(c: &FiniteOrderedComplex) -> Result<Embedding> {
    if c.is_empty() {
        return Err(Error::invalid("the empty complex has no simplex hull"));
    }
    Ok(Embedding {
        map: c.vertices().iter().map(|&v| (v, v)).collect(),
        mode: EmbeddingMode::Weak,
    })
}

/// The simplex target used by [`simplex_embed`].
pub fn simplex_hull(c: &FiniteOrderedComplex) -> Result<FiniteOrderedComplex> {
    let top = c
        .max_vertex()
        .ok_or_else(|| Error::invalid("the empty complex has no simplex hull"))?;
    Ok(FiniteOrderedComplex::full_simplex(top as usize + 1))
}
