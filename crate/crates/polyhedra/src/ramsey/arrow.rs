//! Arrow relations `C -> (B)^A_r`: for every r-coloring of the copies of A
//! in C there is a copy B' of B whose A-copies are monochromatic.
//!
//! The decision engine works on an abstract instance: a list of items (the
//! A-copies) and a list of groups (the A-copies inside each B-copy). The
//! same engine drives the finite Ramsey statement for approximation classes.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::complex::FiniteOrderedComplex;
use crate::embed::{enumerate_copies, EmbeddingMode};
use crate::error::{Error, Result};
use crate::guards::Guards;

/// An arrow statement `C -> (B)^A_r`.
#[derive(Debug, Clone)]
pub struct ArrowQuery {
    pub a: FiniteOrderedComplex,
    pub b: FiniteOrderedComplex,
    pub c: FiniteOrderedComplex,
    pub colors: u32,
    pub mode: EmbeddingMode,
}

/// A total coloring of the enumerated copies, copy index -> color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub time_ms: u64,
}

/// Decision outcome. A failed arrow always carries a verifiable
/// counterexample coloring; in exhaustive mode a holding arrow records the
/// monochromatic witness index per coloring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowResult {
    pub holds: bool,
    pub counterexample: Option<Coloring>,
    pub witness_map: Option<Vec<usize>>,
    pub stats: SearchStats,
}

/// How the space of colorings is explored. The adversarial search looks for
/// a coloring with no monochromatic group, pruning as soon as a fully
/// colored group stays monochromatic; the exhaustive walk enumerates every
/// coloring and is kept as an independent oracle for small instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Adversarial,
    Exhaustive,
}

/// The enumerated combinatorial core of an arrow query.
#[derive(Debug, Clone)]
pub struct ArrowInstance {
    pub a_copies: Vec<FiniteOrderedComplex>,
    pub b_copies: Vec<FiniteOrderedComplex>,
    /// For each B-copy, the indices of the A-copies inside it.
    pub groups: Vec<Vec<usize>>,
}

impl ArrowInstance {
    pub fn build(q: &ArrowQuery, guards: &Guards) -> Result<Self> {
        if q.colors == 0 {
            return Err(Error::invalid("at least one color is required"));
        }
        let a_copies = enumerate_copies(&q.c, &q.a, q.mode, guards)?;
        let b_copies = enumerate_copies(&q.c, &q.b, q.mode, guards)?;
        let index: HashMap<&FiniteOrderedComplex, usize> =
            a_copies.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut groups = Vec::with_capacity(b_copies.len());
        for bc in &b_copies {
            let inner = enumerate_copies(bc, &q.a, q.mode, guards)?;
            let mut g = Vec::with_capacity(inner.len());
            for copy in &inner {
                let i = *index
                    .get(copy)
                    .expect("a copy inside a B-copy is a copy inside C");
                g.push(i);
            }
            g.sort_unstable();
            groups.push(g);
        }
        Ok(ArrowInstance {
            a_copies,
            b_copies,
            groups,
        })
    }
}

/// Decides an arrow query. When no copy of B exists in C the arrow fails by
/// convention, with the all-zero coloring as the (vacuous) counterexample.
pub fn arrow_check(q: &ArrowQuery, mode: SearchMode, guards: &Guards) -> Result<ArrowResult> {
    let instance = ArrowInstance::build(q, guards)?;
    decide_cover(
        instance.a_copies.len(),
        &instance.groups,
        q.colors,
        mode,
        guards,
    )
}

/// The shared decision core: does every coloring of `items` admit a group
/// whose members share one color? Empty groups are vacuously monochromatic.
pub(crate) fn decide_cover(
    items: usize,
    groups: &[Vec<usize>],
    colors: u32,
    mode: SearchMode,
    guards: &Guards,
) -> Result<ArrowResult> {
    let start = Instant::now();
    if groups.is_empty() {
        return Ok(ArrowResult {
            holds: false,
            counterexample: Some(Coloring(vec![0; items])),
            witness_map: None,
            stats: SearchStats {
                nodes: 0,
                time_ms: start.elapsed().as_millis() as u64,
            },
        });
    }
    if groups.iter().any(|g| g.is_empty()) {
        // some B-copy contains no A-copy at all: every coloring is constant
        // on it and the arrow holds trivially
        return Ok(ArrowResult {
            holds: true,
            counterexample: None,
            witness_map: None,
            stats: SearchStats {
                nodes: 0,
                time_ms: start.elapsed().as_millis() as u64,
            },
        });
    }
    match mode {
        SearchMode::Adversarial => adversarial_search(items, groups, colors, guards, start),
        SearchMode::Exhaustive => exhaustive_search(items, groups, colors, guards, start),
    }
}

/// Re-checks a claimed counterexample independently of the search path:
/// a valid counterexample colors every item and leaves no group
/// monochromatic (empty groups can never be defeated).
pub fn verify_counterexample(items: usize, groups: &[Vec<usize>], coloring: &Coloring) -> bool {
    if coloring.0.len() != items {
        return false;
    }
    if groups.is_empty() {
        return true;
    }
    groups.iter().all(|g| {
        let mut seen: Option<u32> = None;
        let mut bichromatic = false;
        for &i in g {
            match seen {
                None => seen = Some(coloring.0[i]),
                Some(c) if c != coloring.0[i] => {
                    bichromatic = true;
                    break;
                }
                _ => {}
            }
        }
        bichromatic
    })
}

struct AdversarialState<'g> {
    groups: &'g [Vec<usize>],
    membership: Vec<Vec<usize>>,
    colors: Vec<Option<u32>>,
    first_color: Vec<Option<u32>>,
    killed: Vec<bool>,
    assigned: Vec<usize>,
    alive: usize,
    nodes: u64,
    budget: u64,
}

fn adversarial_search(
    items: usize,
    groups: &[Vec<usize>],
    colors: u32,
    guards: &Guards,
    start: Instant,
) -> Result<ArrowResult> {
    let mut membership = vec![Vec::new(); items];
    for (gi, g) in groups.iter().enumerate() {
        for &i in g {
            membership[i].push(gi);
        }
    }
    let mut state = AdversarialState {
        groups,
        membership,
        colors: vec![None; items],
        first_color: vec![None; groups.len()],
        killed: vec![false; groups.len()],
        assigned: vec![0; groups.len()],
        alive: groups.len(),
        nodes: 0,
        budget: guards.node_budget,
    };
    let found = adversarial_descend(&mut state, 0, colors)?;
    let stats = SearchStats {
        nodes: state.nodes,
        time_ms: start.elapsed().as_millis() as u64,
    };
    match found {
        Some(coloring) => Ok(ArrowResult {
            holds: false,
            counterexample: Some(coloring),
            witness_map: None,
            stats,
        }),
        None => Ok(ArrowResult {
            holds: true,
            counterexample: None,
            witness_map: None,
            stats,
        }),
    }
}

fn adversarial_descend(
    st: &mut AdversarialState,
    item: usize,
    colors: u32,
) -> Result<Option<Coloring>> {
    if st.alive == 0 {
        // every group is already bichromatic; any completion works
        let mut full: Vec<u32> = Vec::with_capacity(st.colors.len());
        for c in &st.colors {
            full.push(c.unwrap_or(0));
        }
        return Ok(Some(Coloring(full)));
    }
    if item == st.colors.len() {
        // some group stayed monochromatic
        return Ok(None);
    }
    // color symmetry: the first item may take color 0 only
    let palette = if item == 0 { 1 } else { colors };
    for color in 0..palette {
        st.nodes += 1;
        if st.nodes > st.budget {
            return Err(Error::limit(format!(
                "coloring search exceeded {} nodes (result unknown)",
                st.budget
            )));
        }
        // apply
        st.colors[item] = Some(color);
        let mut newly_killed: Vec<usize> = Vec::new();
        let mut dead_branch = false;
        for gi in st.membership[item].clone() {
            st.assigned[gi] += 1;
            if !st.killed[gi] {
                match st.first_color[gi] {
                    None => st.first_color[gi] = Some(color),
                    Some(c) if c != color => {
                        st.killed[gi] = true;
                        st.alive -= 1;
                        newly_killed.push(gi);
                    }
                    _ => {}
                }
                // a completed monochromatic group can never be defeated
                if !st.killed[gi] && st.assigned[gi] == st.groups[gi].len() {
                    dead_branch = true;
                }
            }
        }
        if !dead_branch {
            if let Some(found) = adversarial_descend(st, item + 1, colors)? {
                return Ok(Some(found));
            }
        }
        // undo
        for gi in st.membership[item].clone() {
            st.assigned[gi] -= 1;
            if st.assigned[gi] == 0 && !st.killed[gi] {
                st.first_color[gi] = None;
            }
        }
        for gi in newly_killed {
            st.killed[gi] = false;
            st.alive += 1;
        }
        st.colors[item] = None;
    }
    Ok(None)
}

fn exhaustive_search(
    items: usize,
    groups: &[Vec<usize>],
    colors: u32,
    guards: &Guards,
    start: Instant,
) -> Result<ArrowResult> {
    let total = (colors as u64)
        .checked_pow(items as u32)
        .filter(|&t| t <= guards.exhaustive_colorings)
        .ok_or_else(|| {
            Error::limit(format!(
                "exhaustive mode is limited to {} colorings",
                guards.exhaustive_colorings
            ))
        })?;
    let mut witness_map = Vec::with_capacity(total as usize);
    let mut nodes = 0u64;
    let mut current = vec![0u32; items];
    for index in 0..total {
        // decode the coloring: item 0 is the least significant digit
        let mut x = index;
        for slot in current.iter_mut() {
            *slot = (x % colors as u64) as u32;
            x /= colors as u64;
        }
        nodes += 1;
        let witness = groups.iter().position(|g| {
            let mut it = g.iter();
            match it.next() {
                None => true,
                Some(&first) => {
                    let c = current[first];
                    it.all(|&i| current[i] == c)
                }
            }
        });
        match witness {
            Some(w) => witness_map.push(w),
            None => {
                return Ok(ArrowResult {
                    holds: false,
                    counterexample: Some(Coloring(current)),
                    witness_map: None,
                    stats: SearchStats {
                        nodes,
                        time_ms: start.elapsed().as_millis() as u64,
                    },
                });
            }
        }
    }
    Ok(ArrowResult {
        holds: true,
        counterexample: None,
        witness_map: Some(witness_map),
        stats: SearchStats {
            nodes,
            time_ms: start.elapsed().as_millis() as u64,
        },
    })
}

/// Deterministic growth rules for the ambient complex of a minimal-N search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    /// Pure set of size N (the Ellentuck subspace).
    PureSet,
    /// Complete ordered graph on N vertices: all edges, no larger faces.
    CompleteGraph,
    /// Full simplex on N vertices.
    FullSimplex,
}

impl Ambient {
    pub fn complex(&self, n: usize) -> FiniteOrderedComplex {
        match self {
            Ambient::PureSet => {
                FiniteOrderedComplex::pure_set(&(0..n as u32).collect::<Vec<_>>())
            }
            Ambient::CompleteGraph => FiniteOrderedComplex::complete_graph(n),
            Ambient::FullSimplex => FiniteOrderedComplex::full_simplex(n),
        }
    }
}

/// The least `N <= n_max` for which the arrow holds over the ambient growth
/// rule, scanning upward so ties resolve to the smallest witness. `None`
/// means not found within the bound, which is not a refutation.
#[allow(clippy::too_many_arguments)]
pub fn arrow_search_min(
    a: &FiniteOrderedComplex,
    b: &FiniteOrderedComplex,
    colors: u32,
    mode: EmbeddingMode,
    ambient: Ambient,
    n_max: usize,
    search: SearchMode,
    guards: &Guards,
) -> Result<Option<(usize, ArrowResult)>> {
    for n in 1..=n_max {
        let q = ArrowQuery {
            a: a.clone(),
            b: b.clone(),
            c: ambient.complex(n),
            colors,
            mode,
        };
        let res = arrow_check(&q, search, guards)?;
        if res.holds {
            return Ok(Some((n, res)));
        }
    }
    Ok(None)
}
