//! Finite consistency checks against the extension property of the limit:
//! which one-point extension demands a given complex realizes, and one-step
//! extendability of partial isomorphisms.

use std::collections::HashSet;

use serde::Serialize;

use crate::class::ClassSpec;
use crate::complex::{combinations, enumerate_class, FiniteOrderedComplex};
use crate::embed::{enumerate_embeddings, EmbeddingMode};
use crate::error::{Error, Result};
use crate::fraisse::one_point_extensions;
use crate::guards::Guards;

/// Fast face queries for subsets up to a size cap.
struct FaceIndex {
    sets: HashSet<Vec<u32>>,
    cap: usize,
}

impl FaceIndex {
    fn build(f: &FiniteOrderedComplex, cap: usize) -> Self {
        let mut sets = HashSet::new();
        for facet in f.facets() {
            let n = facet.len();
            for size in 1..=n.min(cap) {
                for combo in combinations(n, size) {
                    sets.insert(combo.iter().map(|&i| facet[i]).collect::<Vec<u32>>());
                }
            }
        }
        FaceIndex { sets, cap }
    }

    fn contains(&self, labels: &[u32]) -> bool {
        debug_assert!(labels.len() <= self.cap);
        self.sets.contains(labels)
    }

    /// Canonical induced complex on labels given in ascending order.
    fn induced_canonical(&self, labels: &[u32]) -> FiniteOrderedComplex {
        let n = labels.len();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for size in 2..=n {
            for combo in combinations(n, size) {
                let subset: Vec<u32> = combo.iter().map(|&i| labels[i]).collect();
                if self.contains(&subset) {
                    gens.push(combo.iter().map(|&i| i as u32).collect());
                }
            }
        }
        let range: Vec<u32> = (0..n as u32).collect();
        FiniteOrderedComplex::close_downward(&gens, &range).expect("generators in range")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionFailure {
    pub pattern: String,
    pub image: Vec<u32>,
    pub extension: String,
    pub position: usize,
}

/// Report of an extension-property sweep: `checked` demands, of which
/// `passed` found a witness. Failures are reported, not errors; a finite
/// complex generally cannot satisfy every order-position demand.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<ExtensionFailure>,
}

impl ExtensionReport {
    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

/// For every strong embedding of every class pattern with at most `s`
/// vertices into `f`, and every one-point extension of that pattern,
/// reports whether some strong embedding of the extension into `f` extends
/// it (witness at the demanded order position with exactly the demanded
/// faces).
pub fn check_extension_property(
    f: &FiniteOrderedComplex,
    class: &ClassSpec,
    s: usize,
    guards: &Guards,
) -> Result<ExtensionReport> {
    check_extension_property_scoped(f, class, s, None, guards)
}

/// Scoped variant: pattern embeddings are restricted to images inside the
/// given vertex subset, while witnesses may come from all of `f`. With
/// `None` the whole complex is the pattern source.
pub fn check_extension_property_scoped(
    f: &FiniteOrderedComplex,
    class: &ClassSpec,
    s: usize,
    pattern_source: Option<&[u32]>,
    guards: &Guards,
) -> Result<ExtensionReport> {
    if s == 0 || s > 3 {
        return Err(Error::invalid(
            "the pattern bound must lie in 1..=3 (3 distinguishes triangle faces from hollow triangles)",
        ));
    }
    let index = FaceIndex::build(f, s + 1);
    let source = match pattern_source {
        Some(labels) => f.restrict(labels)?,
        None => f.clone(),
    };
    let mut report = ExtensionReport {
        checked: 0,
        passed: 0,
        first_failure: None,
    };
    for size in 1..=s {
        for pattern in enumerate_class(size, class, guards)? {
            let exts = one_point_extensions(&pattern, class, guards)?;
            if exts.is_empty() {
                continue;
            }
            let embeddings =
                enumerate_embeddings(&pattern, &source, EmbeddingMode::Strong, guards)?;
            for e in &embeddings {
                let image = e.image();
                for (ext, pos) in &exts {
                    report.checked += 1;
                    if extension_witness(f, &index, &image, ext, *pos).is_some() {
                        report.passed += 1;
                    } else if report.first_failure.is_none() {
                        report.first_failure = Some(ExtensionFailure {
                            pattern: pattern.to_string(),
                            image: image.clone(),
                            extension: ext.to_string(),
                            position: *pos,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Searches for a vertex of `f` witnessing one extension demand over the
/// given image: it must lie strictly inside the demanded order slot and
/// carry exactly the demanded faces.
fn extension_witness(
    f: &FiniteOrderedComplex,
    index: &FaceIndex,
    image: &[u32],
    ext: &FiniteOrderedComplex,
    pos: usize,
) -> Option<u32> {
    let lo = if pos == 0 {
        0
    } else {
        f.position_of(image[pos - 1]).expect("image vertex") + 1
    };
    let hi = if pos == image.len() {
        f.len()
    } else {
        f.position_of(image[pos]).expect("image vertex")
    };
    for &w in &f.vertices()[lo..hi] {
        if image.binary_search(&w).is_ok() {
            continue;
        }
        let mut labels: Vec<u32> = image.to_vec();
        labels.insert(pos, w);
        labels.sort_unstable();
        if index.induced_canonical(&labels) == *ext {
            return Some(w);
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct UltraFailure {
    pub source: Vec<u32>,
    pub target: Vec<u32>,
    pub extend_by: u32,
}

/// Report of a one-step ultrahomogeneity sweep. Demands whose order slot
/// contains no candidate vertex at all are vacuous and counted separately:
/// an isomorphism only has to extend while room remains.
#[derive(Debug, Clone, Serialize)]
pub struct UltraReport {
    pub checked: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub first_failure: Option<UltraFailure>,
}

impl UltraReport {
    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

/// For every pair of order-isomorphic induced substructures `X, Y` of `f`
/// with at most `s` vertices (the isomorphism of ordered structures is
/// unique), checks one-step extendability: for each `x` outside `X`, if the
/// matching order slot over `Y` contains any vertex, some such vertex must
/// extend the isomorphism.
pub fn check_ultrahomogeneity_truncated(
    f: &FiniteOrderedComplex,
    class: &ClassSpec,
    s: usize,
    guards: &Guards,
) -> Result<UltraReport> {
    if s == 0 || s > 3 {
        return Err(Error::invalid("the substructure bound must lie in 1..=3"));
    }
    if !class.contains(f) {
        return Err(Error::invalid("the complex is not a member of the class"));
    }
    let index = FaceIndex::build(f, s + 1);
    let n = f.len();
    let mut report = UltraReport {
        checked: 0,
        passed: 0,
        vacuous: 0,
        first_failure: None,
    };
    let mut work = 0usize;
    for size in 1..=s.min(n) {
        // group the size-`size` subsets by canonical induced form
        let subsets: Vec<Vec<u32>> = combinations(n, size)
            .into_iter()
            .map(|c| c.iter().map(|&i| f.vertices()[i]).collect())
            .collect();
        let forms: Vec<FiniteOrderedComplex> = subsets
            .iter()
            .map(|y| index.induced_canonical(y))
            .collect();
        for (xi, x_set) in subsets.iter().enumerate() {
            for (yi, y_set) in subsets.iter().enumerate() {
                if xi == yi || forms[xi] != forms[yi] {
                    continue;
                }
                work += 1;
                if work > guards.enumeration_budget {
                    return Err(Error::limit(
                        "ultrahomogeneity sweep exceeded the enumeration budget",
                    ));
                }
                for &x in f.vertices() {
                    if x_set.binary_search(&x).is_ok() {
                        continue;
                    }
                    let slot = x_set.partition_point(|&v| v < x);
                    let lo = if slot == 0 {
                        0
                    } else {
                        f.position_of(y_set[slot - 1]).expect("vertex") + 1
                    };
                    let hi = if slot == y_set.len() {
                        n
                    } else {
                        f.position_of(y_set[slot]).expect("vertex")
                    };
                    let candidates: Vec<u32> = f.vertices()[lo..hi]
                        .iter()
                        .copied()
                        .filter(|v| y_set.binary_search(v).is_err())
                        .collect();
                    if candidates.is_empty() {
                        report.vacuous += 1;
                        continue;
                    }
                    report.checked += 1;
                    let mut x_ext = x_set.clone();
                    x_ext.insert(slot, x);
                    let x_form = index.induced_canonical(&x_ext);
                    let mut found = false;
                    for v in candidates {
                        let mut y_ext = y_set.clone();
                        y_ext.insert(slot, v);
                        if index.induced_canonical(&y_ext) == x_form {
                            found = true;
                            break;
                        }
                    }
                    if found {
                        report.passed += 1;
                    } else if report.first_failure.is_none() {
                        report.first_failure = Some(UltraFailure {
                            source: x_set.clone(),
                            target: y_set.clone(),
                            extend_by: x,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
