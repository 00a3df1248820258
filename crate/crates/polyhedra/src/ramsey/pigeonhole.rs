//! The constructive pigeonhole step: given an approximation `a` inside an
//! oracle `B` and a 2-coloring of its one-vertex extensions, produce a
//! truncation of `B` on which all extensions of `a` share one color.

use crate::complex::FiniteOrderedComplex;
use crate::error::{Error, Result};
use crate::oracle::{depth, ComplexOracle, Depth};

/// The one-vertex extension pairs of `a` inside a finite complex `d`:
/// for every vertex `m` of `d` above `max(a)`, the induced pair
/// `(a ∪ {m}, S_d | a ∪ {m})`, listed by increasing `m`.
pub fn one_vertex_extensions(
    a: &FiniteOrderedComplex,
    d: &FiniteOrderedComplex,
) -> Result<Vec<(u32, FiniteOrderedComplex)>> {
    let top = a
        .max_vertex()
        .ok_or_else(|| Error::invalid("extensions of the empty complex are not defined here"))?;
    let mut out = Vec::new();
    for &m in d.vertices() {
        if m <= top {
            continue;
        }
        let mut labels = a.vertices().to_vec();
        labels.push(m);
        out.push((m, d.restrict(&labels)?));
    }
    Ok(out)
}

/// Candidate extension vertices of `a` in `b` up to the horizon, together
/// with the induced extension pair colored by the caller. Because
/// singletons are faces of every family, every stream vertex above `max(a)`
/// qualifies.
pub fn extensions_within(
    a: &FiniteOrderedComplex,
    b: &ComplexOracle,
    horizon: usize,
) -> Result<Vec<(u32, FiniteOrderedComplex)>> {
    let top = a
        .max_vertex()
        .ok_or_else(|| Error::invalid("extensions of the empty complex are not defined here"))?;
    let span = match b.presented_length() {
        Some(len) => len.min(horizon),
        None => horizon,
    };
    let mut out = Vec::new();
    for pos in 0..span {
        let m = match b.vertex(pos) {
            Some(m) if m > top => m,
            _ => continue,
        };
        let mut labels = a.vertices().to_vec();
        labels.push(m);
        out.push((m, b.induced_pair(&labels, horizon)?));
    }
    Ok(out)
}

/// Runs one pigeonhole step. The returned complex is the truncation
/// `(B | depth(a)) ∪ X_i` with the induced family, where `X_i` is the larger
/// color class of candidate extensions within the horizon (ties to color 0).
/// Every one-vertex extension of `a` inside the result has color `i`.
pub fn pigeonhole_step(
    a: &FiniteOrderedComplex,
    b: &ComplexOracle,
    coloring: impl Fn(u32, &FiniteOrderedComplex) -> u8,
    horizon: usize,
) -> Result<FiniteOrderedComplex> {
    let n = match depth(a, b, horizon)? {
        Depth::Defined(n) => n,
        Depth::Undefined { .. } => {
            return Err(Error::invalid(
                "the approximation is not compatible with the oracle (depth undefined)",
            ))
        }
    };
    let candidates = extensions_within(a, b, horizon)?;
    if candidates.is_empty() {
        return Err(Error::NoCandidates(format!(
            "no extension vertices above max(a) within horizon {horizon}"
        )));
    }
    let mut class0 = Vec::new();
    let mut class1 = Vec::new();
    for (m, ext) in &candidates {
        match coloring(*m, ext) {
            0 => class0.push(*m),
            _ => class1.push(*m),
        }
    }
    let chosen = if class1.len() > class0.len() {
        &class1
    } else {
        &class0
    };
    let prefix = b.truncate(n)?;
    let mut labels: Vec<u32> = prefix.vertices().to_vec();
    labels.extend(chosen.iter().copied());
    labels.sort_unstable();
    labels.dedup();
    b.restrict_to(&labels, horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coloring_realizes_that_color() {
        let b = ComplexOracle::pure_set_naturals();
        let a = FiniteOrderedComplex::pure_set(&[0, 1]);
        let result = pigeonhole_step(&a, &b, |_, _| 1, 30).unwrap();
        let exts = one_vertex_extensions(&a, &result).unwrap();
        assert!(!exts.is_empty());
        // all candidates were colored 1, so the chosen class realizes 1
        assert!(exts.iter().all(|(m, _)| *m > 1));
    }

    #[test]
    fn parity_coloring_separates() {
        let b = ComplexOracle::pure_set_naturals();
        let a = FiniteOrderedComplex::pure_set(&[0]);
        let result = pigeonhole_step(&a, &b, |m, _| (m % 2) as u8, 40).unwrap();
        let exts = one_vertex_extensions(&a, &result).unwrap();
        let parities: Vec<u32> = exts.iter().map(|(m, _)| m % 2).collect();
        assert!(!parities.is_empty());
        assert!(
            parities.iter().all(|&p| p == parities[0]),
            "extensions mix parities: {parities:?}"
        );
    }

    #[test]
    fn membership_coloring_on_simplex() {
        let b = ComplexOracle::full_simplex();
        let a = FiniteOrderedComplex::simplex_on(&[0, 1]);
        let special = [3u32, 5, 8, 13, 21, 34];
        let color = |m: u32, _: &FiniteOrderedComplex| u8::from(special.contains(&m));
        let result = pigeonhole_step(&a, &b, color, 50).unwrap();
        let exts = one_vertex_extensions(&a, &result).unwrap();
        let colors: Vec<u8> = exts.iter().map(|(m, e)| color(*m, e)).collect();
        assert!(!colors.is_empty());
        assert!(colors.iter().all(|&c| c == colors[0]));
        // majority within horizon 50 is the non-special class
        assert_eq!(colors[0], 0);
    }

    #[test]
    fn prefix_is_preserved() {
        let b = ComplexOracle::seeded_random(2, 9, 0.5).unwrap();
        let a = b.truncate(3).unwrap();
        let result = pigeonhole_step(&a, &b, |m, _| (m % 2) as u8, 30).unwrap();
        assert!(a.leq(&result));
        assert_eq!(result.approx(3).unwrap(), a);
    }

    #[test]
    fn incompatible_approximation_rejected() {
        let b = ComplexOracle::pure_set_naturals();
        let a = FiniteOrderedComplex::close_downward(&[vec![0, 1]], &[0, 1]).unwrap();
        assert!(pigeonhole_step(&a, &b, |_, _| 0, 20).is_err());
    }
}
