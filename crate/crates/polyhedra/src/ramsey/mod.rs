//! Arrow-relation checking, CNF export, the constructive pigeonhole step and
//! the finite Ramsey statement for approximation classes.

mod arrow;
mod cnf;
mod pigeonhole;
mod space;

pub use arrow::{
    arrow_check, arrow_search_min, verify_counterexample, Ambient, ArrowInstance, ArrowQuery,
    ArrowResult, Coloring, SearchMode, SearchStats,
};
pub use cnf::{brute_force_model, decode_model, export_cnf, parse_dimacs, CnfInstance};
pub use pigeonhole::{extensions_within, one_vertex_extensions, pigeonhole_step};
pub use space::{
    enumerate_space_approx, space_ramsey_check, space_ramsey_search_min, SpaceRamseyResult,
};

use crate::complex::FiniteOrderedComplex;
use crate::oracle::{oracle_leq, ComplexOracle};

/// Horizon-bounded membership in the neighborhood `[a, A]`: some truncation
/// of `B` equals `a` as a pair and `B <= A` holds as far as the horizon
/// reaches. Sound for `false`, provisional for `true`.
pub fn neighborhood_member(
    b: &ComplexOracle,
    a: &FiniteOrderedComplex,
    big_a: &ComplexOracle,
    horizon: usize,
) -> bool {
    let n = a.len();
    match b.truncate(n) {
        Ok(t) if t == *a => {}
        _ => return false,
    }
    oracle_leq(b, big_a, horizon)
}
