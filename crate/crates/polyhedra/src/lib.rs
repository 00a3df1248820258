//! A workbench for finite ordered polyhedra — hereditary set families over
//! linearly ordered vertex sets — and for the infinite complexes they
//! approximate.
//!
//! The library is organized around a small core:
//!
//! * [`complex`] — the [`FiniteOrderedComplex`] type (vertices plus a facet
//!   antichain) with the restriction / approximation / order / depth calculus
//!   and canonical-form enumeration of small class members.
//! * [`oracle`] — finitely presented infinite complexes exposed through their
//!   truncations, and the depth of a finite approximation inside them.
//! * [`embed`] — order-preserving embedding search in the weak
//!   (face-preserving) and strong (induced) senses.
//! * [`ramsey`] — arrow-relation checking by adversarial coloring search,
//!   DIMACS export, the constructive pigeonhole step, and the finite Ramsey
//!   statement for approximation classes.
//! * [`fraisse`] — Fraisse-class axiom verification (heredity, joint
//!   embedding, free amalgamation) and a step-bounded limit builder with
//!   dyadic order keys.
//! * [`randgen`] — coin-flip generation of random polyhedra and random
//!   k-polyhedra with embedding-coverage statistics.
//! * [`format`] — the JSON and one-line text formats shared with the CLI.

pub mod class;
pub mod complex;
pub mod embed;
pub mod error;
pub mod format;
pub mod fraisse;
pub mod guards;
pub mod oracle;
pub mod ramsey;
pub mod randgen;
pub mod rng;

pub use class::ClassSpec;
pub use complex::FiniteOrderedComplex;
pub use embed::{Embedding, EmbeddingMode};
pub use error::{Error, Result};
pub use guards::Guards;
pub use oracle::{ComplexOracle, Depth};
