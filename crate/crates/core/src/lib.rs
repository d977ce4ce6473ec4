//! An algebra of lightweight ontologies.
//!
//! Ontologies are treated as theories: a vocabulary plus a finite set of
//! lightweight inclusions (the fragment of atomic concepts, at-least
//! restrictions over roles and their inverses, bottom, and negations on the
//! right-hand side). Logical implication is decided structurally on a
//! tagged constraint graph, constraint sets are minimized through the
//! minimal equivalent graph, and the algebra operations (projection, union,
//! deprecation, intersection, difference, closed fragments, renaming)
//! compose on top of that machinery.
//!
//! The [`reason`] module also ships a saturation-based oracle that decides
//! implication without touching the graph code; the test suites hold the
//! two procedures against each other.

pub mod algebra;
pub mod graph;
pub mod io;
pub mod minimize;
pub mod model;
pub mod normalize;
pub mod reason;

pub use model::{
    BasicConcept, Concept, Inclusion, ModelError, Name, Ontology, RoleDescription, SymbolKind,
    Vocabulary,
};
