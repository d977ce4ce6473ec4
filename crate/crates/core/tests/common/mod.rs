#![allow(dead_code)]

//! Shared helpers for the integration suites: fixture loading and the
//! seeded random-ontology corpus used by the property and acceptance tests.

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use ontolite::io::{parse_document, ParsedDocument};
use ontolite::{Concept, Inclusion, Name, Ontology, RoleDescription, Vocabulary};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn load_doc(name: &str) -> ParsedDocument {
    parse_document(&fixture_text(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn load(name: &str) -> Ontology {
    load_doc(name).ontology
}

pub fn name(s: &str) -> Name {
    Name::plain(s)
}

pub fn atom(s: &str) -> Concept {
    Concept::atomic(name(s))
}

pub fn sub(lhs: Concept, rhs: Concept) -> Inclusion {
    Inclusion::new(lhs, rhs)
}

// ---------------------------------------------------------------------
// Random corpus: up to 6 atomic concepts, 3 roles, cardinalities up to 3,
// up to 15 constraints.

pub const CONCEPTS: [&str; 6] = ["C0", "C1", "C2", "C3", "C4", "C5"];
pub const ROLES: [&str; 3] = ["P0", "P1", "P2"];

pub fn corpus_vocabulary() -> Vocabulary {
    Vocabulary::new(
        CONCEPTS.iter().map(|s| name(s)).collect(),
        ROLES.iter().map(|s| name(s)).collect(),
    )
    .unwrap()
}

fn random_role(rng: &mut ChaCha8Rng) -> RoleDescription {
    let r = name(ROLES[rng.gen_range(0..ROLES.len())]);
    if rng.gen_bool(0.5) {
        RoleDescription::Direct(r)
    } else {
        RoleDescription::Inverse(r)
    }
}

fn random_lhs(rng: &mut ChaCha8Rng) -> Concept {
    if rng.gen_bool(0.7) {
        atom(CONCEPTS[rng.gen_range(0..CONCEPTS.len())])
    } else {
        Concept::at_least(rng.gen_range(1..=3), random_role(rng))
    }
}

fn random_rhs(rng: &mut ChaCha8Rng) -> Concept {
    match rng.gen_range(0..10) {
        0 => Concept::bottom(),
        1..=4 => atom(CONCEPTS[rng.gen_range(0..CONCEPTS.len())]),
        5 | 6 => Concept::at_least(rng.gen_range(1..=3), random_role(rng)),
        7 | 8 => atom(CONCEPTS[rng.gen_range(0..CONCEPTS.len())]).complement(),
        _ => Concept::at_least(rng.gen_range(1..=3), random_role(rng)).complement(),
    }
}

pub fn random_sigma(rng: &mut ChaCha8Rng) -> BTreeSet<Inclusion> {
    let count = rng.gen_range(0..=15);
    (0..count).map(|_| Inclusion::new(random_lhs(rng), random_rhs(rng))).collect()
}

pub fn random_ontology(rng: &mut ChaCha8Rng) -> Ontology {
    Ontology::new(corpus_vocabulary(), random_sigma(rng)).unwrap()
}

/// The descriptions occurring as a side of some constraint, in canonical
/// order.
pub fn occurring(sigma: &BTreeSet<Inclusion>) -> Vec<Concept> {
    let set: BTreeSet<Concept> =
        sigma.iter().flat_map(|i| [i.lhs.clone(), i.rhs.clone()]).collect();
    set.into_iter().collect()
}

/// Every extended inclusion between occurring descriptions (plus bottom as
/// a right-hand side).
pub fn candidate_queries(sigma: &BTreeSet<Inclusion>) -> Vec<Inclusion> {
    let sides = occurring(sigma);
    let mut rhs: Vec<Concept> = sides.clone();
    if !rhs.contains(&Concept::bottom()) {
        rhs.push(Concept::bottom());
    }
    let mut out = Vec::new();
    for e in &sides {
        if !(e.is_positive_basic() || e.is_top()) {
            continue;
        }
        for f in &rhs {
            let q = Inclusion::new(e.clone(), f.clone());
            if q.is_extended() {
                out.push(q);
            }
        }
    }
    out
}

/// Deterministically thin a list down to at most `cap` elements.
pub fn thin<T>(items: Vec<T>, cap: usize) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let step = items.len().div_ceil(cap);
    items.into_iter().step_by(step).collect()
}
