//! Randomized invariants of the graph machinery and the operations, beyond
//! what the acceptance criteria pin down.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{atom, candidate_queries, name, occurring, random_ontology, random_sigma, sub, thin};
use ontolite::algebra::{intersect, union};
use ontolite::graph::ConstraintGraph;
use ontolite::io::{parse_ontology, serialize_ontology};
use ontolite::minimize::minimize_constraints;
use ontolite::normalize::{normalize_constraints, RawConstraint, SugaredBasic, SugaredConcept};
use ontolite::reason::{all_consequences, equivalent_theories, implies, Saturation};
use ontolite::{Concept, Inclusion, RoleDescription};

#[test]
fn reachability_respects_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..80 {
        let sigma = random_sigma(&mut rng);
        let g = ConstraintGraph::build(&sigma, &BTreeSet::new());
        for a in g.node_ids() {
            let reach = g.reachable_from(a);
            for b in g.node_ids() {
                assert_eq!(
                    reach[b.index()],
                    g.reaches_node(g.dual(b), g.dual(a)),
                    "duality of reachability violated"
                );
            }
        }
    }
}

#[test]
fn paths_out_of_positive_nodes_are_implications() {
    // every label pair along a path out of a positively labeled node is a
    // consequence of the constraint set, cross-checked with the saturation
    // oracle
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let sigma = random_sigma(&mut rng);
        let g = ConstraintGraph::build(&sigma, &BTreeSet::new());
        let saturation = Saturation::new(&sigma, &BTreeSet::new());
        for m in g.node_ids() {
            if !g.is_positive_node(m) {
                continue;
            }
            let reach = g.reachable_from(m);
            for n in g.node_ids() {
                if !reach[n.index()] || m == n {
                    continue;
                }
                for e in g.labels(m) {
                    for f in g.labels(n) {
                        let q = Inclusion::new(e.clone(), f.clone());
                        assert!(q.is_lightweight() || q.is_extended());
                        assert!(
                            saturation.implies(&q),
                            "path claims {q} but the oracle rejects it"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn retagging_is_idempotent_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..80 {
        let sigma = random_sigma(&mut rng);
        let g = ConstraintGraph::build(&sigma, &BTreeSet::new());
        let mut again = g.clone();
        again.retag();
        for n in g.node_ids() {
            assert_eq!(g.is_bottom_node(n), again.is_bottom_node(n));
            assert_eq!(g.is_top_node(n), again.is_top_node(n));
        }
    }
}

#[test]
fn implication_is_monotone_under_union_of_constraints() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let sigma = random_sigma(&mut rng);
        let extra = random_sigma(&mut rng);
        let bigger: BTreeSet<Inclusion> = sigma.union(&extra).cloned().collect();
        for q in thin(candidate_queries(&sigma), 40) {
            if implies(&sigma, &q) {
                assert!(implies(&bigger, &q), "monotonicity violated on {q}");
            }
        }
    }
}

#[test]
fn theory_equivalence_behaves_like_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let sigma = random_sigma(&mut rng);
        let minimized = minimize_constraints(&sigma);
        let padded: BTreeSet<Inclusion> = sigma.union(&minimized).cloned().collect();
        let other = random_sigma(&mut rng);

        // reflexivity and symmetry
        assert!(equivalent_theories(&sigma, &sigma));
        assert_eq!(
            equivalent_theories(&sigma, &other),
            equivalent_theories(&other, &sigma)
        );
        // transitivity across three known-equivalent presentations
        assert!(equivalent_theories(&sigma, &minimized));
        assert!(equivalent_theories(&minimized, &padded));
        assert!(equivalent_theories(&sigma, &padded));
    }
}

#[test]
fn consequence_sets_are_closed_under_consequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..30 {
        let sigma = random_sigma(&mut rng);
        let consequences = all_consequences(&sigma);
        for q in &consequences {
            assert!(!q.is_valid(), "valid inclusion in consequences: {q}");
        }
        let again = all_consequences(&consequences);
        assert!(
            again.is_subset(&consequences),
            "consequences escaped their own universe"
        );
    }
}

#[test]
fn union_implies_every_input_constraint() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let o1 = random_ontology(&mut rng);
        let o2 = random_ontology(&mut rng);
        let united = union(&o1, &o2).unwrap();
        for q in o1.constraints().union(o2.constraints()) {
            assert!(implies(united.constraints(), q), "union lost {q}");
        }
        let flipped = union(&o2, &o1).unwrap();
        assert!(equivalent_theories(united.constraints(), flipped.constraints()));
    }
}

#[test]
fn intersection_commutes_up_to_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..25 {
        let o1 = random_ontology(&mut rng);
        let o2 = random_ontology(&mut rng);
        let ab = intersect(&o1, &o2).unwrap();
        let ba = intersect(&o2, &o1).unwrap();
        assert!(equivalent_theories(ab.constraints(), ba.constraints()));
    }
}

#[test]
fn minimization_emits_no_tautologies_and_is_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..60 {
        let sigma = random_sigma(&mut rng);
        let once = minimize_constraints(&sigma);
        for q in &once {
            assert!(!q.is_valid(), "tautological output: {q}");
            assert!(q.is_lightweight(), "non-lightweight output: {q}");
        }
        let twice = minimize_constraints(&once);
        assert_eq!(once.len(), twice.len());
        assert!(equivalent_theories(&once, &twice));
    }
}

#[test]
fn normalization_preserves_the_theory_of_sugared_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    use rand::Rng;
    for _ in 0..40 {
        // sugared forms: exists, atmost, Top on the right, equivalences,
        // contrapositives, vacuous members
        let mut raw = Vec::new();
        let mut plain = BTreeSet::new();
        for _ in 0..rng.gen_range(0..8) {
            let c = atom(common::CONCEPTS[rng.gen_range(0..6)]);
            let d = atom(common::CONCEPTS[rng.gen_range(0..6)]);
            let p = RoleDescription::Direct(name(common::ROLES[rng.gen_range(0..3)]));
            let sugared = match rng.gen_range(0..6) {
                0 => RawConstraint::Sub(
                    SugaredConcept::Positive(SugaredBasic::Exists(p)),
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&c))),
                ),
                1 => RawConstraint::Sub(
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&c))),
                    SugaredConcept::AtMost(rng.gen_range(0..3), p),
                ),
                2 => RawConstraint::Sub(
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&c))),
                    SugaredConcept::Top,
                ),
                3 => RawConstraint::Equiv(
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&c))),
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&d))),
                ),
                4 => RawConstraint::Sub(
                    SugaredConcept::Negated(SugaredBasic::Named(name_of(&c))),
                    SugaredConcept::Negated(SugaredBasic::Named(name_of(&d))),
                ),
                _ => RawConstraint::Sub(
                    SugaredConcept::Positive(SugaredBasic::Bottom),
                    SugaredConcept::Positive(SugaredBasic::Named(name_of(&c))),
                ),
            };
            for incl in sugared.expand() {
                plain.insert(incl);
            }
            raw.push(sugared);
        }
        let normalized = normalize_constraints(&raw, false).unwrap();
        for q in &normalized {
            assert!(q.is_lightweight());
        }
        // mutual implication under the saturation oracle, which accepts the
        // raw (unnormalized) forms as axioms directly; the raw descriptions
        // are passed as extras so dropped vacuous members stay checkable
        let raw_descriptions: BTreeSet<Concept> = occurring(&plain).into_iter().collect();
        let raw_sat = Saturation::new(&plain, &raw_descriptions);
        let norm_sat = Saturation::new(&normalized, &raw_descriptions);
        for q in &normalized {
            assert!(raw_sat.implies(q), "normalization invented {q}");
        }
        for q in &plain {
            assert!(norm_sat.implies(q), "normalization lost {q}");
        }
    }
}

fn name_of(c: &Concept) -> ontolite::Name {
    match c.basic() {
        ontolite::BasicConcept::Atomic(n) => n.clone(),
        _ => panic!("atomic expected"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = random_ontology(&mut rng);
        let text = serialize_ontology(&o);
        let reparsed = parse_ontology(&text).unwrap();
        prop_assert_eq!(&reparsed, &o);
        prop_assert_eq!(serialize_ontology(&reparsed), text);
    }

    #[test]
    fn complement_is_involutive_on_occurring_descriptions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_sigma(&mut rng);
        for c in occurring(&sigma) {
            prop_assert_eq!(c.complement().complement(), c);
        }
    }

    #[test]
    fn canonical_order_is_total_and_strict(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_sigma(&mut rng);
        let descriptions = occurring(&sigma);
        for a in &descriptions {
            for b in &descriptions {
                let forward = a.cmp(b);
                prop_assert_eq!(forward.reverse(), b.cmp(a));
                prop_assert_eq!(forward == std::cmp::Ordering::Equal, a == b);
            }
        }
        let mut sorted: Vec<Concept> = descriptions.clone();
        sorted.sort();
        let mut again: Vec<Concept> = descriptions;
        again.sort();
        prop_assert_eq!(sorted, again);
    }

    #[test]
    fn reaches_matches_implication_for_plain_paths(seed in any::<u64>()) {
        // on untagged graphs (no bottoms), implication is exactly
        // reachability
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma: BTreeSet<Inclusion> = random_sigma(&mut rng)
            .into_iter()
            .filter(|q| !q.rhs.is_bottom())
            .collect();
        let g = ConstraintGraph::build(&sigma, &BTreeSet::new());
        if g.node_ids().any(|n| g.is_bottom_node(n)) {
            return Ok(()); // contradictions can still tag nodes
        }
        for q in thin(candidate_queries(&sigma), 30) {
            if let (Some(_), Some(_)) = (g.node_of(&q.lhs), g.node_of(&q.rhs)) {
                prop_assert_eq!(
                    g.reaches(&q.lhs, &q.rhs).unwrap(),
                    implies(&sigma, &q),
                    "reachability and implication disagree on {}", q
                );
            }
        }
    }
}

#[test]
fn worked_difference_examples_hold() {
    // difference against oneself leaves nothing
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let o = random_ontology(&mut rng);
        let d = ontolite::algebra::difference(&o, &o);
        assert!(
            d.constraints().is_empty(),
            "difference with itself kept {:?}",
            d.constraints()
        );
    }
}

#[test]
fn projecting_onto_the_full_vocabulary_is_minimization() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let o = random_ontology(&mut rng);
        let full: BTreeSet<ontolite::Name> = o.vocabulary().names().cloned().collect();
        let p = ontolite::algebra::project(&o, &full).unwrap();
        assert!(equivalent_theories(p.constraints(), o.constraints()));
        let m = minimize_constraints(o.constraints());
        assert_eq!(p.constraints(), &m);
    }
}

#[test]
fn deprecation_warns_about_absent_members() {
    let o = random_ontology(&mut ChaCha8Rng::seed_from_u64(23));
    let absent = sub(atom("C0"), atom("C1").complement());
    let psi = BTreeSet::from([absent.clone()]);
    let outcome = ontolite::algebra::deprecate(&o, &psi);
    if o.constraints().contains(&absent) {
        assert!(outcome.ignored.is_empty());
    } else {
        assert_eq!(outcome.ignored, psi);
    }
}
