//! The ontology operations: projection, union, deprecation, intersection,
//! difference, closed fragments, and vocabulary renaming. Every
//! constraint-producing operation returns a minimized, theory-equivalent
//! constraint set.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{ConstraintGraph, NodeId};
use crate::minimize::{generate_constraints, minimize_constraints, minimize_graph};
use crate::model::{Concept, Inclusion, ModelError, Name, Ontology, RoleDescription, Vocabulary};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Model(Box<ModelError>),
    #[error("names not in the vocabulary: {}", .0.iter().map(Name::to_string).collect::<Vec<_>>().join(", "))]
    UnknownNames(Vec<Name>),
    #[error("renaming is not injective: `{0}` and `{1}` map to the same target")]
    NotInjective(String, String),
}

impl From<ModelError> for AlgebraError {
    fn from(e: ModelError) -> Self {
        AlgebraError::Model(Box::new(e))
    }
}

/// An injective renaming of vocabulary elements.
#[derive(Clone, Debug, Default)]
pub struct RenamingMap {
    map: BTreeMap<Name, Name>,
}

impl RenamingMap {
    pub fn new(pairs: impl IntoIterator<Item = (Name, Name)>) -> Result<Self, AlgebraError> {
        let mut map = BTreeMap::new();
        let mut targets: BTreeMap<Name, Name> = BTreeMap::new();
        for (src, dst) in pairs {
            if let Some(previous) = targets.get(&dst) {
                if *previous != src {
                    return Err(AlgebraError::NotInjective(
                        previous.to_string(),
                        src.to_string(),
                    ));
                }
            }
            targets.insert(dst.clone(), src.clone());
            map.insert(src, dst);
        }
        Ok(RenamingMap { map })
    }

    pub fn apply(&self, name: &Name) -> Name {
        self.map.get(name).cloned().unwrap_or_else(|| name.clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Union: merged vocabulary (shared names must agree in kind) and the
/// minimized union of the constraint sets.
pub fn union(o1: &Ontology, o2: &Ontology) -> Result<Ontology, AlgebraError> {
    let vocab = o1.vocabulary().union(o2.vocabulary())?;
    let merged: BTreeSet<Inclusion> = o1.constraints().union(o2.constraints()).cloned().collect();
    Ok(Ontology::new(vocab, minimize_constraints(&merged))?)
}

/// Result of a deprecation: the new ontology plus the requested constraints
/// that were not present and were therefore ignored.
#[derive(Debug)]
pub struct Deprecation {
    pub ontology: Ontology,
    pub ignored: BTreeSet<Inclusion>,
}

/// Deprecation: syntactic removal of constraints (not theory difference),
/// followed by minimization. The vocabulary is unchanged.
pub fn deprecate(o: &Ontology, psi: &BTreeSet<Inclusion>) -> Deprecation {
    let ignored: BTreeSet<Inclusion> = psi.difference(o.constraints()).cloned().collect();
    let remaining: BTreeSet<Inclusion> = o.constraints().difference(psi).cloned().collect();
    let ontology = Ontology::new(o.vocabulary().clone(), minimize_constraints(&remaining))
        .expect("a subset of a valid constraint set stays valid");
    Deprecation { ontology, ignored }
}

/// Projection onto a vocabulary subset: every consequence expressible within
/// the kept names survives. Implemented by closing the tagged constraint
/// graph transitively, deleting labels that mention dropped names (tags are
/// retained: a bottom tag may well be justified only by dropped names, yet
/// `e ⊑ Bottom` still holds over the kept ones), then reducing and
/// regenerating.
pub fn project(o: &Ontology, keep: &BTreeSet<Name>) -> Result<Ontology, AlgebraError> {
    let unknown: Vec<Name> = keep
        .iter()
        .filter(|n| !o.vocabulary().contains(n))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(AlgebraError::UnknownNames(unknown));
    }
    let g = ConstraintGraph::build(o.constraints(), &BTreeSet::new());
    let filtered = g
        .transitive_closure()
        .retain_labels(|c| c.typed_symbols().iter().all(|(n, _)| keep.contains(n)));
    let constraints = generate_constraints(&minimize_graph(&filtered));
    let vocab = Vocabulary::new(
        o.vocabulary().concepts().iter().filter(|n| keep.contains(n)).cloned().collect(),
        o.vocabulary().roles().iter().filter(|n| keep.contains(n)).cloned().collect(),
    )?;
    Ok(Ontology::new(vocab, constraints)?)
}

/// The descriptions occurring (as a side of an inclusion) in exactly one of
/// the two constraint sets. Probing both constraint graphs with this set
/// aligns their node universes.
pub fn closure_delta(s1: &BTreeSet<Inclusion>, s2: &BTreeSet<Inclusion>) -> BTreeSet<Concept> {
    let occurring = |s: &BTreeSet<Inclusion>| -> BTreeSet<Concept> {
        s.iter().flat_map(|i| [i.lhs.clone(), i.rhs.clone()]).collect()
    };
    occurring(s1).symmetric_difference(&occurring(s2)).cloned().collect()
}

/// Intersection: the constraints implied by both inputs, over the shared
/// vocabulary. Case analysis over the two aligned tagged graphs; the
/// top-node cases come out through the dual bottom nodes.
pub fn intersect(o1: &Ontology, o2: &Ontology) -> Result<Ontology, AlgebraError> {
    // shared names must agree in kind
    o1.vocabulary().union(o2.vocabulary())?;
    let vocab = o1
        .vocabulary()
        .intersection(o2.vocabulary())
        .expect("intersection of kind-consistent vocabularies");

    let delta = closure_delta(o1.constraints(), o2.constraints());
    let g1 = ConstraintGraph::build(o1.constraints(), &delta);
    let g2 = ConstraintGraph::build(o2.constraints(), &delta);

    let mut sigma3: BTreeSet<Inclusion> = BTreeSet::new();
    let mut push = |e: &Concept, f: &Concept| {
        let q = Inclusion::new(e.clone(), f.clone());
        if q.is_valid() {
            return;
        }
        debug_assert!(q.is_extended());
        // the result may only speak about shared names
        if q.symbols().iter().all(|n| vocab.contains(n)) {
            sigma3.insert(q);
        }
    };

    let g2_tops: Vec<NodeId> = g2.node_ids().filter(|&k| g2.is_top_node(k)).collect();
    for m in g1.node_ids() {
        if !g1.is_positive_node(m) {
            continue;
        }
        if g1.is_bottom_node(m) {
            for e in g1.labels(m) {
                let Some(e2) = g2.node_of(e) else { continue };
                if g2.is_bottom_node(e2) {
                    push(e, &Concept::bottom());
                }
                for &k in &g2_tops {
                    for f in g2.labels(k) {
                        push(e, f);
                    }
                }
                let reach2 = g2.reachable_from(e2);
                for n2 in g2.node_ids() {
                    if reach2[n2.index()] {
                        for f in g2.labels(n2) {
                            push(e, f);
                        }
                    }
                }
            }
        } else {
            let reach1 = g1.reachable_from(m);
            for n in g1.node_ids() {
                if !reach1[n.index()] {
                    continue;
                }
                for e in g1.labels(m) {
                    let Some(e2) = g2.node_of(e) else { continue };
                    let e2_bottom = g2.is_bottom_node(e2);
                    let reach2 = g2.reachable_from(e2);
                    for f in g1.labels(n) {
                        let Some(f2) = g2.node_of(f) else { continue };
                        if e2_bottom || g2.is_top_node(f2) || reach2[f2.index()] {
                            push(e, f);
                        }
                    }
                }
            }
        }
    }

    Ok(Ontology::new(vocab, minimize_constraints(&sigma3))?)
}

/// One pruning step against a surviving realization of a forbidden
/// inclusion.
enum Prune {
    /// Drop a node and its dual with all adjacent arcs.
    DropNodePair(NodeId),
    /// Remove a label (and its complement from the dual node).
    RemoveLabel(Concept),
    /// Remove an arc and its dual.
    RemoveArc(NodeId, NodeId),
    /// Strip a node to its least label (pure-tautological path escape).
    StripNode(NodeId),
}

/// Nodes through which the regenerated output could still derive `e ⊑ g`
/// (resp. `g ⊑ f`) by a valid step: the node labeled with the description
/// itself, or at-least weakenings over the same role. Covers descriptions
/// whose own node was pruned away but which re-enter through tautological
/// arcs of the regenerated graph.
fn anchor_nodes(
    h: &ConstraintGraph,
    c: &Concept,
    source_side: bool,
) -> Vec<(NodeId, Concept)> {
    let mut out = Vec::new();
    for g in h.all_labels() {
        let admissible = if source_side {
            *g == *c || (!g.is_top() && Inclusion::new(c.clone(), g.clone()).is_valid())
        } else {
            *g == *c || (!g.is_bottom() && Inclusion::new(g.clone(), c.clone()).is_valid())
        };
        if admissible {
            out.push((h.node_of(g).expect("label"), g.clone()));
        }
    }
    out
}

/// Nodes whose bottom tag would force `c ⊑ Bottom` in the regenerated
/// output: the weakening anchors of `c`, plus the `atleast 1` nodes of the
/// role in both directions (role emptiness couples them regardless of
/// direction or count).
fn bottom_suspects(h: &ConstraintGraph, c: &Concept, anchors: &[(NodeId, Concept)]) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = anchors.iter().map(|(x, _)| *x).collect();
    if let Some((_, p)) = c.at_least_parts() {
        for dir in [
            RoleDescription::Direct(p.name().clone()),
            RoleDescription::Inverse(p.name().clone()),
        ] {
            if let Some(x) = h.node_of(&Concept::at_least(1, dir)) {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Find how the graph still realizes the forbidden inclusion `e ⊑ f`
/// (bottom-tagged source, top-tagged target, or a connecting path) and plan
/// the deterministic prune that removes that realization.
fn plan_prune(h: &ConstraintGraph, e: &Concept, f: &Concept) -> Option<Prune> {
    let sources = anchor_nodes(h, e, true);
    let targets = anchor_nodes(h, f, false);

    // an empty source forces e ⊑ f for every f; the node must go
    for x in bottom_suspects(h, e, &sources) {
        if h.is_bottom_node(x) {
            return Some(Prune::DropNodePair(x));
        }
    }
    // dually, a universal target (⊤ ⊑ f, i.e. ¬f ⊑ ⊥) forces e ⊑ f for
    // every e
    let complement_sources = anchor_nodes(h, &f.complement(), true);
    for y in bottom_suspects(h, &f.complement(), &complement_sources) {
        if h.is_bottom_node(y) {
            return Some(Prune::DropNodePair(y));
        }
    }

    for (x, gs) in &sources {
        for (y, gt) in &targets {
            if x == y {
                if gs != gt {
                    // a merged equivalence realizes e ⊑ f with a length-0
                    // path; split it by removing the target-side label
                    return Some(Prune::RemoveLabel(gt.clone()));
                }
                continue;
            }
            if !h.reaches_node(*x, *y) {
                continue;
            }
            let path = h.least_path(*x, *y).expect("reachability checked");
            if let Some(k) =
                (0..path.len() - 1).rev().find(|&k| !h.is_tautological_arc(path[k], path[k + 1]))
            {
                return Some(Prune::RemoveArc(path[k], path[k + 1]));
            }
            // every arc on the path is tautological; a same-role single-label
            // chain would make e ⊑ f valid (excluded upfront), so some node
            // carries more than one label
            let z = path
                .iter()
                .rev()
                .find(|&&z| h.labels(z).len() > 1)
                .copied()
                .expect("pure tautological chains over single labels are valid inclusions");
            return Some(Prune::StripNode(z));
        }
    }
    None
}

/// Difference: constraints implied by the first input but not the second.
/// Sound but deliberately incomplete (a finite complete difference need not
/// exist). Starts from the transitive closure of the first tagged graph so
/// single-arc removals excise single consequences, then prunes every
/// realization of every inclusion the second input implies, processing
/// forbidden pairs in canonical order and always removing the last
/// non-tautological arc of the least surviving path.
pub fn difference(o1: &Ontology, o2: &Ontology) -> Ontology {
    let delta = closure_delta(o1.constraints(), o2.constraints());
    let g1 = ConstraintGraph::build(o1.constraints(), &delta);
    let g2 = ConstraintGraph::build(o2.constraints(), &delta);
    let mut h = g1.transitive_closure();

    // everything the second ontology implies, over the aligned label
    // universe, excluding valid inclusions
    let labels: Vec<Concept> = g2.all_labels().cloned().collect();
    let mut forbidden: Vec<(Concept, Concept)> = Vec::new();
    for e in &labels {
        let m = g2.node_of(e).expect("label");
        let m_bottom = g2.is_bottom_node(m);
        let reach = g2.reachable_from(m);
        for f in &labels {
            if e == f || Inclusion::new(e.clone(), f.clone()).is_valid() {
                continue;
            }
            let n = g2.node_of(f).expect("label");
            if m_bottom || g2.is_top_node(n) || reach[n.index()] {
                forbidden.push((e.clone(), f.clone()));
            }
        }
    }

    for (e, f) in &forbidden {
        while let Some(step) = plan_prune(&h, e, f) {
            match step {
                Prune::DropNodePair(x) => {
                    let doomed = BTreeSet::from([x, h.dual(x)]);
                    h = h.drop_nodes(&doomed);
                }
                Prune::RemoveLabel(c) => h.remove_label_pair(&c),
                Prune::RemoveArc(a, b) => h.remove_arc_pair(a, b),
                Prune::StripNode(z) => h.strip_to_least_label(z),
            }
            h.retag();
        }
    }
    debug_assert!(forbidden.iter().all(|(e, f)| plan_prune(&h, e, f).is_none()));

    let constraints = generate_constraints(&minimize_graph(&h));
    Ontology::new(o1.vocabulary().clone(), constraints)
        .expect("difference output stays within the first vocabulary")
}

/// Closed fragment: the ontology united with constraints forcing every
/// dropped concept and role to be empty, so consequences may flow through
/// the closed-off names (C ⊑ D with D closed forces C empty). The
/// vocabulary stays the full one.
pub fn closed_fragment(o: &Ontology, keep: &BTreeSet<Name>) -> Result<Ontology, AlgebraError> {
    let unknown: Vec<Name> = keep
        .iter()
        .filter(|n| !o.vocabulary().contains(n))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(AlgebraError::UnknownNames(unknown));
    }
    let mut phi: BTreeSet<Inclusion> = BTreeSet::new();
    for c in o.vocabulary().concepts() {
        if !keep.contains(c) {
            phi.insert(Inclusion::new(Concept::atomic(c.clone()), Concept::bottom()));
        }
    }
    for r in o.vocabulary().roles() {
        if !keep.contains(r) {
            phi.insert(Inclusion::new(
                Concept::at_least(1, RoleDescription::Direct(r.clone())),
                Concept::bottom(),
            ));
        }
    }
    let closer = Ontology::new(o.vocabulary().clone(), phi)
        .expect("bottom constraints over declared names");
    union(o, &closer)
}

/// Replace every occurrence of the mapped names in the vocabulary and the
/// constraints. The theory is isomorphic under the renaming.
pub fn rename(o: &Ontology, map: &RenamingMap) -> Result<Ontology, AlgebraError> {
    let unknown: Vec<Name> = map
        .iter()
        .filter(|(src, _)| !o.vocabulary().contains(src))
        .map(|(src, _)| src.clone())
        .collect();
    if !unknown.is_empty() {
        return Err(AlgebraError::UnknownNames(unknown));
    }
    let subst = |n: &Name| map.apply(n);
    let vocab = Vocabulary::new(
        o.vocabulary().concepts().iter().map(&subst).collect(),
        o.vocabulary().roles().iter().map(&subst).collect(),
    )?;
    let constraints = o
        .constraints()
        .iter()
        .map(|i| Inclusion::new(i.lhs.map_names(&subst), i.rhs.map_names(&subst)))
        .collect();
    Ok(Ontology::new(vocab, constraints)?)
}
