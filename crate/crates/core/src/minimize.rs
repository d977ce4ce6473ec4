//! Minimal-equivalent-graph reduction of tagged constraint graphs and
//! regeneration of a minimal, theory-equivalent constraint set.

use std::collections::BTreeSet;

use crate::graph::{ConstraintGraph, NodeId};
use crate::model::{Concept, Inclusion};

/// Transitive reduction of an acyclic tagged graph: drop every arc witnessed
/// by a longer path, keeping nodes, labels and tags. Tautological arcs are
/// never dropped (they cost nothing and regenerate from the node labels);
/// dual arcs are dropped together, so duality closure is preserved.
pub fn minimize_graph(g: &ConstraintGraph) -> ConstraintGraph {
    let reach: Vec<Vec<bool>> = g.node_ids().map(|u| g.reachable_from(u)).collect();
    let redundant: Vec<(NodeId, NodeId)> = g
        .arcs()
        .filter(|&(u, v)| {
            !g.is_tautological_arc(u, v)
                && g.successors(u).any(|w| w != v && reach[w.index()][v.index()])
        })
        .collect();
    let mut h = g.clone();
    for (u, v) in redundant {
        h.remove_arc_pair(u, v);
    }
    h
}

/// Read a constraint set off a tagged graph.
///
/// Bottom-tagged positive nodes emit `e ⊑ Bottom` per label. Other positive
/// nodes with several labels emit an equivalence cycle over the labels in
/// canonical order (skipping members that are valid anyway, such as
/// cardinality weakenings within the node). Remaining arcs out of positive
/// nodes emit one inclusion over the canonically least labels of their
/// endpoints; an arc and its dual are processed together, so only one
/// orientation of a disjointness pair is ever emitted. Tautological arcs,
/// arcs out of bottom nodes and arcs into top nodes emit nothing: their
/// content is already implied by the rest.
pub fn generate_constraints(h: &ConstraintGraph) -> BTreeSet<Inclusion> {
    let mut out = BTreeSet::new();
    let mut processed: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();

    for m in h.node_ids() {
        if !h.is_positive_node(m) {
            // total constraints over an inconsistent set collapse to ⊤ ⊑ ⊥
            if h.labels(m).iter().all(Concept::is_top) && h.is_bottom_node(m) {
                out.insert(Inclusion::new(Concept::top(), Concept::bottom()));
            }
            continue;
        }
        if h.is_bottom_node(m) {
            for e in h.labels(m) {
                if !redundant_bottom_emission(h, e) {
                    out.insert(Inclusion::new(e.clone(), Concept::bottom()));
                }
            }
            continue;
        }
        if h.is_top_node(m) {
            // only reachable through total constraints in the input; the
            // dual bottom node carries no positive label to anchor `e ⊑ ⊥`
            for e in h.labels(m) {
                if !redundant_top_emission(h, e) {
                    out.insert(Inclusion::new(Concept::top(), e.clone()));
                }
            }
            continue;
        }
        let labels: Vec<&Concept> = h.labels(m).iter().collect();
        if labels.len() > 1 {
            for i in 0..labels.len() {
                let j = (i + 1) % labels.len();
                let q = Inclusion::new(labels[i].clone(), labels[j].clone());
                if !q.is_valid() {
                    out.insert(q);
                }
            }
        }
        for n in h.successors(m).collect::<Vec<_>>() {
            if processed.contains(&(m, n)) || h.is_tautological_arc(m, n) || h.is_top_node(n) {
                continue;
            }
            let e = h.labels(m).first().expect("non-empty node");
            let f = h.labels(n).first().expect("non-empty node");
            out.insert(Inclusion::new(e.clone(), f.clone()));
            processed.insert((m, n));
            processed.insert((h.dual(n), h.dual(m)));
        }
    }
    out
}

/// Emptiness of a restriction follows from the emptiness of a weaker one
/// over the same role, and an empty role is reported once through its
/// direct `atleast 1` form (emptiness couples the two directions). Skipping
/// these keeps the emitted set locally minimal.
fn redundant_bottom_emission(h: &ConstraintGraph, e: &Concept) -> bool {
    let Some((n, p)) = e.at_least_parts() else {
        return false;
    };
    if n == 1 {
        // the two direction families are empty together; the direct form is
        // the canonical representative
        if !p.is_inverse() {
            return false;
        }
        let direct = Concept::at_least(1, p.inverse());
        return h
            .node_of(&direct)
            .is_some_and(|k| h.is_bottom_node(k));
    }
    (1..n).any(|m| {
        let weaker = Concept::at_least(m, p.clone());
        h.node_of(&weaker).is_some_and(|k| h.is_bottom_node(k))
    })
}

/// Dual consideration for total constraints: `⊤ ⊑ (≥ n p)` subsumes
/// `⊤ ⊑ (≥ m p)` for smaller m.
fn redundant_top_emission(h: &ConstraintGraph, e: &Concept) -> bool {
    let Some((n, p)) = e.at_least_parts() else {
        return false;
    };
    h.all_labels().any(|g| {
        g.at_least_parts().is_some_and(|(k, q)| {
            q == p
                && k > n
                && h.node_of(g).is_some_and(|node| h.is_top_node(node) && h.is_positive_node(node))
        })
    })
}

/// Minimize a normalized constraint set: build the tagged constraint graph,
/// reduce it, and regenerate. The result is theory-equivalent to the input
/// and locally minimal.
pub fn minimize_constraints(sigma: &BTreeSet<Inclusion>) -> BTreeSet<Inclusion> {
    let g = ConstraintGraph::build(sigma, &BTreeSet::new());
    generate_constraints(&minimize_graph(&g))
}
