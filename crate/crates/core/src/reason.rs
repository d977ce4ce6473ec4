//! Logical implication for lightweight inclusions, theory equivalence,
//! consequence enumeration, empty-description diagnosis, and an independent
//! saturation oracle used to cross-check the graph procedure.

use std::collections::BTreeSet;

use crate::graph::ConstraintGraph;
use crate::model::{Concept, Inclusion, RoleDescription};

/// Decide whether `sigma` logically implies `q`: build the tagged constraint
/// graph with both sides of `q` as probes and test whether the node labeled
/// with the left side is a bottom node, the node labeled with the right side
/// is a top node, or a (possibly empty) path connects them.
pub fn implies(sigma: &BTreeSet<Inclusion>, q: &Inclusion) -> bool {
    debug_assert!(q.is_extended(), "query must be an extended inclusion");
    let omega = BTreeSet::from([q.lhs.clone(), q.rhs.clone()]);
    let g = ConstraintGraph::build(sigma, &omega);
    let e = g.node_of(&q.lhs).expect("probe concepts always label the graph");
    let f = g.node_of(&q.rhs).expect("probe concepts always label the graph");
    g.is_bottom_node(e) || g.is_top_node(f) || g.reaches_node(e, f)
}

/// Two constraint sets have the same theory iff each axiom of one is implied
/// by the other.
pub fn equivalent_theories(sigma1: &BTreeSet<Inclusion>, sigma2: &BTreeSet<Inclusion>) -> bool {
    sigma2.iter().all(|q| implies(sigma1, q)) && sigma1.iter().all(|q| implies(sigma2, q))
}

/// Every non-valid extended inclusion `e ⊑ f` between descriptions labeling
/// the constraint graph of `sigma`, with `e` an atomic concept, at-least
/// restriction, or top, such that `sigma` implies it.
pub fn all_consequences(sigma: &BTreeSet<Inclusion>) -> BTreeSet<Inclusion> {
    let g = ConstraintGraph::build(sigma, &BTreeSet::new());
    let labels: Vec<Concept> = g.all_labels().cloned().collect();
    let mut out = BTreeSet::new();
    for e in &labels {
        if !(e.is_positive_basic() || e.is_top()) {
            continue;
        }
        let src = g.node_of(e).expect("label");
        let src_bottom = g.is_bottom_node(src);
        let reach = g.reachable_from(src);
        for f in &labels {
            let q = Inclusion::new(e.clone(), f.clone());
            if q.is_valid() {
                continue;
            }
            let dst = g.node_of(f).expect("label");
            if src_bottom || g.is_top_node(dst) || reach[dst.index()] {
                out.insert(q);
            }
        }
    }
    out
}

/// Descriptions forced to be empty in every model: the positive basic labels
/// of bottom-tagged nodes.
pub fn empty_descriptions(sigma: &BTreeSet<Inclusion>) -> BTreeSet<Concept> {
    let g = ConstraintGraph::build(sigma, &BTreeSet::new());
    let mut out = BTreeSet::new();
    for n in g.node_ids() {
        if g.is_bottom_node(n) {
            for c in g.labels(n) {
                if c.is_positive_basic() {
                    out.insert(c.clone());
                }
            }
        }
    }
    out
}

/// Saturation of a constraint set under semantically valid derivation rules,
/// over a finite candidate universe. Entirely independent of the constraint
/// graph: used as an oracle to cross-check [`implies`].
pub struct Saturation {
    derived: BTreeSet<(Concept, Concept)>,
}

impl Saturation {
    /// Saturate `sigma` over the descriptions occurring in it, the given
    /// extras, their complements, bottom and top, and the `atleast 1` forms
    /// of every occurring role.
    pub fn new(sigma: &BTreeSet<Inclusion>, extra: &BTreeSet<Concept>) -> Self {
        let mut universe: BTreeSet<Concept> = BTreeSet::new();
        for incl in sigma {
            universe.insert(incl.lhs.clone());
            universe.insert(incl.rhs.clone());
        }
        universe.extend(extra.iter().cloned());
        let roles: BTreeSet<RoleDescription> = universe
            .iter()
            .filter_map(|c| c.role().cloned())
            .collect();
        for p in roles {
            universe.insert(Concept::at_least(1, p.clone()));
            universe.insert(Concept::at_least(1, p.inverse()));
        }
        universe.insert(Concept::bottom());
        universe.insert(Concept::top());
        let complements: Vec<Concept> = universe.iter().map(Concept::complement).collect();
        universe.extend(complements);
        let universe: Vec<Concept> = universe.into_iter().collect();

        let mut derived: BTreeSet<(Concept, Concept)> = BTreeSet::new();
        for incl in sigma {
            derived.insert((incl.lhs.clone(), incl.rhs.clone()));
        }
        // reflexivity, bottom/top validity, at-least weakening
        for e in &universe {
            derived.insert((e.clone(), e.clone()));
            derived.insert((Concept::bottom(), e.clone()));
            derived.insert((e.clone(), Concept::top()));
            for f in &universe {
                if e != f && Inclusion::new(e.clone(), f.clone()).is_valid() {
                    derived.insert((e.clone(), f.clone()));
                }
            }
        }

        loop {
            let mut fresh: Vec<(Concept, Concept)> = Vec::new();
            // transitivity
            for (a, b) in &derived {
                for (c, d) in derived.range((b.clone(), Concept::bottom())..) {
                    if c != b {
                        break;
                    }
                    if !derived.contains(&(a.clone(), d.clone())) {
                        fresh.push((a.clone(), d.clone()));
                    }
                }
            }
            // contraposition
            for (a, b) in &derived {
                let contra = (b.complement(), a.complement());
                if !derived.contains(&contra) {
                    fresh.push(contra);
                }
            }
            // contradiction: e ⊑ b and e ⊑ ¬b force e ⊑ ⊥
            for (a, b) in &derived {
                if b.is_positive()
                    && !b.is_bottom()
                    && derived.contains(&(a.clone(), b.complement()))
                    && !derived.contains(&(a.clone(), Concept::bottom()))
                {
                    fresh.push((a.clone(), Concept::bottom()));
                }
            }
            // bottom propagation: an empty description is included everywhere
            for e in &universe {
                if derived.contains(&(e.clone(), Concept::bottom())) {
                    for f in &universe {
                        if !derived.contains(&(e.clone(), f.clone())) {
                            fresh.push((e.clone(), f.clone()));
                        }
                    }
                }
            }
            // role emptiness couples the two directions
            for p in universe.iter().filter_map(|c| c.role().cloned()) {
                let fwd = Concept::at_least(1, p.clone());
                let bwd = Concept::at_least(1, p.inverse());
                if derived.contains(&(fwd.clone(), Concept::bottom()))
                    && !derived.contains(&(bwd.clone(), Concept::bottom()))
                {
                    fresh.push((bwd, Concept::bottom()));
                }
            }
            if fresh.is_empty() {
                break;
            }
            derived.extend(fresh);
        }
        Saturation { derived }
    }

    pub fn implies(&self, q: &Inclusion) -> bool {
        self.derived.contains(&(q.lhs.clone(), q.rhs.clone()))
    }
}

/// Saturation-based implication check, independent of the graph procedure.
pub fn oracle_implies(sigma: &BTreeSet<Inclusion>, q: &Inclusion) -> bool {
    let extra = BTreeSet::from([q.lhs.clone(), q.rhs.clone()]);
    Saturation::new(sigma, &extra).implies(q)
}
