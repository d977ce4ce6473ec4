//! Constraint graphs: the labeled digraph capturing a constraint set, its
//! strongly-connected-component condensation, tautological and dual arcs,
//! bottom/top tagging, and reachability queries.
//!
//! Nodes are created for every concept description occurring in the
//! constraint set or in the probe set, closed under complement, plus one
//! node per occurring atomic concept and `atleast 1 P` / `atleast 1 inv P`
//! nodes per occurring role. Arcs come from inclusions, from cardinality
//! weakenings between co-existing at-least nodes (tautological arcs), and
//! from duality: `(M, N)` is an arc iff `(dual N, dual M)` is.
//!
//! After condensation the graph is acyclic, every description labels exactly
//! one node, and a node's labels are homogeneous: only bottom, only top,
//! only positive basic concepts, or only negated ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::model::{BasicConcept, Concept, Inclusion, RoleDescription};

/// Index of a node in a [`ConstraintGraph`]. Ids are assigned in canonical
/// label order, so iteration over ids is deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Clone, Debug)]
struct NodeData {
    labels: BTreeSet<Concept>,
    dual: NodeId,
    bottom: bool,
    top: bool,
}

/// A condensed, dual-closed, tagged constraint graph.
#[derive(Clone, Debug)]
pub struct ConstraintGraph {
    nodes: Vec<NodeData>,
    arcs: BTreeSet<(NodeId, NodeId)>,
    index: BTreeMap<Concept, NodeId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("concept `{0}` labels no node of the graph")]
    NotALabel(Concept),
}

impl ConstraintGraph {
    /// Build the tagged constraint graph for a constraint set and a set of
    /// probe descriptions.
    pub fn build(sigma: &BTreeSet<Inclusion>, omega: &BTreeSet<Concept>) -> Self {
        // descriptions occurring as a side of an inclusion or as a probe
        let mut descriptions: BTreeSet<Concept> = BTreeSet::new();
        for incl in sigma {
            descriptions.insert(incl.lhs.clone());
            descriptions.insert(incl.rhs.clone());
        }
        descriptions.extend(omega.iter().cloned());

        // one node per occurring atomic concept, and `atleast 1` nodes in
        // both directions per occurring role
        let mut extra: BTreeSet<Concept> = BTreeSet::new();
        for d in &descriptions {
            match d.basic() {
                BasicConcept::Atomic(n) => {
                    extra.insert(Concept::atomic(n.clone()));
                }
                BasicConcept::AtLeast(_, p) => {
                    let direct = RoleDescription::Direct(p.name().clone());
                    extra.insert(Concept::at_least(1, direct.clone()));
                    extra.insert(Concept::at_least(1, direct.inverse()));
                }
                BasicConcept::Bottom => {}
            }
        }
        descriptions.extend(extra);

        // close under complement
        let complements: Vec<Concept> = descriptions.iter().map(Concept::complement).collect();
        descriptions.extend(complements);

        let gnodes: Vec<Concept> = descriptions.into_iter().collect();
        let gindex: BTreeMap<&Concept, usize> =
            gnodes.iter().enumerate().map(|(i, c)| (c, i)).collect();

        let mut garcs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for incl in sigma {
            garcs.insert((gindex[&incl.lhs], gindex[&incl.rhs]));
        }
        // tautological arcs between existing at-least nodes over the same
        // role description, from the larger count to the smaller
        for (i, a) in gnodes.iter().enumerate() {
            if let (true, Some((n, p))) = (a.is_positive(), a.at_least_parts()) {
                for (j, b) in gnodes.iter().enumerate() {
                    if let (true, Some((m, q))) = (b.is_positive(), b.at_least_parts()) {
                        if p == q && m < n {
                            garcs.insert((i, j));
                        }
                    }
                }
            }
        }
        // dual closure
        let dual_of: Vec<usize> = gnodes
            .iter()
            .map(|c| gindex[&c.complement()])
            .collect();
        let dual_arcs: Vec<(usize, usize)> = garcs
            .iter()
            .map(|&(a, b)| (dual_of[b], dual_of[a]))
            .collect();
        garcs.extend(dual_arcs);

        // condense strongly connected components
        let succ: Vec<Vec<usize>> = {
            let mut s = vec![Vec::new(); gnodes.len()];
            for &(a, b) in &garcs {
                if a != b {
                    s[a].push(b);
                }
            }
            s
        };
        let components = tarjan_scc(&succ);
        let mut comp_of = vec![usize::MAX; gnodes.len()];
        for (cid, comp) in components.iter().enumerate() {
            for &v in comp {
                comp_of[v] = cid;
            }
        }

        // canonical numbering: components sorted by their least label
        let mut comp_labels: Vec<BTreeSet<Concept>> = components
            .iter()
            .map(|comp| comp.iter().map(|&v| gnodes[v].clone()).collect())
            .collect();
        let mut order: Vec<usize> = (0..comp_labels.len()).collect();
        order.sort_by(|&a, &b| {
            comp_labels[a]
                .first()
                .cmp(&comp_labels[b].first())
        });
        let mut new_id = vec![0usize; comp_labels.len()];
        for (fresh, &old) in order.iter().enumerate() {
            new_id[old] = fresh;
        }

        let mut nodes: Vec<NodeData> = vec![
            NodeData {
                labels: BTreeSet::new(),
                dual: NodeId(0),
                bottom: false,
                top: false,
            };
            comp_labels.len()
        ];
        for (old, labels) in comp_labels.iter_mut().enumerate() {
            nodes[new_id[old]].labels = std::mem::take(labels);
        }
        let mut index = BTreeMap::new();
        for (i, node) in nodes.iter().enumerate() {
            for c in &node.labels {
                index.insert(c.clone(), NodeId(i));
            }
        }
        for node in &mut nodes {
            let some_label = node.labels.first().expect("non-empty component");
            node.dual = index[&some_label.complement()];
        }

        let mut arcs = BTreeSet::new();
        for &(a, b) in &garcs {
            let (ca, cb) = (new_id[comp_of[a]], new_id[comp_of[b]]);
            if ca != cb {
                arcs.insert((NodeId(ca), NodeId(cb)));
            }
        }

        let mut graph = ConstraintGraph { nodes, arcs, index };
        graph.retag();
        graph
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn labels(&self, n: NodeId) -> &BTreeSet<Concept> {
        &self.nodes[n.0].labels
    }

    /// Every concept labeling some node, in canonical order.
    pub fn all_labels(&self) -> impl Iterator<Item = &Concept> {
        self.index.keys()
    }

    pub fn node_of(&self, c: &Concept) -> Option<NodeId> {
        self.index.get(c).copied()
    }

    pub fn dual(&self, n: NodeId) -> NodeId {
        self.nodes[n.0].dual
    }

    pub fn is_bottom_node(&self, n: NodeId) -> bool {
        self.nodes[n.0].bottom
    }

    pub fn is_top_node(&self, n: NodeId) -> bool {
        self.nodes[n.0].top
    }

    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, a: NodeId, b: NodeId) -> bool {
        self.arcs.contains(&(a, b))
    }

    pub fn successors(&self, n: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.arcs
            .range((n, NodeId(0))..=(n, NodeId(usize::MAX)))
            .map(|&(_, b)| b)
    }

    /// A node's labels are homogeneous; true when they are atomic concepts
    /// or at-least restrictions (the sources generation works from).
    pub fn is_positive_node(&self, n: NodeId) -> bool {
        self.nodes[n.0]
            .labels
            .iter()
            .all(|c| c.is_positive_basic())
    }

    /// An arc is tautological when a label of the source and a label of the
    /// target are at-least restrictions over the same role description with
    /// strictly decreasing counts, on either the arc itself or its dual.
    /// Such arcs encode valid inclusions; they are never dropped by
    /// minimization and never emit constraints. The status is computed from
    /// the current labels, so deleting labels demotes stale tautological
    /// arcs.
    pub fn is_tautological_arc(&self, a: NodeId, b: NodeId) -> bool {
        self.has_weakening_pair(a, b) || self.has_weakening_pair(self.dual(b), self.dual(a))
    }

    fn has_weakening_pair(&self, a: NodeId, b: NodeId) -> bool {
        self.nodes[a.0].labels.iter().any(|la| {
            la.is_positive()
                && la.at_least_parts().is_some_and(|(n, p)| {
                    self.nodes[b.0].labels.iter().any(|lb| {
                        lb.is_positive()
                            && lb.at_least_parts().is_some_and(|(m, q)| q == p && m < n)
                    })
                })
        })
    }

    /// Nodes reachable from `n`, including `n` itself (length-0 paths).
    pub fn reachable_from(&self, n: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![n];
        seen[n.0] = true;
        while let Some(u) = stack.pop() {
            for v in self.successors(u) {
                if !seen[v.0] {
                    seen[v.0] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Path of length >= 0 from `a` to `b`.
    pub fn reaches_node(&self, a: NodeId, b: NodeId) -> bool {
        if a == b {
            return true;
        }
        self.reachable_from(a)[b.0]
    }

    /// Path query on concept descriptions. Both concepts must label a node;
    /// bottom/top endpoints that were never materialized fall back to the
    /// node tags.
    pub fn reaches(&self, e: &Concept, f: &Concept) -> Result<bool, GraphError> {
        match (self.node_of(e), self.node_of(f)) {
            (Some(a), Some(b)) => Ok(self.reaches_node(a, b)),
            (Some(a), None) if f.is_bottom() => Ok(self.is_bottom_node(a)),
            (Some(_), None) if f.is_top() => Ok(true),
            (None, Some(b)) if e.is_top() => Ok(self.is_top_node(b)),
            (None, Some(_)) if e.is_bottom() => Ok(true),
            (None, _) => Err(GraphError::NotALabel(e.clone())),
            (_, None) => Err(GraphError::NotALabel(f.clone())),
        }
    }

    /// Recompute bottom/top tags as the least fixpoint of: a node labeled
    /// bottom is a bottom node; a node reaching two complementary labels is
    /// a bottom node; a node with an arc into a bottom node is a bottom
    /// node; the `atleast 1 P` node is a bottom node when the
    /// `atleast 1 inv P` node is, and symmetrically. Top tags are the duals
    /// of bottom tags.
    pub fn retag(&mut self) {
        let n = self.nodes.len();
        let mut bottom = vec![false; n];

        for (i, flag) in bottom.iter_mut().enumerate() {
            if self.nodes[i].labels.iter().any(Concept::is_bottom) {
                *flag = true;
                continue;
            }
            let reach = self.reachable_from(NodeId(i));
            if (0..n).any(|j| reach[j] && reach[self.nodes[j].dual.0] && j <= self.nodes[j].dual.0)
            {
                *flag = true;
            }
        }

        // propagate along arcs into bottom nodes and across role emptiness
        loop {
            let mut changed = false;
            for &(a, b) in &self.arcs {
                if bottom[b.0] && !bottom[a.0] {
                    bottom[a.0] = true;
                    changed = true;
                }
            }
            for i in 0..n {
                if !bottom[i] {
                    continue;
                }
                for label in &self.nodes[i].labels {
                    if let (true, Some((1, p))) = (label.is_positive(), label.at_least_parts()) {
                        let partner = Concept::at_least(1, p.inverse());
                        if let Some(j) = self.node_of(&partner) {
                            if !bottom[j.0] {
                                bottom[j.0] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }

        for (node, flag) in self.nodes.iter_mut().zip(&bottom) {
            node.bottom = *flag;
        }
        for node in &mut self.nodes {
            node.top = bottom[node.dual.0];
        }
    }

    /// The transitive closure: same nodes, labels and tags; an arc wherever
    /// a nonempty path exists.
    pub fn transitive_closure(&self) -> ConstraintGraph {
        let mut closed = self.clone();
        for a in self.node_ids() {
            let reach = self.reachable_from(a);
            for b in self.node_ids() {
                if a != b && reach[b.0] {
                    closed.arcs.insert((a, b));
                }
            }
        }
        closed
    }

    /// Lexicographically least path from `a` to `b` as a node sequence, or
    /// `None` when `b` is unreachable. On an acyclic graph the greedy walk
    /// that always takes the least successor still reaching the target is
    /// the lexicographic minimum.
    pub fn least_path(&self, a: NodeId, b: NodeId) -> Option<Vec<NodeId>> {
        if a == b {
            return Some(vec![a]);
        }
        if !self.reachable_from(a)[b.0] {
            return None;
        }
        let mut path = vec![a];
        let mut current = a;
        while current != b {
            let next = self
                .successors(current)
                .find(|&w| w == b || self.reachable_from(w)[b.0])
                .expect("reachability established above");
            path.push(next);
            current = next;
        }
        Some(path)
    }

    pub(crate) fn remove_arc_pair(&mut self, a: NodeId, b: NodeId) {
        self.arcs.remove(&(a, b));
        self.arcs.remove(&(self.dual(b), self.dual(a)));
    }

    /// Remove a label from its node together with the complement label from
    /// the dual node. The node must keep at least one label.
    pub(crate) fn remove_label_pair(&mut self, c: &Concept) {
        let Some(n) = self.node_of(c) else { return };
        assert!(self.nodes[n.0].labels.len() > 1, "cannot empty a node");
        let dual = self.dual(n);
        self.nodes[n.0].labels.remove(c);
        self.nodes[dual.0].labels.remove(&c.complement());
        self.index.remove(c);
        self.index.remove(&c.complement());
    }

    /// Strip a node down to its canonically least label (dual-synchronized).
    pub(crate) fn strip_to_least_label(&mut self, n: NodeId) {
        let extras: Vec<Concept> = self.nodes[n.0].labels.iter().skip(1).cloned().collect();
        for c in extras {
            self.remove_label_pair(&c);
        }
    }

    /// Rebuild the graph without the given nodes (and their adjacent arcs).
    /// The doomed set must be closed under duals. Surviving labels, arcs and
    /// tags are preserved; ids are compacted in their existing order.
    pub(crate) fn drop_nodes(&self, doomed: &BTreeSet<NodeId>) -> ConstraintGraph {
        debug_assert!(doomed.iter().all(|&n| doomed.contains(&self.dual(n))));
        let mut new_id: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        let mut fresh = 0usize;
        for u in self.node_ids() {
            if !doomed.contains(&u) {
                new_id[u.0] = Some(NodeId(fresh));
                fresh += 1;
            }
        }
        let mut nodes = Vec::with_capacity(fresh);
        for u in self.node_ids() {
            if let Some(_id) = new_id[u.0] {
                let old = &self.nodes[u.0];
                nodes.push(NodeData {
                    labels: old.labels.clone(),
                    dual: new_id[old.dual.0].expect("dual survives"),
                    bottom: old.bottom,
                    top: old.top,
                });
            }
        }
        let mut index = BTreeMap::new();
        for (i, node) in nodes.iter().enumerate() {
            for c in &node.labels {
                index.insert(c.clone(), NodeId(i));
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter_map(|&(a, b)| Some((new_id[a.0]?, new_id[b.0]?)))
            .collect();
        ConstraintGraph { nodes, arcs, index }
    }

    /// Rebuild the graph keeping only labels accepted by the predicate.
    /// Nodes left without labels disappear together with their adjacent
    /// arcs; tags are retained as computed on the original graph. The
    /// predicate must be complement-symmetric (it is applied to name
    /// occurrences, which negation does not change).
    pub(crate) fn retain_labels(&self, keep: impl Fn(&Concept) -> bool) -> ConstraintGraph {
        let mut filtered: Vec<BTreeSet<Concept>> = Vec::with_capacity(self.nodes.len());
        let mut doomed = BTreeSet::new();
        for u in self.node_ids() {
            let labels: BTreeSet<Concept> =
                self.nodes[u.0].labels.iter().filter(|c| keep(c)).cloned().collect();
            if labels.is_empty() {
                doomed.insert(u);
            }
            filtered.push(labels);
        }
        let mut trimmed = self.clone();
        for (u, labels) in filtered.into_iter().enumerate() {
            trimmed.nodes[u].labels = labels;
        }
        trimmed.drop_nodes(&doomed)
    }

    /// Structural invariants: acyclicity, unique labeling, label
    /// homogeneity, duality closure of labels, arcs and tags, and tag
    /// stability under recomputation.
    pub fn verify_structure(&self) -> Result<(), String> {
        // acyclic
        let mut state = vec![0u8; self.nodes.len()]; // 0 unvisited, 1 open, 2 done
        fn dfs(g: &ConstraintGraph, u: NodeId, state: &mut Vec<u8>) -> Result<(), String> {
            state[u.index()] = 1;
            for v in g.successors(u) {
                match state[v.index()] {
                    0 => dfs(g, v, state)?,
                    1 => return Err(format!("cycle through {u}")),
                    _ => {}
                }
            }
            state[u.index()] = 2;
            Ok(())
        }
        for u in self.node_ids() {
            if state[u.0] == 0 {
                dfs(self, u, &mut state)?;
            }
        }

        // each label on exactly one node, index consistent
        let mut seen: BTreeMap<&Concept, NodeId> = BTreeMap::new();
        for u in self.node_ids() {
            if self.nodes[u.0].labels.is_empty() {
                return Err(format!("node {u} has no labels"));
            }
            for c in &self.nodes[u.0].labels {
                if seen.insert(c, u).is_some() {
                    return Err(format!("concept `{c}` labels two nodes"));
                }
                if self.index.get(c) != Some(&u) {
                    return Err(format!("index out of sync for `{c}`"));
                }
            }
        }
        if self.index.len() != seen.len() {
            return Err("index mentions unlabeled concepts".into());
        }

        // homogeneity: only bottom, only top, only positive, or only negated
        for u in self.node_ids() {
            let labels = &self.nodes[u.0].labels;
            let homogeneous = labels.iter().all(|c| c.is_bottom())
                || labels.iter().all(|c| c.is_top())
                || labels.iter().all(|c| c.is_positive_basic())
                || labels
                    .iter()
                    .all(|c| c.is_negated() && !c.is_top());
            if !homogeneous {
                return Err(format!("node {u} labels are not homogeneous"));
            }
        }

        // duality closure
        for u in self.node_ids() {
            let d = self.dual(u);
            if self.dual(d) != u {
                return Err(format!("dual of {u} is not an involution"));
            }
            let complements: BTreeSet<Concept> =
                self.nodes[u.0].labels.iter().map(Concept::complement).collect();
            if complements != self.nodes[d.0].labels {
                return Err(format!("labels of {u} and its dual do not mirror"));
            }
            if self.is_top_node(u) != self.is_bottom_node(d) {
                return Err(format!("tags of {u} and its dual do not mirror"));
            }
        }
        for &(a, b) in &self.arcs {
            if !self.arcs.contains(&(self.dual(b), self.dual(a))) {
                return Err(format!("arc ({a}, {b}) has no dual arc"));
            }
        }

        // tags are the fixpoint
        let mut copy = self.clone();
        copy.retag();
        for u in self.node_ids() {
            if copy.nodes[u.0].bottom != self.nodes[u.0].bottom
                || copy.nodes[u.0].top != self.nodes[u.0].top
            {
                return Err(format!("tags of {u} are stale"));
            }
        }
        Ok(())
    }
}

/// Tarjan's strongly connected components over an adjacency list.
fn tarjan_scc(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        counter: usize,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State) {
        st.index[v] = Some(st.counter);
        st.low[v] = st.counter;
        st.counter += 1;
        st.stack.push(v);
        st.on_stack[v] = true;

        for &w in &st.succ[v] {
            if st.index[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.index[w].unwrap());
            }
        }

        if st.low[v] == st.index[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }

    let n = succ.len();
    let mut st = State {
        succ,
        counter: 0,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Name;

    fn n(s: &str) -> Name {
        Name::plain(s)
    }

    fn atom(s: &str) -> Concept {
        Concept::atomic(n(s))
    }

    fn role(s: &str) -> RoleDescription {
        RoleDescription::Direct(n(s))
    }

    fn sub(l: Concept, r: Concept) -> Inclusion {
        Inclusion::new(l, r)
    }

    fn sigma(incls: &[Inclusion]) -> BTreeSet<Inclusion> {
        incls.iter().cloned().collect()
    }

    #[test]
    fn single_inclusion_gives_four_nodes_and_dual_arcs() {
        let g = ConstraintGraph::build(&sigma(&[sub(atom("C"), atom("D"))]), &BTreeSet::new());
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.arc_count(), 2);
        let c = g.node_of(&atom("C")).unwrap();
        let d = g.node_of(&atom("D")).unwrap();
        let not_c = g.node_of(&atom("C").complement()).unwrap();
        let not_d = g.node_of(&atom("D").complement()).unwrap();
        assert!(g.has_arc(c, d));
        assert!(g.has_arc(not_d, not_c));
        assert!(g.node_ids().all(|u| !g.is_bottom_node(u) && !g.is_top_node(u)));
        assert_eq!(g.dual(c), not_c);
    }

    #[test]
    fn equivalent_concepts_collapse_into_one_node() {
        let g = ConstraintGraph::build(
            &sigma(&[sub(atom("C"), atom("D")), sub(atom("D"), atom("C"))]),
            &BTreeSet::new(),
        );
        assert_eq!(g.node_count(), 2);
        let k = g.node_of(&atom("C")).unwrap();
        assert_eq!(k, g.node_of(&atom("D")).unwrap());
        assert_eq!(
            g.labels(k),
            &BTreeSet::from([atom("C"), atom("D")])
        );
        assert_eq!(
            g.labels(g.dual(k)),
            &BTreeSet::from([atom("C").complement(), atom("D").complement()])
        );
    }

    #[test]
    fn contradictory_node_is_tagged_bottom_and_its_dual_top() {
        let g = ConstraintGraph::build(
            &sigma(&[sub(atom("C"), atom("D")), sub(atom("C"), atom("D").complement())]),
            &BTreeSet::new(),
        );
        let c = g.node_of(&atom("C")).unwrap();
        assert!(g.is_bottom_node(c));
        assert!(g.is_top_node(g.dual(c)));
        let d = g.node_of(&atom("D")).unwrap();
        assert!(!g.is_bottom_node(d));
    }

    #[test]
    fn role_emptiness_couples_both_directions() {
        let inv = RoleDescription::Inverse(n("P"));
        let g = ConstraintGraph::build(
            &sigma(&[sub(Concept::at_least(1, inv.clone()), Concept::bottom())]),
            &BTreeSet::new(),
        );
        let fwd = g.node_of(&Concept::at_least(1, role("P"))).unwrap();
        let bwd = g.node_of(&Concept::at_least(1, inv)).unwrap();
        assert!(g.is_bottom_node(bwd));
        assert!(g.is_bottom_node(fwd));
    }

    #[test]
    fn tautological_arcs_connect_existing_cardinalities() {
        let g = ConstraintGraph::build(
            &sigma(&[
                sub(atom("C"), Concept::at_least(3, role("P"))),
                sub(Concept::at_least(1, role("P")), atom("D")),
            ]),
            &BTreeSet::new(),
        );
        let hi = g.node_of(&Concept::at_least(3, role("P"))).unwrap();
        let lo = g.node_of(&Concept::at_least(1, role("P"))).unwrap();
        assert!(g.has_arc(hi, lo));
        assert!(g.is_tautological_arc(hi, lo));
        // dual of the tautological arc is protected as well
        assert!(g.is_tautological_arc(g.dual(lo), g.dual(hi)));
        let c = g.node_of(&atom("C")).unwrap();
        let d = g.node_of(&atom("D")).unwrap();
        assert!(!g.is_tautological_arc(c, hi));
        assert!(g.reaches_node(c, d));
    }

    #[test]
    fn closure_adds_exactly_the_path_arcs() {
        let g = ConstraintGraph::build(
            &sigma(&[sub(atom("A"), atom("B")), sub(atom("B"), atom("C"))]),
            &BTreeSet::new(),
        );
        let closed = g.transitive_closure();
        let a = g.node_of(&atom("A")).unwrap();
        let c = g.node_of(&atom("C")).unwrap();
        assert!(!g.has_arc(a, c));
        assert!(closed.has_arc(a, c));
        assert!(closed.has_arc(closed.dual(c), closed.dual(a)));
        assert_eq!(closed.arc_count(), 6);
        // idempotent
        let twice = closed.transitive_closure();
        assert_eq!(
            twice.arcs().collect::<Vec<_>>(),
            closed.arcs().collect::<Vec<_>>()
        );
        assert_eq!(closed.verify_structure(), Ok(()));
    }

    #[test]
    fn reaches_includes_length_zero_and_tag_fallbacks() {
        let g = ConstraintGraph::build(
            &sigma(&[sub(atom("C"), atom("D")), sub(atom("C"), atom("D").complement())]),
            &BTreeSet::new(),
        );
        assert_eq!(g.reaches(&atom("C"), &atom("C")), Ok(true));
        assert_eq!(g.reaches(&atom("C"), &atom("D")), Ok(true));
        assert_eq!(g.reaches(&atom("D"), &atom("C")), Ok(false));
        // bottom never occurs in the set, so the query falls back to tags
        assert_eq!(g.reaches(&atom("C"), &Concept::bottom()), Ok(true));
        assert_eq!(g.reaches(&atom("D"), &Concept::bottom()), Ok(false));
        assert_eq!(g.reaches(&Concept::top(), &atom("C").complement()), Ok(true));
        assert!(g.reaches(&atom("Z"), &atom("C")).is_err());
    }

    #[test]
    fn retag_is_a_fixpoint() {
        let mut g = ConstraintGraph::build(
            &sigma(&[
                sub(atom("C"), atom("D")),
                sub(atom("C"), atom("D").complement()),
                sub(atom("E"), atom("C")),
            ]),
            &BTreeSet::new(),
        );
        let before: Vec<(bool, bool)> = g
            .node_ids()
            .map(|u| (g.is_bottom_node(u), g.is_top_node(u)))
            .collect();
        g.retag();
        let after: Vec<(bool, bool)> = g
            .node_ids()
            .map(|u| (g.is_bottom_node(u), g.is_top_node(u)))
            .collect();
        assert_eq!(before, after);
        // arc into a bottom node propagates
        let e = g.node_of(&atom("E")).unwrap();
        assert!(g.is_bottom_node(e));
    }

    #[test]
    fn probes_materialize_nodes_without_arcs() {
        let omega = BTreeSet::from([atom("X"), Concept::bottom()]);
        let g = ConstraintGraph::build(&sigma(&[sub(atom("C"), atom("D"))]), &omega);
        let x = g.node_of(&atom("X")).unwrap();
        assert_eq!(g.successors(x).count(), 0);
        let bot = g.node_of(&Concept::bottom()).unwrap();
        assert!(g.is_bottom_node(bot));
        assert!(g.is_top_node(g.node_of(&Concept::top()).unwrap()));
        assert_eq!(g.verify_structure(), Ok(()));
    }

    #[test]
    fn least_path_is_lexicographically_minimal() {
        let g = ConstraintGraph::build(
            &sigma(&[
                sub(atom("A"), atom("B")),
                sub(atom("B"), atom("D")),
                sub(atom("A"), atom("C")),
                sub(atom("C"), atom("D")),
            ]),
            &BTreeSet::new(),
        );
        let a = g.node_of(&atom("A")).unwrap();
        let b = g.node_of(&atom("B")).unwrap();
        let d = g.node_of(&atom("D")).unwrap();
        let path = g.least_path(a, d).unwrap();
        assert_eq!(path, vec![a, b, d]);
        assert_eq!(g.least_path(d, a), None);
        assert_eq!(g.least_path(a, a).unwrap(), vec![a]);
    }
}
