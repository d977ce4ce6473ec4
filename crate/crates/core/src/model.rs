//! Domain types for vocabularies, role and concept descriptions, inclusions
//! and ontologies.
//!
//! All values are immutable after construction and cheap to clone. Concepts
//! carry a canonical total order (derived `Ord` would not match it, so the
//! orderings below are written out by hand): positive descriptions sort
//! before negated ones, and within a polarity `Bottom` sorts before atomic
//! concepts (by resolved IRI) before at-least restrictions (by role IRI,
//! direct before inverse, then by count).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A named vocabulary element. Two names are equal iff their resolved IRIs
/// are byte-wise equal; the prefix and local part are kept only for display.
#[derive(Clone, Debug)]
pub struct Name {
    prefix: Option<String>,
    local: String,
    resolved: String,
}

impl Name {
    /// A name without a namespace prefix; the local part is the full IRI.
    pub fn plain(local: impl Into<String>) -> Self {
        let local = local.into();
        assert!(!local.is_empty(), "name must be non-empty");
        Name {
            prefix: None,
            resolved: local.clone(),
            local,
        }
    }

    /// A prefixed name; the resolved IRI is the namespace IRI followed by
    /// the local part.
    pub fn prefixed(
        prefix: impl Into<String>,
        namespace: impl Into<String>,
        local: impl Into<String>,
    ) -> Self {
        let prefix = prefix.into();
        let local = local.into();
        let namespace = namespace.into();
        assert!(!prefix.is_empty(), "prefix must be non-empty");
        assert!(!local.is_empty(), "name must be non-empty");
        Name {
            prefix: Some(prefix),
            resolved: format!("{namespace}{local}"),
            local,
        }
    }

    pub fn resolved(&self) -> &str {
        &self.resolved
    }

    pub fn prefix(&self) -> Option<&str> {
        self.prefix.as_deref()
    }

    pub fn local(&self) -> &str {
        &self.local
    }

    /// Namespace IRI recovered from the resolved form, when prefixed.
    pub fn namespace(&self) -> Option<&str> {
        self.prefix
            .as_ref()
            .map(|_| &self.resolved[..self.resolved.len() - self.local.len()])
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.resolved == other.resolved
    }
}
impl Eq for Name {}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Name {
    fn cmp(&self, other: &Self) -> Ordering {
        self.resolved.cmp(&other.resolved)
    }
}

impl std::hash::Hash for Name {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.resolved.hash(state);
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.prefix {
            Some(p) => write!(f, "{p}:{}", self.local),
            None => write!(f, "{}", self.local),
        }
    }
}

/// An atomic role or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RoleDescription {
    Direct(Name),
    Inverse(Name),
}

impl RoleDescription {
    pub fn name(&self) -> &Name {
        match self {
            RoleDescription::Direct(n) | RoleDescription::Inverse(n) => n,
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, RoleDescription::Inverse(_))
    }

    pub fn inverse(&self) -> RoleDescription {
        match self {
            RoleDescription::Direct(n) => RoleDescription::Inverse(n.clone()),
            RoleDescription::Inverse(n) => RoleDescription::Direct(n.clone()),
        }
    }
}

impl PartialOrd for RoleDescription {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RoleDescription {
    fn cmp(&self, other: &Self) -> Ordering {
        // by role IRI first, direct before inverse
        (self.name(), self.is_inverse()).cmp(&(other.name(), other.is_inverse()))
    }
}

impl fmt::Display for RoleDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleDescription::Direct(n) => write!(f, "{n}"),
            RoleDescription::Inverse(n) => write!(f, "inv {n}"),
        }
    }
}

/// A basic concept description: bottom, an atomic concept, or an at-least
/// restriction over a role description.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasicConcept {
    Bottom,
    Atomic(Name),
    AtLeast(u64, RoleDescription),
}

impl BasicConcept {
    /// At-least restriction; the count must be positive.
    pub fn at_least(n: u64, role: RoleDescription) -> Self {
        assert!(n >= 1, "at-least count must be >= 1");
        BasicConcept::AtLeast(n, role)
    }

    fn rank(&self) -> u8 {
        match self {
            BasicConcept::Bottom => 0,
            BasicConcept::Atomic(_) => 1,
            BasicConcept::AtLeast(..) => 2,
        }
    }
}

impl PartialOrd for BasicConcept {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BasicConcept {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BasicConcept::Atomic(a), BasicConcept::Atomic(b)) => a.cmp(b),
            (BasicConcept::AtLeast(n, p), BasicConcept::AtLeast(m, q)) => {
                // role IRI, then direct < inverse, then count
                p.cmp(q).then_with(|| n.cmp(m))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for BasicConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicConcept::Bottom => write!(f, "Bottom"),
            BasicConcept::Atomic(n) => write!(f, "{n}"),
            BasicConcept::AtLeast(n, p) => write!(f, "atleast {n} {p}"),
        }
    }
}

/// A lightweight concept description: a basic concept or its negation.
/// The universal concept is represented as `Negated(Bottom)`, never as a
/// separate variant, so `complement` stays total.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    Positive(BasicConcept),
    Negated(BasicConcept),
}

impl Concept {
    pub fn bottom() -> Self {
        Concept::Positive(BasicConcept::Bottom)
    }

    pub fn top() -> Self {
        Concept::Negated(BasicConcept::Bottom)
    }

    pub fn atomic(name: Name) -> Self {
        Concept::Positive(BasicConcept::Atomic(name))
    }

    pub fn at_least(n: u64, role: RoleDescription) -> Self {
        Concept::Positive(BasicConcept::at_least(n, role))
    }

    pub fn basic(&self) -> &BasicConcept {
        match self {
            Concept::Positive(b) | Concept::Negated(b) => b,
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Concept::Positive(_))
    }

    pub fn is_negated(&self) -> bool {
        matches!(self, Concept::Negated(_))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Concept::Positive(BasicConcept::Bottom))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Concept::Negated(BasicConcept::Bottom))
    }

    /// True for an atomic concept or an at-least restriction (the admissible
    /// left-hand sides of a lightweight inclusion).
    pub fn is_positive_basic(&self) -> bool {
        matches!(
            self,
            Concept::Positive(BasicConcept::Atomic(_)) | Concept::Positive(BasicConcept::AtLeast(..))
        )
    }

    /// The complement: `¬b` for `b`, and vice-versa. An involution.
    pub fn complement(&self) -> Concept {
        match self {
            Concept::Positive(b) => Concept::Negated(b.clone()),
            Concept::Negated(b) => Concept::Positive(b.clone()),
        }
    }

    /// The role mentioned by the description, if any.
    pub fn role(&self) -> Option<&RoleDescription> {
        match self.basic() {
            BasicConcept::AtLeast(_, p) => Some(p),
            _ => None,
        }
    }

    /// At-least count and role, if the underlying basic concept is an
    /// at-least restriction.
    pub fn at_least_parts(&self) -> Option<(u64, &RoleDescription)> {
        match self.basic() {
            BasicConcept::AtLeast(n, p) => Some((*n, p)),
            _ => None,
        }
    }

    /// Every concept or role name occurring in the description, tagged with
    /// the position it occurs in.
    pub fn typed_symbols(&self) -> Vec<(Name, SymbolKind)> {
        match self.basic() {
            BasicConcept::Bottom => Vec::new(),
            BasicConcept::Atomic(n) => vec![(n.clone(), SymbolKind::Concept)],
            BasicConcept::AtLeast(_, p) => vec![(p.name().clone(), SymbolKind::Role)],
        }
    }

    /// Rewrite every name occurrence through the given substitution.
    pub fn map_names(&self, subst: &impl Fn(&Name) -> Name) -> Concept {
        let basic = match self.basic() {
            BasicConcept::Bottom => BasicConcept::Bottom,
            BasicConcept::Atomic(n) => BasicConcept::Atomic(subst(n)),
            BasicConcept::AtLeast(n, p) => {
                let role = match p {
                    RoleDescription::Direct(r) => RoleDescription::Direct(subst(r)),
                    RoleDescription::Inverse(r) => RoleDescription::Inverse(subst(r)),
                };
                BasicConcept::AtLeast(*n, role)
            }
        };
        match self {
            Concept::Positive(_) => Concept::Positive(basic),
            Concept::Negated(_) => Concept::Negated(basic),
        }
    }
}

impl PartialOrd for Concept {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Concept {
    fn cmp(&self, other: &Self) -> Ordering {
        // all positive forms before all negated forms
        (self.is_negated(), self.basic()).cmp(&(other.is_negated(), other.basic()))
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Positive(b) => write!(f, "{b}"),
            Concept::Negated(BasicConcept::Bottom) => write!(f, "Top"),
            Concept::Negated(b) => write!(f, "not {b}"),
        }
    }
}

/// The position a name occurs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SymbolKind {
    Concept,
    Role,
}

/// An ordered inclusion `lhs ⊑ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inclusion {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Inclusion {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Inclusion { lhs, rhs }
    }

    fn rhs_admissible(&self) -> bool {
        match &self.rhs {
            Concept::Positive(_) => true,
            Concept::Negated(BasicConcept::Bottom) => false,
            Concept::Negated(_) => true,
        }
    }

    /// Well-formedness per the lightweight fragment: the left-hand side is an
    /// atomic concept or at-least restriction, the right-hand side a basic
    /// concept, bottom, or negated basic concept.
    pub fn is_lightweight(&self) -> bool {
        self.lhs.is_positive_basic() && self.rhs_admissible()
    }

    /// Lightweight, or a total constraint `⊤ ⊑ f` with an admissible
    /// right-hand side.
    pub fn is_extended(&self) -> bool {
        self.is_lightweight() || (self.lhs.is_top() && self.rhs_admissible())
    }

    /// Every concept and role name occurring on either side.
    pub fn symbols(&self) -> BTreeSet<Name> {
        self.typed_symbols().into_iter().map(|(n, _)| n).collect()
    }

    pub fn typed_symbols(&self) -> Vec<(Name, SymbolKind)> {
        let mut out = self.lhs.typed_symbols();
        out.extend(self.rhs.typed_symbols());
        out
    }

    /// The contrapositive `¬rhs ⊑ ¬lhs`.
    pub fn contrapositive(&self) -> Inclusion {
        Inclusion::new(self.rhs.complement(), self.lhs.complement())
    }

    /// True iff the inclusion holds in every interpretation: reflexive
    /// inclusions, `⊥ ⊑ f`, `e ⊑ ⊤`, at-least weakenings over the same role
    /// description, and their contrapositives.
    pub fn is_valid(&self) -> bool {
        if self.lhs == self.rhs || self.lhs.is_bottom() || self.rhs.is_top() {
            return true;
        }
        let weakening = |a: &Concept, b: &Concept| match (a.at_least_parts(), b.at_least_parts()) {
            (Some((n, p)), Some((m, q))) => p == q && m <= n,
            _ => false,
        };
        (self.lhs.is_positive() && self.rhs.is_positive() && weakening(&self.lhs, &self.rhs))
            || (self.lhs.is_negated()
                && self.rhs.is_negated()
                && weakening(&self.rhs.complement(), &self.lhs.complement()))
    }
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} sub {}", self.lhs, self.rhs)
    }
}

/// A finite vocabulary of atomic concepts and atomic roles. The two sets
/// must be disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vocabulary {
    concepts: BTreeSet<Name>,
    roles: BTreeSet<Name>,
}

impl Vocabulary {
    pub fn new(concepts: BTreeSet<Name>, roles: BTreeSet<Name>) -> Result<Self, ModelError> {
        if let Some(n) = concepts.intersection(&roles).next() {
            return Err(ModelError::ConceptRoleClash { name: n.clone() });
        }
        // one namespace per prefix, so prefixed rendering stays unambiguous
        let mut bindings: std::collections::BTreeMap<&str, &str> = Default::default();
        for name in concepts.iter().chain(roles.iter()) {
            if let (Some(prefix), Some(ns)) = (name.prefix(), name.namespace()) {
                match bindings.get(prefix) {
                    Some(bound) if *bound != ns => {
                        return Err(ModelError::PrefixConflict {
                            prefix: prefix.to_string(),
                        })
                    }
                    _ => {
                        bindings.insert(prefix, ns);
                    }
                }
            }
        }
        Ok(Vocabulary { concepts, roles })
    }

    pub fn concepts(&self) -> &BTreeSet<Name> {
        &self.concepts
    }

    pub fn roles(&self) -> &BTreeSet<Name> {
        &self.roles
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.concepts.contains(name) || self.roles.contains(name)
    }

    pub fn kind_of(&self, name: &Name) -> Option<SymbolKind> {
        if self.concepts.contains(name) {
            Some(SymbolKind::Concept)
        } else if self.roles.contains(name) {
            Some(SymbolKind::Role)
        } else {
            None
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.concepts.iter().chain(self.roles.iter())
    }

    /// Union of two vocabularies; fails when a name is a concept on one side
    /// and a role on the other.
    pub fn union(&self, other: &Vocabulary) -> Result<Vocabulary, ModelError> {
        let concepts: BTreeSet<_> = self.concepts.union(&other.concepts).cloned().collect();
        let roles: BTreeSet<_> = self.roles.union(&other.roles).cloned().collect();
        Vocabulary::new(concepts, roles)
    }

    pub fn intersection(&self, other: &Vocabulary) -> Result<Vocabulary, ModelError> {
        let concepts: BTreeSet<_> = self.concepts.intersection(&other.concepts).cloned().collect();
        let roles: BTreeSet<_> = self.roles.intersection(&other.roles).cloned().collect();
        Vocabulary::new(concepts, roles)
    }
}

/// A lightweight ontology: a vocabulary plus a finite set of constraints.
/// Every name occurring in a constraint must be declared with the matching
/// kind, and every constraint must be extended-well-formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ontology {
    vocabulary: Vocabulary,
    constraints: BTreeSet<Inclusion>,
}

impl Ontology {
    pub fn new(vocabulary: Vocabulary, constraints: BTreeSet<Inclusion>) -> Result<Self, ModelError> {
        for incl in &constraints {
            if !incl.is_extended() {
                return Err(ModelError::NotExtended {
                    inclusion: incl.to_string(),
                });
            }
            for (name, kind) in incl.typed_symbols() {
                match vocabulary.kind_of(&name) {
                    None => {
                        return Err(ModelError::UndeclaredName {
                            name,
                            inclusion: incl.to_string(),
                        })
                    }
                    Some(k) if k != kind => {
                        return Err(ModelError::KindMismatch {
                            name,
                            inclusion: incl.to_string(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(Ontology {
            vocabulary,
            constraints,
        })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn constraints(&self) -> &BTreeSet<Inclusion> {
        &self.constraints
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("name `{name}` is declared both as a concept and as a role")]
    ConceptRoleClash { name: Name },
    #[error("name `{name}` in `{inclusion}` is not declared in the vocabulary")]
    UndeclaredName { name: Name, inclusion: String },
    #[error("name `{name}` in `{inclusion}` is used with the wrong kind")]
    KindMismatch { name: Name, inclusion: String },
    #[error("constraint `{inclusion}` is not an extended lightweight inclusion")]
    NotExtended { inclusion: String },
    #[error("prefix `{prefix}:` is bound to two different namespaces")]
    PrefixConflict { prefix: String },
}
