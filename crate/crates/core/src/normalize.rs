//! Abbreviation expansion and constraint-set normalization.
//!
//! Raw constraints may use the sugar forms `Top`, `exists p` and
//! `atmost n p`, and equivalences standing for a pair of inclusions. After
//! expansion each inclusion is classified: vacuous constraints are dropped,
//! contrapositives `¬f ⊑ ¬e` are rewritten to `e ⊑ f`, and anything outside
//! the (extended) lightweight fragment is rejected.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{BasicConcept, Concept, Inclusion, RoleDescription};

/// A basic concept that may still use sugar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SugaredBasic {
    Bottom,
    Named(crate::model::Name),
    AtLeast(u64, RoleDescription),
    /// `exists p`, standing for `atleast 1 p`.
    Exists(RoleDescription),
}

/// A concept that may still use sugar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SugaredConcept {
    Positive(SugaredBasic),
    Negated(SugaredBasic),
    /// `Top`, standing for `not Bottom`.
    Top,
    /// `atmost n p`, standing for `not atleast n+1 p`.
    AtMost(u64, RoleDescription),
}

/// A constraint as written in source text, before expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawConstraint {
    Sub(SugaredConcept, SugaredConcept),
    /// `e equiv f`, standing for the pair `e sub f`, `f sub e`.
    Equiv(SugaredConcept, SugaredConcept),
}

impl RawConstraint {
    /// Expand sugar and equivalences into one or two plain inclusions.
    pub fn expand(&self) -> Vec<Inclusion> {
        match self {
            RawConstraint::Sub(l, r) => vec![Inclusion::new(expand_concept(l), expand_concept(r))],
            RawConstraint::Equiv(l, r) => {
                let (l, r) = (expand_concept(l), expand_concept(r));
                vec![Inclusion::new(l.clone(), r.clone()), Inclusion::new(r, l)]
            }
        }
    }
}

fn expand_basic(b: &SugaredBasic) -> BasicConcept {
    match b {
        SugaredBasic::Bottom => BasicConcept::Bottom,
        SugaredBasic::Named(n) => BasicConcept::Atomic(n.clone()),
        SugaredBasic::AtLeast(n, p) => BasicConcept::at_least(*n, p.clone()),
        SugaredBasic::Exists(p) => BasicConcept::at_least(1, p.clone()),
    }
}

/// Rewrite a possibly sugared concept into unabbreviated form.
pub fn expand_concept(c: &SugaredConcept) -> Concept {
    match c {
        SugaredConcept::Positive(b) => Concept::Positive(expand_basic(b)),
        SugaredConcept::Negated(b) => Concept::Negated(expand_basic(b)),
        SugaredConcept::Top => Concept::top(),
        SugaredConcept::AtMost(n, p) => Concept::Negated(BasicConcept::at_least(
            n.checked_add(1).expect("at-most count overflow"),
            p.clone(),
        )),
    }
}

/// Classification of an unabbreviated inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionClass {
    /// A lightweight inclusion, kept as is.
    Lightweight,
    /// Satisfied by every interpretation (`⊥ ⊑ f` or `e ⊑ ⊤`); dropped.
    Vacuous,
    /// `¬f ⊑ ¬e`, replaced by the equivalent `e ⊑ f`.
    ContrapositiveRewritable(Inclusion),
    /// `⊤ ⊑ f` with an admissible right-hand side.
    ExtendedTotal,
    /// Outside the fragment, e.g. `¬e ⊑ f`.
    IllFormed(String),
}

/// Classify a fully unabbreviated inclusion. Exactly one class applies.
pub fn classify(incl: &Inclusion) -> InclusionClass {
    if incl.lhs.is_bottom() || incl.rhs.is_top() {
        return InclusionClass::Vacuous;
    }
    if incl.lhs.is_top() {
        return if incl.is_extended() {
            InclusionClass::ExtendedTotal
        } else {
            // rhs is Top, already handled; unreachable in practice
            InclusionClass::IllFormed("inadmissible right-hand side for a total constraint".into())
        };
    }
    match (&incl.lhs, &incl.rhs) {
        (Concept::Negated(_), Concept::Negated(_)) => {
            let rewritten = Inclusion::new(incl.rhs.complement(), incl.lhs.complement());
            debug_assert!(rewritten.is_lightweight());
            InclusionClass::ContrapositiveRewritable(rewritten)
        }
        (Concept::Negated(_), Concept::Positive(_)) => InclusionClass::IllFormed(
            "a negated concept may not appear on the left-hand side".into(),
        ),
        _ => {
            debug_assert!(incl.is_lightweight());
            InclusionClass::Lightweight
        }
    }
}

/// Normalize one unabbreviated inclusion. Returns `None` for vacuous input,
/// the kept or rewritten inclusion otherwise.
pub fn normalize_inclusion(
    incl: &Inclusion,
    allow_extended: bool,
) -> Result<Option<Inclusion>, NormalizeError> {
    match classify(incl) {
        InclusionClass::Vacuous => Ok(None),
        InclusionClass::Lightweight => Ok(Some(incl.clone())),
        InclusionClass::ContrapositiveRewritable(r) => Ok(Some(r)),
        InclusionClass::ExtendedTotal => {
            if allow_extended {
                Ok(Some(incl.clone()))
            } else {
                Err(NormalizeError::ExtendedNotAllowed {
                    inclusion: incl.to_string(),
                })
            }
        }
        InclusionClass::IllFormed(reason) => Err(NormalizeError::IllFormed {
            inclusion: incl.to_string(),
            reason,
        }),
    }
}

/// Expand and normalize a whole constraint list into a deduplicated set that
/// is theory-equivalent to the input.
pub fn normalize_constraints(
    raw: &[RawConstraint],
    allow_extended: bool,
) -> Result<BTreeSet<Inclusion>, NormalizeError> {
    let mut out = BTreeSet::new();
    for rc in raw {
        for incl in rc.expand() {
            if let Some(kept) = normalize_inclusion(&incl, allow_extended)? {
                out.insert(kept);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("inclusion `{inclusion}` is not a lightweight inclusion: {reason}")]
    IllFormed { inclusion: String, reason: String },
    #[error("total constraint `{inclusion}` is not allowed here")]
    ExtendedNotAllowed { inclusion: String },
}
