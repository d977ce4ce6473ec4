//! The ontology text format, DOT export, and the two-column constraint
//! table.
//!
//! Grammar (UTF-8, `#` starts a line comment, every statement ends with
//! `.`):
//!
//! ```text
//! file       := (prefixDecl | decl | constraint | blank)*
//! prefixDecl := "@prefix" PNAME ":" "<" IRI ">" "."
//! decl       := ("concept" | "role") name "."
//! constraint := concept "sub" concept "." | concept "equiv" concept "."
//! concept    := "Bottom" | "Top" | "not" basic | basic | "atmost" INT role
//! basic      := "Bottom" | name | "atleast" INT role | "exists" role
//! role       := name | "inv" name
//! name       := PNAME ":" LOCAL | LOCAL
//! ```
//!
//! `equiv` abbreviates the two inclusions; `Top`, `exists` and `atmost` are
//! expanded away on input. Names in role positions are inferred to be
//! roles, everything else a concept; explicit `concept`/`role` declarations
//! override the inference and may declare unused names. Serialization emits
//! prefix declarations, declarations, then constraints in canonical order,
//! and round-trips: parsing the output reproduces the ontology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::ConstraintGraph;
use crate::model::{Inclusion, ModelError, Name, Ontology, SymbolKind, Vocabulary};
use crate::normalize::{
    normalize_inclusion, NormalizeError, RawConstraint, SugaredBasic, SugaredConcept,
};
use crate::reason::empty_descriptions;

/// 1-based position of a token in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    AtPrefix,
    Word(String),
    Int(u64),
    Iri(String),
    Dot,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::AtPrefix => write!(f, "@prefix"),
            Token::Word(w) => write!(f, "`{w}`"),
            Token::Int(n) => write!(f, "{n}"),
            Token::Iri(i) => write!(f, "<{i}>"),
            Token::Dot => write!(f, "`.`"),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "concept", "role", "sub", "equiv", "not", "atmost", "atleast", "exists", "inv", "Bottom",
    "Top",
];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == ':'
}

fn lex(text: &str) -> Result<Vec<(Token, SourceSpan)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            match c {
                Some('\n') => {
                    line += 1;
                    col = 1;
                }
                Some(_) => col += 1,
                None => {}
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let span = SourceSpan { line, column: col };
        match c {
            '#' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            c if c.is_whitespace() => {
                bump!();
            }
            '.' => {
                bump!();
                tokens.push((Token::Dot, span));
            }
            '<' => {
                bump!();
                let mut iri = String::new();
                loop {
                    match chars.peek() {
                        Some('>') => {
                            bump!();
                            break;
                        }
                        Some(&d) if d != '\n' => {
                            iri.push(d);
                            bump!();
                        }
                        _ => return Err(ParseError::new(span, "unterminated IRI")),
                    }
                }
                tokens.push((Token::Iri(iri), span));
            }
            '@' => {
                bump!();
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() {
                        word.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                if word != "prefix" {
                    return Err(ParseError::new(span, format!("unknown directive `@{word}`")));
                }
                tokens.push((Token::AtPrefix, span));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                let n: u64 = digits
                    .parse()
                    .map_err(|_| ParseError::new(span, "integer out of range"))?;
                tokens.push((Token::Int(n), span));
            }
            c if is_word_char(c) => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if is_word_char(d) {
                        word.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Word(word), span));
            }
            other => {
                return Err(ParseError::new(span, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, SourceSpan)>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn end_span(&self) -> SourceSpan {
        self.tokens
            .last()
            .map(|&(_, s)| s)
            .unwrap_or(SourceSpan { line: 1, column: 1 })
    }

    fn peek(&self) -> Option<&(Token, SourceSpan)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<(Token, SourceSpan), ParseError> {
        let item = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ParseError::new(self.end_span(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(item)
    }

    fn expect_dot(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            (Token::Dot, _) => Ok(()),
            (tok, span) => Err(ParseError::new(span, format!("expected `.`, found {tok}"))),
        }
    }

    fn expect_word(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.next()? {
            (Token::Word(w), span) => Ok((w, span)),
            (tok, span) => Err(ParseError::new(span, format!("expected a name, found {tok}"))),
        }
    }

    fn resolve_name(&self, word: &str, span: SourceSpan) -> Result<Name, ParseError> {
        if KEYWORDS.contains(&word) {
            return Err(ParseError::new(
                span,
                format!("`{word}` is a reserved word and cannot be used as a name"),
            ));
        }
        match word.split_once(':') {
            None => Ok(Name::plain(word)),
            Some((prefix, local)) => {
                if local.is_empty() || local.contains(':') {
                    return Err(ParseError::new(span, format!("malformed name `{word}`")));
                }
                let iri = self.prefixes.get(prefix).ok_or_else(|| {
                    ParseError::new(span, format!("undeclared prefix `{prefix}:`"))
                })?;
                Ok(Name::prefixed(prefix, iri, local))
            }
        }
    }

    fn parse_name(&mut self) -> Result<Name, ParseError> {
        let (word, span) = self.expect_word()?;
        self.resolve_name(&word, span)
    }

    fn parse_prefix_decl(&mut self) -> Result<(), ParseError> {
        self.next()?; // @prefix
        let (word, span) = self.expect_word()?;
        let prefix = word
            .strip_suffix(':')
            .filter(|p| !p.is_empty() && !p.contains(':'))
            .ok_or_else(|| {
                ParseError::new(span, format!("expected a prefix like `mo:`, found `{word}`"))
            })?;
        let (iri, _) = match self.next()? {
            (Token::Iri(iri), span) => (iri, span),
            (tok, span) => {
                return Err(ParseError::new(span, format!("expected an <IRI>, found {tok}")))
            }
        };
        self.expect_dot()?;
        self.prefixes.insert(prefix.to_string(), iri);
        Ok(())
    }

    fn parse_count(&mut self, keyword: &str) -> Result<u64, ParseError> {
        match self.next()? {
            (Token::Int(n), span) => {
                if keyword == "atleast" && n == 0 {
                    return Err(ParseError::new(span, "at-least count must be positive"));
                }
                if n == u64::MAX {
                    return Err(ParseError::new(span, "count too large"));
                }
                Ok(n)
            }
            (tok, span) => Err(ParseError::new(
                span,
                format!("expected a count after `{keyword}`, found {tok}"),
            )),
        }
    }

    fn parse_role(&mut self) -> Result<crate::model::RoleDescription, ParseError> {
        use crate::model::RoleDescription;
        match self.peek() {
            Some((Token::Word(w), _)) if w == "inv" => {
                self.next()?;
                Ok(RoleDescription::Inverse(self.parse_name()?))
            }
            _ => Ok(RoleDescription::Direct(self.parse_name()?)),
        }
    }

    fn parse_basic(&mut self) -> Result<SugaredBasic, ParseError> {
        let (word, span) = self.expect_word()?;
        match word.as_str() {
            "Bottom" => Ok(SugaredBasic::Bottom),
            "atleast" => Ok(SugaredBasic::AtLeast(self.parse_count("atleast")?, self.parse_role()?)),
            "exists" => Ok(SugaredBasic::Exists(self.parse_role()?)),
            _ => Ok(SugaredBasic::Named(self.resolve_name(&word, span)?)),
        }
    }

    fn parse_concept(&mut self) -> Result<SugaredConcept, ParseError> {
        match self.peek() {
            Some((Token::Word(w), _)) => match w.as_str() {
                "Top" => {
                    self.next()?;
                    Ok(SugaredConcept::Top)
                }
                "not" => {
                    self.next()?;
                    Ok(SugaredConcept::Negated(self.parse_basic()?))
                }
                "atmost" => {
                    self.next()?;
                    Ok(SugaredConcept::AtMost(self.parse_count("atmost")?, self.parse_role()?))
                }
                _ => Ok(SugaredConcept::Positive(self.parse_basic()?)),
            },
            Some(&(ref tok, span)) => {
                Err(ParseError::new(span, format!("expected a concept, found {tok}")))
            }
            None => Err(ParseError::new(self.end_span(), "unexpected end of input")),
        }
    }

    fn parse_constraint(&mut self) -> Result<(RawConstraint, SourceSpan), ParseError> {
        let span = self.peek().map(|&(_, s)| s).unwrap_or_else(|| self.end_span());
        let lhs = self.parse_concept()?;
        let (word, op_span) = self.expect_word()?;
        let raw = match word.as_str() {
            "sub" => RawConstraint::Sub(lhs, self.parse_concept()?),
            "equiv" => RawConstraint::Equiv(lhs, self.parse_concept()?),
            other => {
                return Err(ParseError::new(
                    op_span,
                    format!("expected `sub` or `equiv`, found `{other}`"),
                ))
            }
        };
        self.expect_dot()?;
        Ok((raw, span))
    }
}

/// A parsed file: the validated ontology plus the prefix table, which
/// callers need to resolve further names (queries, keep lists, renamings)
/// in the same namespace environment.
#[derive(Debug)]
pub struct ParsedDocument {
    pub ontology: Ontology,
    pub prefixes: BTreeMap<String, String>,
}

/// Parse a full ontology file.
pub fn parse_document(text: &str) -> Result<ParsedDocument, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: BTreeMap::new(),
    };
    let mut declared: BTreeMap<Name, (SymbolKind, SourceSpan)> = BTreeMap::new();
    let mut raws: Vec<(RawConstraint, SourceSpan)> = Vec::new();

    while let Some((tok, span)) = parser.peek().cloned() {
        match tok {
            Token::AtPrefix => parser.parse_prefix_decl()?,
            Token::Word(w) if w == "concept" || w == "role" => {
                parser.next()?;
                let kind = if w == "concept" {
                    SymbolKind::Concept
                } else {
                    SymbolKind::Role
                };
                let name = parser.parse_name()?;
                parser.expect_dot()?;
                if let Some((existing, _)) = declared.get(&name) {
                    if *existing != kind {
                        return Err(ParseError::new(
                            span,
                            format!("`{name}` is declared both as a concept and as a role"),
                        ));
                    }
                }
                declared.insert(name, (kind, span));
            }
            _ => raws.push(parser.parse_constraint()?),
        }
    }

    // vocabulary inference: declarations win, usage positions fill the rest
    let mut kinds: BTreeMap<Name, (SymbolKind, bool)> = declared
        .iter()
        .map(|(n, &(k, _))| (n.clone(), (k, true)))
        .collect();
    for (raw, span) in &raws {
        for incl in raw.expand() {
            for (name, kind) in incl.typed_symbols() {
                match kinds.get(&name) {
                    None => {
                        kinds.insert(name, (kind, false));
                    }
                    Some(&(k, declared_explicitly)) if k != kind => {
                        let how = if declared_explicitly {
                            format!("`{name}` is declared as a {} but used as a {}", kind_word(k), kind_word(kind))
                        } else {
                            format!(
                                "`{name}` is used both as a concept and as a role; add explicit declarations"
                            )
                        };
                        return Err(ParseError::new(*span, how));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut constraints: BTreeSet<Inclusion> = BTreeSet::new();
    for (raw, span) in &raws {
        for incl in raw.expand() {
            match normalize_inclusion(&incl, false) {
                Ok(Some(kept)) => {
                    constraints.insert(kept);
                }
                Ok(None) => {}
                Err(e @ NormalizeError::IllFormed { .. })
                | Err(e @ NormalizeError::ExtendedNotAllowed { .. }) => {
                    return Err(ParseError::new(*span, e.to_string()))
                }
            }
        }
    }

    let concepts: BTreeSet<Name> = kinds
        .iter()
        .filter(|(_, (k, _))| *k == SymbolKind::Concept)
        .map(|(n, _)| n.clone())
        .collect();
    let roles: BTreeSet<Name> = kinds
        .iter()
        .filter(|(_, (k, _))| *k == SymbolKind::Role)
        .map(|(n, _)| n.clone())
        .collect();
    let vocabulary = Vocabulary::new(concepts, roles).map_err(model_error)?;
    let ontology = Ontology::new(vocabulary, constraints).map_err(model_error)?;
    Ok(ParsedDocument {
        ontology,
        prefixes: parser.prefixes,
    })
}

fn kind_word(k: SymbolKind) -> &'static str {
    match k {
        SymbolKind::Concept => "concept",
        SymbolKind::Role => "role",
    }
}

fn model_error(e: ModelError) -> ParseError {
    ParseError::new(SourceSpan { line: 1, column: 1 }, e.to_string())
}

/// Parse an ontology file, discarding the prefix table.
pub fn parse_ontology(text: &str) -> Result<Ontology, ParseError> {
    parse_document(text).map(|d| d.ontology)
}

/// Parse a single constraint (the file grammar's `constraint` production,
/// including the final `.`) in an existing prefix environment. Equivalences
/// yield two inclusions; vacuous constraints yield none. Total constraints
/// (`Top sub f`) are accepted here.
pub fn parse_constraint(
    text: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<Vec<Inclusion>, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: prefixes.clone(),
    };
    let (raw, span) = parser.parse_constraint()?;
    if let Some(&(ref tok, span)) = parser.peek() {
        return Err(ParseError::new(span, format!("trailing input after constraint: {tok}")));
    }
    let mut out = Vec::new();
    for incl in raw.expand() {
        match normalize_inclusion(&incl, true) {
            Ok(Some(kept)) => out.push(kept),
            Ok(None) => {}
            Err(e) => return Err(ParseError::new(span, e.to_string())),
        }
    }
    Ok(out)
}

/// Parse one name in an existing prefix environment.
pub fn parse_name(text: &str, prefixes: &BTreeMap<String, String>) -> Result<Name, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: prefixes.clone(),
    };
    let name = parser.parse_name()?;
    if let Some(&(ref tok, span)) = parser.peek() {
        return Err(ParseError::new(span, format!("trailing input after name: {tok}")));
    }
    Ok(name)
}

/// Parse a renaming map: one `old -> new` pair per line, `#` comments and
/// blank lines allowed.
pub fn parse_rename_pairs(
    text: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<Vec<(Name, Name)>, ParseError> {
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let span = SourceSpan { line: idx + 1, column: 1 };
        let (old, new) = line
            .split_once("->")
            .ok_or_else(|| ParseError::new(span, "expected `old -> new`"))?;
        let old = parse_name(old.trim(), prefixes).map_err(|e| ParseError::new(span, e.message))?;
        let new = parse_name(new.trim(), prefixes).map_err(|e| ParseError::new(span, e.message))?;
        pairs.push((old, new));
    }
    Ok(pairs)
}

fn prefix_table(o: &Ontology) -> BTreeMap<String, String> {
    let mut table = BTreeMap::new();
    for name in o.vocabulary().names() {
        if let (Some(prefix), Some(ns)) = (name.prefix(), name.namespace()) {
            table.entry(prefix.to_string()).or_insert_with(|| ns.to_string());
        }
    }
    table
}

/// Serialize an ontology: prefix declarations, declarations, then
/// constraints in canonical order, unabbreviated. Deterministic, and a
/// fixpoint under parse-then-serialize.
pub fn serialize_ontology(o: &Ontology) -> String {
    let mut out = String::new();
    let prefixes = prefix_table(o);
    for (prefix, iri) in &prefixes {
        out.push_str(&format!("@prefix {prefix}: <{iri}> .\n"));
    }
    if !prefixes.is_empty() {
        out.push('\n');
    }
    for c in o.vocabulary().concepts() {
        out.push_str(&format!("concept {c} .\n"));
    }
    for r in o.vocabulary().roles() {
        out.push_str(&format!("role {r} .\n"));
    }
    if !(o.vocabulary().concepts().is_empty() && o.vocabulary().roles().is_empty())
        && !o.constraints().is_empty()
    {
        out.push('\n');
    }
    for incl in o.constraints() {
        out.push_str(&format!("{incl} .\n"));
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz export of a constraint graph: one node per graph node labeled
/// with its sorted concept labels and tags, dashed arcs for tautological
/// ones.
pub fn export_dot(g: &ConstraintGraph) -> String {
    let mut out = String::from("digraph constraints {\n  rankdir=LR;\n");
    for n in g.node_ids() {
        let labels: Vec<String> = g.labels(n).iter().map(|c| c.to_string()).collect();
        let mut text = if labels.len() == 1 {
            labels[0].clone()
        } else {
            format!("{{{}}}", labels.join(", "))
        };
        if g.is_bottom_node(n) {
            text.push_str(" [bottom]");
        }
        if g.is_top_node(n) {
            text.push_str(" [top]");
        }
        out.push_str(&format!("  {} [label=\"{}\"];\n", n, dot_escape(&text)));
    }
    for (a, b) in g.arcs() {
        if g.is_tautological_arc(a, b) {
            out.push_str(&format!("  {a} -> {b} [style=dashed];\n"));
        } else {
            out.push_str(&format!("  {a} -> {b};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// Two-column, tab-separated constraint table: one row per constraint in
/// canonical order, plus one `<description> TAB Bottom` row per description
/// that the constraints force to be empty.
pub fn export_table(o: &Ontology) -> String {
    let mut rows: Vec<(String, String)> = o
        .constraints()
        .iter()
        .map(|i| (i.lhs.to_string(), i.rhs.to_string()))
        .collect();
    for c in empty_descriptions(o.constraints()) {
        let row = (c.to_string(), "Bottom".to_string());
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let mut out = String::new();
    for (lhs, rhs) in rows {
        out.push_str(&format!("{lhs}\t{rhs}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BasicConcept, Concept, RoleDescription};

    #[test]
    fn parses_the_negated_cardinality_example() {
        let text = "@prefix mo: <http://purl.org/ontology/mo/> .\n\
                    @prefix foaf: <http://xmlns.com/foaf/0.1/> .\n\
                    mo:Label sub not atleast 1 foaf:name .\n";
        let doc = parse_document(text).unwrap();
        let label = Name::prefixed("mo", "http://purl.org/ontology/mo/", "Label");
        let name = Name::prefixed("foaf", "http://xmlns.com/foaf/0.1/", "name");
        let expected = Inclusion::new(
            Concept::atomic(label.clone()),
            Concept::Negated(BasicConcept::at_least(1, RoleDescription::Direct(name.clone()))),
        );
        assert_eq!(doc.ontology.constraints(), &BTreeSet::from([expected]));
        assert!(doc.ontology.vocabulary().concepts().contains(&label));
        assert!(doc.ontology.vocabulary().roles().contains(&name));
    }

    #[test]
    fn exists_desugars_to_atleast_one() {
        let doc = parse_document("exists P sub C .\n").unwrap();
        let expected = Inclusion::new(
            Concept::at_least(1, RoleDescription::Direct(Name::plain("P"))),
            Concept::atomic(Name::plain("C")),
        );
        assert_eq!(doc.ontology.constraints(), &BTreeSet::from([expected]));
    }

    #[test]
    fn empty_input_is_an_empty_ontology() {
        let doc = parse_document("").unwrap();
        assert!(doc.ontology.constraints().is_empty());
        assert!(doc.ontology.vocabulary().concepts().is_empty());
        assert_eq!(serialize_ontology(&doc.ontology), "");
    }

    #[test]
    fn declarations_override_and_extend_inference() {
        let doc = parse_document("concept C .\nrole Q .\nC sub D .\n").unwrap();
        assert!(doc.ontology.vocabulary().roles().contains(&Name::plain("Q")));
        assert!(doc.ontology.vocabulary().concepts().contains(&Name::plain("D")));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_document("C sub\nsub D .\n").unwrap_err();
        assert_eq!(err.span, SourceSpan { line: 2, column: 1 });

        let err = parse_document("C sub mo:Label .\n").unwrap_err();
        assert!(err.message.contains("undeclared prefix"));

        let err = parse_document("C sub atleast 0 P .\n").unwrap_err();
        assert!(err.message.contains("positive"));

        let err = parse_document("not C sub D .\n").unwrap_err();
        assert!(err.message.contains("not a lightweight inclusion"));

        let err = parse_document("P sub C .\nexists P sub C .\n").unwrap_err();
        assert!(err.message.contains("both as a concept and as a role"));

        let err = parse_document("Top sub C .\n").unwrap_err();
        assert!(err.message.contains("not allowed"));
    }

    #[test]
    fn equivalence_and_sugar_round_trip() {
        let text = "C equiv D .\nE sub atmost 2 P .\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.ontology.constraints().len(), 3);
        let printed = parse_ontology(&serialize_ontology(&doc.ontology)).unwrap();
        assert_eq!(printed, doc.ontology);
    }

    #[test]
    fn serialization_is_a_fixpoint() {
        let text = "@prefix a: <urn:a#> .\nconcept a:Z .\na:C sub a:D .\na:D sub not a:E .\n";
        let o = parse_ontology(text).unwrap();
        let once = serialize_ontology(&o);
        let twice = serialize_ontology(&parse_ontology(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn single_constraints_parse_in_a_prefix_environment() {
        let mut prefixes = BTreeMap::new();
        prefixes.insert("mo".to_string(), "http://purl.org/ontology/mo/".to_string());
        let q = parse_constraint("mo:Label sub mo:CorporateBody .", &prefixes).unwrap();
        assert_eq!(q.len(), 1);
        let q = parse_constraint("C equiv D .", &prefixes).unwrap();
        assert_eq!(q.len(), 2);
        // vacuous queries normalize away
        let q = parse_constraint("Bottom sub C .", &prefixes).unwrap();
        assert!(q.is_empty());
        // total constraints are allowed as queries
        let q = parse_constraint("Top sub C .", &prefixes).unwrap();
        assert_eq!(q.len(), 1);
        assert!(parse_constraint("C sub D", &prefixes).is_err());
    }

    #[test]
    fn dot_export_of_a_single_inclusion() {
        let o = parse_ontology("C sub D .\n").unwrap();
        let g = ConstraintGraph::build(o.constraints(), &BTreeSet::new());
        let dot = export_dot(&g);
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.ends_with("}\n"));

        let empty = ConstraintGraph::build(&BTreeSet::new(), &BTreeSet::new());
        let dot = export_dot(&empty);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn table_lists_constraints_and_empty_descriptions() {
        let o = parse_ontology("C sub D .\nC sub not D .\n").unwrap();
        let table = export_table(&o);
        assert_eq!(table, "C\tD\nC\tnot D\nC\tBottom\n");
        assert_eq!(export_table(&parse_ontology("").unwrap()), "");
    }

    #[test]
    fn rename_pair_files() {
        let pairs = parse_rename_pairs("# comment\nDocument -> Publication\n", &BTreeMap::new())
            .unwrap();
        assert_eq!(pairs, vec![(Name::plain("Document"), Name::plain("Publication"))]);
        assert!(parse_rename_pairs("Document Publication\n", &BTreeMap::new()).is_err());
    }
}
