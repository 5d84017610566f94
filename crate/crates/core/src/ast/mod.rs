//! Abstract syntax for shapes documents.
//!
//! The constraint grammar is deliberately small: surface SHACL features such
//! as `sh:or`, `sh:maxCount` or value-level quantification are desugared by
//! the reader into [`Constraint::Not`], [`Constraint::And`] and
//! [`Constraint::AtLeast`], so evaluation and translation each have a single
//! case per constructor.

mod analysis;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::num::NonZeroUsize;

use regex::Regex;
use thiserror::Error;

use crate::rdf::Term;

pub use analysis::{DependencyGraph, Fragment, FragmentLetter, RecursionReport};

/// Identifier of a shape: an IRI or a blank node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeName(pub Term);

impl ShapeName {
    pub fn iri(value: &str) -> Self {
        ShapeName(Term::iri(value))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }
}

impl From<Term> for ShapeName {
    fn from(term: Term) -> Self {
        ShapeName(term)
    }
}

impl fmt::Display for ShapeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetDecl {
    Node(Term),
    Class(Term),
    SubjectsOf(Term),
    ObjectsOf(Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Predicate(Term),
    Inverse(Box<Path>),
    Sequence(Box<Path>, Box<Path>),
    Alternative(Box<Path>, Box<Path>),
    ZeroOrOne(Box<Path>),
    ZeroOrMore(Box<Path>),
    OneOrMore(Box<Path>),
}

impl Path {
    pub fn predicate(iri: &str) -> Self {
        Path::Predicate(Term::iri(iri))
    }

    pub fn inverse(self) -> Self {
        Path::Inverse(Box::new(self))
    }

    pub fn then(self, next: Path) -> Self {
        Path::Sequence(Box::new(self), Box::new(next))
    }

    pub fn or(self, other: Path) -> Self {
        Path::Alternative(Box::new(self), Box::new(other))
    }

    pub fn zero_or_one(self) -> Self {
        Path::ZeroOrOne(Box::new(self))
    }

    pub fn zero_or_more(self) -> Self {
        Path::ZeroOrMore(Box::new(self))
    }

    pub fn one_or_more(self) -> Self {
        Path::OneOrMore(Box::new(self))
    }

    /// Predicates mentioned anywhere in the path.
    pub fn predicates(&self, out: &mut BTreeSet<Term>) {
        match self {
            Path::Predicate(p) => {
                out.insert(p.clone());
            }
            Path::Inverse(q) | Path::ZeroOrOne(q) | Path::ZeroOrMore(q) | Path::OneOrMore(q) => {
                q.predicates(out)
            }
            Path::Sequence(a, b) | Path::Alternative(a, b) => {
                a.predicates(out);
                b.predicates(out);
            }
        }
    }
}

/// A `sh:pattern` regular expression together with its `sh:flags`.
#[derive(Clone, Debug)]
pub struct Pattern {
    source: String,
    flags: String,
    regex: Regex,
}

impl Pattern {
    /// Supported flags: `i`, `m`, `s`, `x`.
    pub fn new(source: &str, flags: &str) -> Result<Self, AstError> {
        let mut inline = String::new();
        for flag in flags.chars() {
            if !"imsx".contains(flag) {
                return Err(AstError::InvalidPattern {
                    pattern: source.to_string(),
                    message: format!("unsupported flag `{flag}`"),
                });
            }
            if !inline.contains(flag) {
                inline.push(flag);
            }
        }
        let full = if inline.is_empty() {
            source.to_string()
        } else {
            format!("(?{inline}){source}")
        };
        let regex = Regex::new(&full).map_err(|e| AstError::InvalidPattern {
            pattern: source.to_string(),
            message: e.to_string(),
        })?;
        Ok(Pattern {
            source: source.to_string(),
            flags: flags.to_string(),
            regex,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn flags(&self) -> &str {
        &self.flags
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.regex.is_match(text)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        (&self.source, &self.flags) == (&other.source, &other.flags)
    }
}

impl Eq for Pattern {}

impl std::hash::Hash for Pattern {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.flags.hash(state);
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.source, &self.flags).cmp(&(&other.source, &other.flags))
    }
}

/// Node-level tests that do not look at the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterKind {
    NodeKindIri,
    NodeKindBlank,
    NodeKindLiteral,
    Datatype(Term),
    MinLength(usize),
    MaxLength(usize),
    Pattern(Pattern),
    In(BTreeSet<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comparison {
    Less,
    LessOrEqual,
    /// Inverted forms. Not produced by the SHACL reader.
    Greater,
    GreaterOrEqual,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Less => "<",
            Comparison::LessOrEqual => "<=",
            Comparison::Greater => ">",
            Comparison::GreaterOrEqual => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    True,
    Not(Box<Constraint>),
    And(Box<Constraint>, Box<Constraint>),
    HasValue(Term),
    Filter(FilterKind),
    Ref(ShapeName),
    /// At least `count` values reachable through `path` satisfy `inner`.
    AtLeast {
        count: NonZeroUsize,
        path: Path,
        inner: Box<Constraint>,
    },
    /// The values of `path` are exactly the `predicate`-values of the focus node.
    Equals {
        path: Path,
        predicate: Term,
    },
    /// No value of `path` is a `predicate`-value of the focus node.
    Disjoint {
        path: Path,
        predicate: Term,
    },
    /// Every (path value, predicate value) pair is ordered by `comparison`.
    Order {
        path: Path,
        predicate: Term,
        comparison: Comparison,
    },
    /// Every outgoing predicate of the focus node is in the set.
    Closed(BTreeSet<Term>),
}

impl Constraint {
    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Constraint) -> Self {
        Constraint::Not(Box::new(c))
    }

    pub fn and(a: Constraint, b: Constraint) -> Self {
        Constraint::And(Box::new(a), Box::new(b))
    }

    /// `¬(¬a ∧ ¬b)`
    pub fn or(a: Constraint, b: Constraint) -> Self {
        Constraint::not(Constraint::and(Constraint::not(a), Constraint::not(b)))
    }

    pub fn false_() -> Self {
        Constraint::not(Constraint::True)
    }

    pub fn reference(name: ShapeName) -> Self {
        Constraint::Ref(name)
    }

    pub fn at_least(count: usize, path: Path, inner: Constraint) -> Result<Self, AstError> {
        let count = NonZeroUsize::new(count).ok_or(AstError::ZeroCount)?;
        Ok(Constraint::AtLeast {
            count,
            path,
            inner: Box::new(inner),
        })
    }

    /// `¬ AtLeast(max + 1, path, inner)`
    pub fn at_most(max: usize, path: Path, inner: Constraint) -> Self {
        let count = NonZeroUsize::new(max + 1).expect("max + 1 is non-zero");
        Constraint::not(Constraint::AtLeast {
            count,
            path,
            inner: Box::new(inner),
        })
    }

    /// Every value of `path` satisfies `inner`: `¬ AtLeast(1, path, ¬inner)`.
    pub fn all(path: Path, inner: Constraint) -> Self {
        Constraint::at_most(0, path, Constraint::not(inner))
    }

    /// Right fold with `And`; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Constraint>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Constraint::True;
        };
        while let Some(next) = parts.pop() {
            acc = Constraint::and(next, acc);
        }
        acc
    }

    /// Right fold with the `Or` encoding; `¬True` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Constraint>) -> Self {
        let mut parts: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Constraint::false_();
        };
        while let Some(next) = parts.pop() {
            acc = Constraint::or(next, acc);
        }
        acc
    }

    /// Shape names occurring under `Ref` anywhere in the constraint.
    pub fn direct_refs(&self) -> BTreeSet<ShapeName> {
        let mut out = BTreeSet::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs(&self, out: &mut BTreeSet<ShapeName>) {
        match self {
            Constraint::Ref(s) => {
                out.insert(s.clone());
            }
            Constraint::Not(c) | Constraint::AtLeast { inner: c, .. } => c.collect_refs(out),
            Constraint::And(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
            Constraint::True
            | Constraint::HasValue(_)
            | Constraint::Filter(_)
            | Constraint::Equals { .. }
            | Constraint::Disjoint { .. }
            | Constraint::Order { .. }
            | Constraint::Closed(_) => {}
        }
    }

    pub fn contains_closed(&self) -> bool {
        match self {
            Constraint::Closed(_) => true,
            Constraint::Not(c) | Constraint::AtLeast { inner: c, .. } => c.contains_closed(),
            Constraint::And(a, b) => a.contains_closed() || b.contains_closed(),
            _ => false,
        }
    }

    /// All terms mentioned by the constraint: predicates, constants, filter
    /// arguments and shape names.
    pub fn terms(&self, out: &mut BTreeSet<Term>) {
        match self {
            Constraint::True => {}
            Constraint::Not(c) => c.terms(out),
            Constraint::And(a, b) => {
                a.terms(out);
                b.terms(out);
            }
            Constraint::HasValue(t) => {
                out.insert(t.clone());
            }
            Constraint::Filter(f) => match f {
                FilterKind::Datatype(t) => {
                    out.insert(t.clone());
                }
                FilterKind::In(ts) => out.extend(ts.iter().cloned()),
                _ => {}
            },
            Constraint::Ref(s) => {
                out.insert(s.0.clone());
            }
            Constraint::AtLeast { path, inner, .. } => {
                path.predicates(out);
                inner.terms(out);
            }
            Constraint::Equals { path, predicate }
            | Constraint::Disjoint { path, predicate }
            | Constraint::Order { path, predicate, .. } => {
                path.predicates(out);
                out.insert(predicate.clone());
            }
            Constraint::Closed(allowed) => out.extend(allowed.iter().cloned()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub name: ShapeName,
    pub targets: BTreeSet<TargetDecl>,
    pub constraint: Constraint,
}

impl Shape {
    pub fn new(
        name: ShapeName,
        targets: impl IntoIterator<Item = TargetDecl>,
        constraint: Constraint,
    ) -> Self {
        Shape {
            name,
            targets: targets.into_iter().collect(),
            constraint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AstError {
    #[error("duplicate shape name {0}")]
    DuplicateShape(ShapeName),
    #[error("shape {referrer} references unknown shape {missing}")]
    DanglingReference { referrer: ShapeName, missing: ShapeName },
    #[error("unknown shape {0}")]
    UnknownShape(ShapeName),
    #[error("cardinality must be at least 1")]
    ZeroCount,
    #[error("invalid pattern `{pattern}`: {message}")]
    InvalidPattern { pattern: String, message: String },
}

/// A set of shapes with pairwise distinct names and a closed reference space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    shapes: BTreeMap<ShapeName, Shape>,
}

impl Document {
    pub fn new(shapes: impl IntoIterator<Item = Shape>) -> Result<Self, AstError> {
        let mut map = BTreeMap::new();
        for shape in shapes {
            if map.contains_key(&shape.name) {
                return Err(AstError::DuplicateShape(shape.name));
            }
            map.insert(shape.name.clone(), shape);
        }
        for shape in map.values() {
            if let Some(missing) = shape
                .constraint
                .direct_refs()
                .into_iter()
                .find(|r| !map.contains_key(r))
            {
                return Err(AstError::DanglingReference {
                    referrer: shape.name.clone(),
                    missing,
                });
            }
        }
        Ok(Document { shapes: map })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Shapes in name order.
    pub fn shapes(&self) -> impl ExactSizeIterator<Item = &Shape> + '_ {
        self.shapes.values()
    }

    pub fn names(&self) -> impl ExactSizeIterator<Item = &ShapeName> + '_ {
        self.shapes.keys()
    }

    pub fn get(&self, name: &ShapeName) -> Option<&Shape> {
        self.shapes.get(name)
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// The same document with every target definition emptied.
    pub fn without_targets(&self) -> Document {
        Document {
            shapes: self
                .shapes
                .iter()
                .map(|(k, s)| {
                    (
                        k.clone(),
                        Shape {
                            targets: BTreeSet::new(),
                            ..s.clone()
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn has_targets(&self) -> bool {
        self.shapes.values().any(|s| !s.targets.is_empty())
    }

    pub fn contains_closed(&self) -> bool {
        self.shapes.values().any(|s| s.constraint.contains_closed())
    }

    /// Every term the document mentions, including `rdf:type` when a class
    /// target or class-based test depends on it.
    pub fn mentioned_terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for shape in self.shapes.values() {
            out.insert(shape.name.0.clone());
            for target in &shape.targets {
                match target {
                    TargetDecl::Node(t) | TargetDecl::SubjectsOf(t) | TargetDecl::ObjectsOf(t) => {
                        out.insert(t.clone());
                    }
                    TargetDecl::Class(c) => {
                        out.insert(c.clone());
                        out.insert(Term::iri(crate::vocab::rdf::TYPE));
                    }
                }
            }
            shape.constraint.terms(&mut out);
        }
        out
    }
}
