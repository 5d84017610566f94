//! Reading a shapes graph into a [`Document`].
//!
//! Surface components are desugared into the core constraint grammar. On a
//! property shape every value-level component is quantified over the shape's
//! path: `sh:class`, filters, `sh:node`, `sh:not`, `sh:and`, `sh:or` and
//! `sh:property` become `all(path, c)`, while `sh:hasValue` becomes
//! `AtLeast(1, path, HasValue)`.

mod collection;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ast::{
    AstError, Comparison, Constraint, Document, FilterKind, Path, Pattern, Shape, ShapeName, TargetDecl,
};
use crate::rdf::{Graph, Term};
use crate::vocab::{rdf, sh, xsd};

use collection::{read_list, read_path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReaderError {
    #[error("property shape {shape} has no sh:path")]
    MissingPath { shape: Term },
    #[error("shape {shape} has more than one sh:path")]
    MultiplePaths { shape: Term },
    #[error("sh:path of {shape} is a literal")]
    LiteralPath { shape: Term },
    #[error("invalid path on {shape}: {message}")]
    InvalidPath { shape: Term, message: String },
    #[error("unsupported predicate {predicate} on shape {shape}")]
    UnsupportedPredicate { shape: Term, predicate: Term },
    #[error("{predicate} is not supported on node shape {shape}")]
    NotOnNodeShape { shape: Term, predicate: Term },
    #[error("sh:qualifiedValueShape on {shape} without sh:qualifiedMinCount or sh:qualifiedMaxCount")]
    QualifiedWithoutCount { shape: Term },
    #[error("qualified count on {shape} without sh:qualifiedValueShape")]
    CountWithoutQualifiedShape { shape: Term },
    #[error("malformed collection at {node}: {message}")]
    MalformedCollection { node: Term, message: String },
    #[error("invalid value {value} for {predicate} on {shape}: expected {expected}")]
    InvalidValue {
        shape: Term,
        predicate: Term,
        value: Term,
        expected: &'static str,
    },
    #[error(transparent)]
    Ast(#[from] AstError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReaderOptions {
    /// Record unknown `sh:` predicates as warnings instead of failing.
    pub allow_unknown: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOutcome {
    pub document: Document,
    pub warnings: Vec<String>,
}

/// Predicates understood on a shape node.
const SUPPORTED: &[&str] = &[
    sh::TARGET_NODE,
    sh::TARGET_CLASS,
    sh::TARGET_SUBJECTS_OF,
    sh::TARGET_OBJECTS_OF,
    sh::PATH,
    sh::MIN_COUNT,
    sh::MAX_COUNT,
    sh::QUALIFIED_VALUE_SHAPE,
    sh::QUALIFIED_MIN_COUNT,
    sh::QUALIFIED_MAX_COUNT,
    sh::CLASS,
    sh::DATATYPE,
    sh::NODE_KIND,
    sh::MIN_LENGTH,
    sh::MAX_LENGTH,
    sh::PATTERN,
    sh::FLAGS,
    sh::HAS_VALUE,
    sh::IN,
    sh::NODE,
    sh::NOT,
    sh::AND,
    sh::OR,
    sh::PROPERTY,
    sh::EQUALS,
    sh::DISJOINT,
    sh::LESS_THAN,
    sh::LESS_THAN_OR_EQUALS,
    sh::CLOSED,
    sh::IGNORED_PROPERTIES,
];

/// Predicates whose objects are shapes.
const SHAPE_VALUED: &[&str] = &[sh::NODE, sh::NOT, sh::PROPERTY, sh::QUALIFIED_VALUE_SHAPE];

/// Predicates whose objects are lists of shapes.
const SHAPE_LISTS: &[&str] = &[sh::AND, sh::OR];

const TARGETS: &[&str] = &[
    sh::TARGET_NODE,
    sh::TARGET_CLASS,
    sh::TARGET_SUBJECTS_OF,
    sh::TARGET_OBJECTS_OF,
];

/// Predicates read on path nodes rather than on shapes.
const PATH_OPERATORS: &[&str] = &[
    sh::INVERSE_PATH,
    sh::ALTERNATIVE_PATH,
    sh::ZERO_OR_MORE_PATH,
    sh::ONE_OR_MORE_PATH,
    sh::ZERO_OR_ONE_PATH,
];

fn is_supported(predicate: &str) -> bool {
    SUPPORTED.contains(&predicate) || sh::ANNOTATIONS.contains(&predicate)
}

pub fn read_document(shapes: &Graph) -> Result<Document, ReaderError> {
    Ok(read_document_with(shapes, &ReaderOptions::default())?.document)
}

pub fn read_document_with(shapes: &Graph, options: &ReaderOptions) -> Result<ReadOutcome, ReaderError> {
    let names = discover(shapes)?;
    let mut warnings = Vec::new();
    let mut out = Vec::with_capacity(names.len());
    for name in &names {
        for p in shapes.predicates_of(name) {
            let Some(iri) = p.as_iri() else { continue };
            if iri.starts_with(sh::NS) && !is_supported(iri) {
                if options.allow_unknown {
                    warnings.push(format!("ignored unsupported predicate {p} on shape {name}"));
                } else {
                    return Err(ReaderError::UnsupportedPredicate {
                        shape: name.clone(),
                        predicate: p.clone(),
                    });
                }
            }
        }
        let reader = ShapeReader {
            g: shapes,
            node: name,
        };
        out.push(Shape {
            name: ShapeName(name.clone()),
            targets: reader.targets()?,
            constraint: reader.constraint()?,
        });
    }
    inline_anonymous(&mut out);
    Ok(ReadOutcome {
        document: Document::new(out)?,
        warnings,
    })
}

/// Every `sh:`-namespace predicate in the graph, flagged supported or not.
pub fn vocabulary_report(shapes: &Graph) -> Vec<(Term, bool)> {
    shapes
        .predicates()
        .filter_map(|p| {
            let iri = p.as_iri()?;
            let supported = is_supported(iri) || PATH_OPERATORS.contains(&iri);
            iri.starts_with(sh::NS).then(|| (p.clone(), supported))
        })
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .collect()
}

/// Shape nodes: typed shapes, subjects of targets or `sh:path`, and every
/// term used where a shape is expected.
fn discover(g: &Graph) -> Result<BTreeSet<Term>, ReaderError> {
    let mut names = BTreeSet::new();
    let ty = Term::iri(rdf::TYPE);
    for class in [sh::NODE_SHAPE, sh::PROPERTY_SHAPE] {
        names.extend(g.subjects(&ty, &Term::iri(class)).iter().cloned());
    }
    for p in TARGETS.iter().chain([sh::PATH].iter()) {
        names.extend(g.subjects_with(&Term::iri(*p)).iter().cloned());
    }
    for p in SHAPE_VALUED {
        names.extend(g.objects_with(&Term::iri(*p)).iter().cloned());
    }
    for p in SHAPE_LISTS {
        for head in g.objects_with(&Term::iri(*p)) {
            names.extend(read_list(g, head)?);
        }
    }
    if let Some(lit) = names.iter().find(|t| t.is_literal()) {
        return Err(ReaderError::InvalidValue {
            shape: lit.clone(),
            predicate: Term::iri(sh::NODE),
            value: lit.clone(),
            expected: "an IRI or blank node shape",
        });
    }
    Ok(names)
}

struct ShapeReader<'a> {
    g: &'a Graph,
    node: &'a Term,
}

impl ShapeReader<'_> {
    fn values(&self, predicate: &str) -> &BTreeSet<Term> {
        self.g.objects(self.node, &Term::iri(predicate))
    }

    fn invalid(&self, predicate: &str, value: &Term, expected: &'static str) -> ReaderError {
        ReaderError::InvalidValue {
            shape: self.node.clone(),
            predicate: Term::iri(predicate),
            value: value.clone(),
            expected,
        }
    }

    fn count(&self, predicate: &str, value: &Term) -> Result<usize, ReaderError> {
        value
            .as_literal()
            .filter(|l| l.datatype() == xsd::INTEGER)
            .and_then(|l| l.lexical().trim_start_matches('+').parse::<usize>().ok())
            .ok_or_else(|| self.invalid(predicate, value, "a non-negative integer"))
    }

    fn at_most_one(&self, predicate: &str) -> Result<Option<&Term>, ReaderError> {
        let values = self.values(predicate);
        match values.len() {
            0 => Ok(None),
            1 => Ok(values.iter().next()),
            _ => Err(self.invalid(predicate, values.iter().nth(1).unwrap(), "a single value")),
        }
    }

    fn targets(&self) -> Result<BTreeSet<TargetDecl>, ReaderError> {
        let mut out = BTreeSet::new();
        for t in self.values(sh::TARGET_NODE) {
            out.insert(TargetDecl::Node(t.clone()));
        }
        for t in self.values(sh::TARGET_CLASS) {
            out.insert(TargetDecl::Class(t.clone()));
        }
        for t in self.values(sh::TARGET_SUBJECTS_OF) {
            out.insert(TargetDecl::SubjectsOf(t.clone()));
        }
        for t in self.values(sh::TARGET_OBJECTS_OF) {
            out.insert(TargetDecl::ObjectsOf(t.clone()));
        }
        Ok(out)
    }

    fn path(&self) -> Result<Option<Path>, ReaderError> {
        let values = self.values(sh::PATH);
        if values.len() > 1 {
            return Err(ReaderError::MultiplePaths {
                shape: self.node.clone(),
            });
        }
        let typed_property = self
            .g
            .objects(self.node, &Term::iri(rdf::TYPE))
            .contains(&Term::iri(sh::PROPERTY_SHAPE));
        match values.iter().next() {
            Some(v) => Ok(Some(read_path(self.g, self.node, v)?)),
            None if typed_property => Err(ReaderError::MissingPath {
                shape: self.node.clone(),
            }),
            None => Ok(None),
        }
    }

    fn constraint(&self) -> Result<Constraint, ReaderError> {
        let path = self.path()?;
        let mut parts = Vec::new();

        // Cardinalities apply to the path directly.
        let counts = [
            sh::MIN_COUNT,
            sh::MAX_COUNT,
            sh::QUALIFIED_MIN_COUNT,
            sh::QUALIFIED_MAX_COUNT,
        ];
        if path.is_none() {
            if let Some(p) = counts.iter().find(|p| !self.values(p).is_empty()) {
                return Err(self.not_on_node_shape(p));
            }
        }
        if let Some(q) = &path {
            for v in self.values(sh::MIN_COUNT) {
                let n = self.count(sh::MIN_COUNT, v)?;
                if n > 0 {
                    parts.push(Constraint::at_least(n, q.clone(), Constraint::True)?);
                }
            }
            for v in self.values(sh::MAX_COUNT) {
                let k = self.count(sh::MAX_COUNT, v)?;
                parts.push(Constraint::at_most(k, q.clone(), Constraint::True));
            }
            parts.extend(self.qualified(q)?);
        } else if !self.values(sh::QUALIFIED_VALUE_SHAPE).is_empty() {
            return Err(self.not_on_node_shape(sh::QUALIFIED_VALUE_SHAPE));
        }

        // Value-level components: conditions on each value node.
        let mut value_level = Vec::new();
        for c in self.values(sh::CLASS) {
            value_level.push(has_class(c));
        }
        for d in self.values(sh::DATATYPE) {
            if !d.is_iri() {
                return Err(self.invalid(sh::DATATYPE, d, "an IRI"));
            }
            value_level.push(Constraint::Filter(FilterKind::Datatype(d.clone())));
        }
        for k in self.values(sh::NODE_KIND) {
            value_level.push(self.node_kind(k)?);
        }
        for v in self.values(sh::MIN_LENGTH) {
            value_level.push(Constraint::Filter(FilterKind::MinLength(
                self.count(sh::MIN_LENGTH, v)?,
            )));
        }
        for v in self.values(sh::MAX_LENGTH) {
            value_level.push(Constraint::Filter(FilterKind::MaxLength(
                self.count(sh::MAX_LENGTH, v)?,
            )));
        }
        value_level.extend(self.patterns()?);
        for list in self.values(sh::IN) {
            let members = read_list(self.g, list)?;
            value_level.push(Constraint::Filter(FilterKind::In(members.into_iter().collect())));
        }
        // hasValue is existential on a property shape
        let has_values: Vec<Constraint> = self
            .values(sh::HAS_VALUE)
            .iter()
            .map(|v| Constraint::HasValue(v.clone()))
            .collect();
        let mut shape_level = Vec::new();
        for s in self.values(sh::NODE) {
            shape_level.push(Constraint::Ref(ShapeName(s.clone())));
        }
        for s in self.values(sh::NOT) {
            shape_level.push(Constraint::not(Constraint::Ref(ShapeName(s.clone()))));
        }
        for list in self.values(sh::AND) {
            let members = read_list(self.g, list)?;
            shape_level.push(Constraint::conjunction(
                members.into_iter().map(|m| Constraint::Ref(ShapeName(m))),
            ));
        }
        for list in self.values(sh::OR) {
            let members = read_list(self.g, list)?;
            shape_level.push(Constraint::disjunction(
                members.into_iter().map(|m| Constraint::Ref(ShapeName(m))),
            ));
        }
        for s in self.values(sh::PROPERTY) {
            shape_level.push(Constraint::Ref(ShapeName(s.clone())));
        }

        match &path {
            Some(q) => {
                parts.extend(value_level.into_iter().map(|c| Constraint::all(q.clone(), c)));
                for hv in has_values {
                    parts.push(Constraint::at_least(1, q.clone(), hv)?);
                }
                parts.extend(shape_level.into_iter().map(|c| Constraint::all(q.clone(), c)));
            }
            None => {
                parts.extend(value_level);
                parts.extend(has_values);
                parts.extend(shape_level);
            }
        }

        // Pair components compare the path against a predicate.
        let pairs = [
            (sh::EQUALS, None),
            (sh::DISJOINT, None),
            (sh::LESS_THAN, Some(Comparison::Less)),
            (sh::LESS_THAN_OR_EQUALS, Some(Comparison::LessOrEqual)),
        ];
        for (pred, comparison) in pairs {
            let values = self.values(pred);
            if values.is_empty() {
                continue;
            }
            let Some(q) = &path else {
                return Err(self.not_on_node_shape(pred));
            };
            for v in values {
                if !v.is_iri() {
                    return Err(self.invalid(pred, v, "a predicate IRI"));
                }
                let (path, predicate) = (q.clone(), v.clone());
                parts.push(match (pred, comparison) {
                    (sh::EQUALS, _) => Constraint::Equals { path, predicate },
                    (sh::DISJOINT, _) => Constraint::Disjoint { path, predicate },
                    (_, Some(comparison)) => Constraint::Order {
                        path,
                        predicate,
                        comparison,
                    },
                    _ => unreachable!("pair components carry a comparison"),
                });
            }
        }

        if let Some(closed) = self.closed()? {
            if path.is_some() {
                return Err(ReaderError::NotOnNodeShape {
                    shape: self.node.clone(),
                    predicate: Term::iri(sh::CLOSED),
                });
            }
            parts.push(closed);
        }
        Ok(Constraint::conjunction(parts))
    }

    fn not_on_node_shape(&self, predicate: &str) -> ReaderError {
        ReaderError::NotOnNodeShape {
            shape: self.node.clone(),
            predicate: Term::iri(predicate),
        }
    }

    fn qualified(&self, q: &Path) -> Result<Vec<Constraint>, ReaderError> {
        let shapes = self.values(sh::QUALIFIED_VALUE_SHAPE);
        let mins = self.values(sh::QUALIFIED_MIN_COUNT);
        let maxs = self.values(sh::QUALIFIED_MAX_COUNT);
        if shapes.is_empty() {
            if !mins.is_empty() || !maxs.is_empty() {
                return Err(ReaderError::CountWithoutQualifiedShape {
                    shape: self.node.clone(),
                });
            }
            return Ok(Vec::new());
        }
        if mins.is_empty() && maxs.is_empty() {
            return Err(ReaderError::QualifiedWithoutCount {
                shape: self.node.clone(),
            });
        }
        let mut out = Vec::new();
        for s in shapes {
            let inner = Constraint::Ref(ShapeName(s.clone()));
            for v in mins {
                let n = self.count(sh::QUALIFIED_MIN_COUNT, v)?;
                if n > 0 {
                    out.push(Constraint::at_least(n, q.clone(), inner.clone())?);
                }
            }
            for v in maxs {
                let k = self.count(sh::QUALIFIED_MAX_COUNT, v)?;
                out.push(Constraint::at_most(k, q.clone(), inner.clone()));
            }
        }
        Ok(out)
    }

    fn node_kind(&self, kind: &Term) -> Result<Constraint, ReaderError> {
        use FilterKind::{NodeKindBlank as B, NodeKindIri as I, NodeKindLiteral as L};
        let kinds: &[FilterKind] = match kind.as_iri() {
            Some(sh::IRI) => &[I],
            Some(sh::BLANK_NODE) => &[B],
            Some(sh::LITERAL) => &[L],
            Some(sh::BLANK_NODE_OR_IRI) => &[B, I],
            Some(sh::BLANK_NODE_OR_LITERAL) => &[B, L],
            Some(sh::IRI_OR_LITERAL) => &[I, L],
            _ => return Err(self.invalid(sh::NODE_KIND, kind, "a SHACL node kind")),
        };
        Ok(match kinds {
            [single] => Constraint::Filter(single.clone()),
            _ => Constraint::disjunction(kinds.iter().cloned().map(Constraint::Filter)),
        })
    }

    fn patterns(&self) -> Result<Vec<Constraint>, ReaderError> {
        let flags = match self.at_most_one(sh::FLAGS)? {
            Some(f) => match f.as_literal() {
                Some(l) => l.lexical().to_string(),
                None => return Err(self.invalid(sh::FLAGS, f, "a string")),
            },
            None => String::new(),
        };
        let mut out = Vec::new();
        for v in self.values(sh::PATTERN) {
            let Some(source) = v.as_literal() else {
                return Err(self.invalid(sh::PATTERN, v, "a string"));
            };
            let pattern = Pattern::new(source.lexical(), &flags)?;
            out.push(Constraint::Filter(FilterKind::Pattern(pattern)));
        }
        Ok(out)
    }

    fn closed(&self) -> Result<Option<Constraint>, ReaderError> {
        let Some(flag) = self.at_most_one(sh::CLOSED)? else {
            return Ok(None);
        };
        let on = match flag.as_literal() {
            Some(l) if l.datatype() == xsd::BOOLEAN => l.lexical() == "true" || l.lexical() == "1",
            _ => return Err(self.invalid(sh::CLOSED, flag, "a boolean")),
        };
        if !on {
            return Ok(None);
        }
        let mut allowed = BTreeSet::new();
        for prop in self.values(sh::PROPERTY) {
            let sibling = self.g.objects(prop, &Term::iri(sh::PATH));
            allowed.extend(sibling.iter().filter(|p| p.is_iri()).cloned());
        }
        for list in self.values(sh::IGNORED_PROPERTIES) {
            allowed.extend(read_list(self.g, list)?);
        }
        Ok(Some(Constraint::Closed(allowed)))
    }
}

/// `∃ rdf:type . = c`: a direct `rdf:type` edge to `c`.
fn has_class(c: &Term) -> Constraint {
    Constraint::AtLeast {
        count: std::num::NonZeroUsize::MIN,
        path: Path::Predicate(Term::iri(rdf::TYPE)),
        inner: Box::new(Constraint::HasValue(c.clone())),
    }
}

/// Replaces each reference to a target-free blank-node shape that is
/// referenced exactly once (and not from itself) by its constraint, and
/// drops the shape.
fn inline_anonymous(shapes: &mut Vec<Shape>) {
    loop {
        let mut uses: BTreeMap<ShapeName, usize> = BTreeMap::new();
        for s in shapes.iter() {
            count_refs(&s.constraint, &mut uses);
        }
        let candidate = shapes.iter().position(|s| {
            s.name.0.is_blank()
                && s.targets.is_empty()
                && uses.get(&s.name) == Some(&1)
                && !s.constraint.direct_refs().contains(&s.name)
        });
        let Some(i) = candidate else { return };
        let inlined = shapes.remove(i);
        for s in shapes.iter_mut() {
            substitute(&mut s.constraint, &inlined.name, &inlined.constraint);
        }
    }
}

fn count_refs(c: &Constraint, out: &mut BTreeMap<ShapeName, usize>) {
    match c {
        Constraint::Ref(s) => *out.entry(s.clone()).or_default() += 1,
        Constraint::Not(inner) | Constraint::AtLeast { inner, .. } => count_refs(inner, out),
        Constraint::And(a, b) => {
            count_refs(a, out);
            count_refs(b, out);
        }
        _ => {}
    }
}

fn substitute(c: &mut Constraint, name: &ShapeName, body: &Constraint) {
    match c {
        Constraint::Ref(s) if s == name => *c = body.clone(),
        Constraint::Not(inner) | Constraint::AtLeast { inner, .. } => substitute(inner, name, body),
        Constraint::And(a, b) => {
            substitute(a, name, body);
            substitute(b, name, body);
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests;
