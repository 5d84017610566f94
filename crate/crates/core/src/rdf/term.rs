use std::fmt;
use std::sync::Arc;

use crate::vocab::xsd;

/// A generalized RDF term. Any variant may occupy any triple position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Arc<str>),
    BlankNode(Arc<str>),
    Literal(Literal),
}

/// A literal always carries a datatype; plain strings use `xsd:string`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Arc<str>,
}

impl Literal {
    pub fn new(lexical: impl Into<Arc<str>>, datatype: impl Into<Arc<str>>) -> Self {
        let datatype = datatype.into();
        assert!(!datatype.is_empty(), "literal datatype IRI must be non-empty");
        Literal {
            lexical: lexical.into(),
            datatype,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }
}

impl Term {
    /// Panics on an empty IRI; parsers reject those before constructing terms.
    pub fn iri(value: impl Into<Arc<str>>) -> Self {
        let value = value.into();
        assert!(!value.is_empty(), "IRI must be non-empty");
        Term::Iri(value)
    }

    pub fn blank(label: impl Into<Arc<str>>) -> Self {
        let label = label.into();
        assert!(!label.is_empty(), "blank node label must be non-empty");
        Term::BlankNode(label)
    }

    pub fn literal(lexical: impl Into<Arc<str>>, datatype: impl Into<Arc<str>>) -> Self {
        Term::Literal(Literal::new(lexical, datatype))
    }

    pub fn string(lexical: impl Into<Arc<str>>) -> Self {
        Term::literal(lexical, xsd::STRING)
    }

    pub fn integer(value: i64) -> Self {
        Term::literal(value.to_string(), xsd::INTEGER)
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    /// The string used by length and pattern filters: the lexical form of a
    /// literal, the IRI string of an IRI, the label of a blank node.
    pub fn lexical_form(&self) -> &str {
        match self {
            Term::Iri(iri) => iri,
            Term::BlankNode(label) => label,
            Term::Literal(lit) => lit.lexical(),
        }
    }
}

/// N-Triples rendering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                f.write_str("\"")?;
                for c in lit.lexical().chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        '\r' => f.write_str("\\r")?,
                        '\t' => f.write_str("\\t")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")?;
                if lit.datatype() != xsd::STRING {
                    write!(f, "^^<{}>", lit.datatype())?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
