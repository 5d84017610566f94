//! Generalized RDF terms, an indexed triple set, and the N-Triples and
//! Turtle-subset parsers.

mod cursor;
mod graph;
mod ntriples;
mod term;
mod turtle;

use std::fmt;

use thiserror::Error;

pub use graph::Graph;
pub use ntriples::parse_ntriples;
pub use term::{Literal, Term, Triple};
pub use turtle::parse_turtle_subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsupportedFeature {
    LanguageTag,
    LongString,
    SingleQuotedString,
    DoubleLiteral,
    BaseIri,
}

impl fmt::Display for UnsupportedFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnsupportedFeature::LanguageTag => "language-tagged literal",
            UnsupportedFeature::LongString => "triple-quoted string",
            UnsupportedFeature::SingleQuotedString => "single-quoted string",
            UnsupportedFeature::DoubleLiteral => "double literal with exponent",
            UnsupportedFeature::BaseIri => "base IRI declaration",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unterminated literal starting at line {line}, column {column}")]
    UnterminatedLiteral { line: usize, column: usize },
    #[error("malformed IRI at line {line}, column {column}: {message}")]
    MalformedIri {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared prefix `{prefix}:` at line {line}, column {column}")]
    UndeclaredPrefix {
        line: usize,
        column: usize,
        prefix: String,
    },
    #[error("unsupported Turtle feature at line {line}, column {column}: {feature}")]
    Unsupported {
        line: usize,
        column: usize,
        feature: UnsupportedFeature,
    },
}
