//! Validation of RDF graphs against SHACL documents, including recursive
//! documents under brave and cautious semantics, and translation of
//! documents into SCL sentences.

pub mod ast;
pub mod eval;
pub mod rdf;
pub mod reader;
pub mod scl;
pub mod semantics;
#[cfg(feature = "testkit")]
pub mod testkit;
pub mod vocab;

pub use ast::{
    AstError, Comparison, Constraint, Document, FilterKind, Fragment, FragmentLetter, Path, Pattern, Shape,
    ShapeName, TargetDecl,
};
pub use eval::{Assignment, NodeUniverse, Sign, TruthValue};
pub use rdf::{Graph, Literal, ParseError, Term, Triple};
pub use reader::{read_document, read_document_with, vocabulary_report, ReaderError, ReaderOptions};
pub use scl::{render, translate, well_formed, SclAxiom, SclFormula, SclPath, SclSentence, TargetForm};
pub use semantics::{
    brute_force_validate, monotone_extension_check, validate, validate_standard, SemanticsMode,
    ValidationError, ValidationResult, Violation,
};
