//! Translation of documents into SCL sentences.
//!
//! A document becomes a conjunction of target axioms, one per target
//! declaration, and constraint axioms `∀x. Σs(x) ↔ ψ(x)`, one per shape.
//! `Closed` has no production in the core grammar and is carried as
//! [`SclFormula::Closed`], rendered with a reified `triple` atom.

mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use crate::ast::{
    Comparison, Constraint, Document, FilterKind, Fragment, FragmentLetter, Path, ShapeName, TargetDecl,
};
use crate::rdf::Term;

pub use render::{render, render_axiom, render_formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetForm {
    /// `Σs(c)`
    Node,
    /// `∀x. isA(x, c) → Σs(x)`
    Class,
    /// `∀x, y. R(x, y) → Σs(x)`
    SubjectsOf,
    /// `∀x, y. R⁻(x, y) → Σs(x)`
    ObjectsOf,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SclAxiom {
    Target {
        form: TargetForm,
        shape: ShapeName,
        param: Term,
    },
    /// `∀x. Σshape(x) ↔ body(x)`
    Constraint { shape: ShapeName, body: SclFormula },
}

/// Formulas with one free variable, the focus node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SclFormula {
    Top,
    Neg(Box<SclFormula>),
    Conj(Box<SclFormula>, Box<SclFormula>),
    /// `x = c`
    EqConst(Term),
    Filter(FilterKind),
    Shape(ShapeName),
    /// `∃y. π(x, y) ∧ body(y)`
    Exists {
        path: SclPath,
        body: Box<SclFormula>,
    },
    /// `∃≥n y. π(x, y) ∧ body(y)` with `n ≥ 2`
    CountGeq {
        count: NonZeroUsize,
        path: SclPath,
        body: Box<SclFormula>,
    },
    /// `¬∃y. π(x, y) ∧ R(x, y)`
    Disjoint {
        path: SclPath,
        relation: Term,
    },
    /// `∀y. π(x, y) ↔ R(x, y)`
    Equals {
        path: SclPath,
        relation: Term,
    },
    /// `∀y, z. π(x, y) ∧ R(x, z) → y ς z`
    OrderAll {
        path: SclPath,
        relation: Term,
        comparison: Comparison,
    },
    /// `∀y, p. triple(x, p, y) → p ∈ allowed`
    Closed(BTreeSet<Term>),
}

/// Binary path formulas `π(x, y)`. Inverses sit on relations only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SclPath {
    Rel {
        relation: Term,
        inverse: bool,
    },
    /// `∃z. π₁(x, z) ∧ π₂(z, y)`
    Seq(Box<SclPath>, Box<SclPath>),
    /// `x = y ∨ π(x, y)`
    ZeroOrOne(Box<SclPath>),
    Alt(Box<SclPath>, Box<SclPath>),
    /// `(π(x, y))*`
    Star(Box<SclPath>),
    /// `∃z. π(x, z) ∧ (π(z, y))*`
    Plus(Box<SclPath>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SclSentence {
    pub conjuncts: Vec<SclAxiom>,
}

impl SclSentence {
    pub fn constraint_axiom(&self, shape: &ShapeName) -> Option<&SclFormula> {
        self.conjuncts.iter().find_map(|a| match a {
            SclAxiom::Constraint { shape: s, body } if s == shape => Some(body),
            _ => None,
        })
    }

    pub fn target_axioms(&self) -> impl Iterator<Item = (TargetForm, &ShapeName, &Term)> + '_ {
        self.conjuncts.iter().filter_map(|a| match a {
            SclAxiom::Target { form, shape, param } => Some((*form, shape, param)),
            SclAxiom::Constraint { .. } => None,
        })
    }
}

/// `τ(d)`: per shape in name order, its target axioms then its constraint
/// axiom.
pub fn translate(d: &Document) -> SclSentence {
    let mut conjuncts = Vec::new();
    for shape in d.shapes() {
        for target in &shape.targets {
            let (form, param) = match target {
                TargetDecl::Node(c) => (TargetForm::Node, c),
                TargetDecl::Class(c) => (TargetForm::Class, c),
                TargetDecl::SubjectsOf(p) => (TargetForm::SubjectsOf, p),
                TargetDecl::ObjectsOf(p) => (TargetForm::ObjectsOf, p),
            };
            conjuncts.push(SclAxiom::Target {
                form,
                shape: shape.name.clone(),
                param: param.clone(),
            });
        }
        conjuncts.push(SclAxiom::Constraint {
            shape: shape.name.clone(),
            body: translate_constraint(&shape.constraint),
        });
    }
    SclSentence { conjuncts }
}

pub fn translate_constraint(c: &Constraint) -> SclFormula {
    match c {
        Constraint::True => SclFormula::Top,
        Constraint::Not(inner) => SclFormula::Neg(Box::new(translate_constraint(inner))),
        Constraint::And(a, b) => SclFormula::Conj(
            Box::new(translate_constraint(a)),
            Box::new(translate_constraint(b)),
        ),
        Constraint::HasValue(t) => SclFormula::EqConst(t.clone()),
        Constraint::Filter(f) => SclFormula::Filter(f.clone()),
        Constraint::Ref(s) => SclFormula::Shape(s.clone()),
        Constraint::AtLeast { count, path, inner } => {
            let path = translate_path(path, false);
            let body = Box::new(translate_constraint(inner));
            if count.get() == 1 {
                SclFormula::Exists { path, body }
            } else {
                SclFormula::CountGeq {
                    count: *count,
                    path,
                    body,
                }
            }
        }
        Constraint::Equals { path, predicate } => SclFormula::Equals {
            path: translate_path(path, false),
            relation: predicate.clone(),
        },
        Constraint::Disjoint { path, predicate } => SclFormula::Disjoint {
            path: translate_path(path, false),
            relation: predicate.clone(),
        },
        Constraint::Order {
            path,
            predicate,
            comparison,
        } => SclFormula::OrderAll {
            path: translate_path(path, false),
            relation: predicate.clone(),
            comparison: *comparison,
        },
        Constraint::Closed(allowed) => SclFormula::Closed(allowed.clone()),
    }
}

/// Translates `path`, or its inverse when `inverted`, pushing inverses
/// down to relations.
pub fn translate_path(path: &Path, inverted: bool) -> SclPath {
    let rec = |q: &Path| Box::new(translate_path(q, inverted));
    match path {
        Path::Predicate(p) => SclPath::Rel {
            relation: p.clone(),
            inverse: inverted,
        },
        Path::Inverse(q) => translate_path(q, !inverted),
        Path::Sequence(a, b) if inverted => SclPath::Seq(rec(b), rec(a)),
        Path::Sequence(a, b) => SclPath::Seq(rec(a), rec(b)),
        Path::Alternative(a, b) => SclPath::Alt(rec(a), rec(b)),
        Path::ZeroOrOne(q) => SclPath::ZeroOrOne(rec(q)),
        Path::ZeroOrMore(q) => SclPath::Star(rec(q)),
        Path::OneOrMore(q) => SclPath::Plus(rec(q)),
    }
}

/// Every shape relation that occurs anywhere has exactly one constraint
/// axiom.
pub fn well_formed(s: &SclSentence) -> bool {
    let mut defined: BTreeMap<&ShapeName, usize> = BTreeMap::new();
    let mut used = BTreeSet::new();
    for axiom in &s.conjuncts {
        match axiom {
            SclAxiom::Target { shape, .. } => {
                used.insert(shape.clone());
            }
            SclAxiom::Constraint { shape, body } => {
                *defined.entry(shape).or_default() += 1;
                shape_atoms(body, &mut used);
            }
        }
    }
    defined.values().all(|&n| n == 1) && used.iter().all(|s| defined.contains_key(s))
}

fn shape_atoms(f: &SclFormula, out: &mut BTreeSet<ShapeName>) {
    match f {
        SclFormula::Shape(s) => {
            out.insert(s.clone());
        }
        SclFormula::Neg(inner)
        | SclFormula::Exists { body: inner, .. }
        | SclFormula::CountGeq { body: inner, .. } => shape_atoms(inner, out),
        SclFormula::Conj(a, b) => {
            shape_atoms(a, out);
            shape_atoms(b, out);
        }
        _ => {}
    }
}

/// Feature letters used by the sentence.
pub fn fragment_of(s: &SclSentence) -> Fragment {
    let mut out = Fragment::default();
    for axiom in &s.conjuncts {
        if let SclAxiom::Constraint { body, .. } = axiom {
            formula_letters(body, &mut out);
        }
    }
    out
}

fn formula_letters(f: &SclFormula, out: &mut Fragment) {
    match f {
        SclFormula::Top
        | SclFormula::EqConst(_)
        | SclFormula::Filter(_)
        | SclFormula::Shape(_)
        | SclFormula::Closed(_) => {}
        SclFormula::Neg(inner) => formula_letters(inner, out),
        SclFormula::Conj(a, b) => {
            formula_letters(a, out);
            formula_letters(b, out);
        }
        SclFormula::Exists { path, body } => {
            path_letters(path, out);
            formula_letters(body, out);
        }
        SclFormula::CountGeq { count, path, body } => {
            if count.get() != 1 {
                out.insert(FragmentLetter::C);
            }
            path_letters(path, out);
            formula_letters(body, out);
        }
        SclFormula::Disjoint { path, .. } => {
            out.insert(FragmentLetter::D);
            path_letters(path, out);
        }
        SclFormula::Equals { path, .. } => {
            out.insert(FragmentLetter::E);
            path_letters(path, out);
        }
        SclFormula::OrderAll { path, .. } => {
            out.insert(FragmentLetter::O);
            path_letters(path, out);
        }
    }
}

fn path_letters(p: &SclPath, out: &mut Fragment) {
    match p {
        SclPath::Rel { .. } => {}
        SclPath::Seq(a, b) => {
            out.insert(FragmentLetter::S);
            path_letters(a, out);
            path_letters(b, out);
        }
        SclPath::Alt(a, b) => {
            out.insert(FragmentLetter::A);
            path_letters(a, out);
            path_letters(b, out);
        }
        SclPath::ZeroOrOne(q) => {
            out.insert(FragmentLetter::Z);
            path_letters(q, out);
        }
        SclPath::Star(q) | SclPath::Plus(q) => {
            out.insert(FragmentLetter::T);
            path_letters(q, out);
        }
    }
}

#[cfg(test)]
mod tests;
