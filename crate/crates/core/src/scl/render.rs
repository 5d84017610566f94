//! ASCII rendering of SCL sentences.
//!
//! Shape atoms print as `S_<name>(x)`, relations as `R_<iri>(x, y)` with a
//! `^` suffix for inverses, filters as `F_<kind>[_<arg>](x)`. Every compound
//! subformula is parenthesised; an axiom's top-level body is not.

use super::{SclAxiom, SclFormula, SclPath, SclSentence, TargetForm};
use crate::ast::{FilterKind, ShapeName};
use crate::rdf::Term;

/// One axiom per line, joined by `&`; `true` for the empty sentence.
pub fn render(s: &SclSentence) -> String {
    if s.conjuncts.is_empty() {
        return "true\n".to_string();
    }
    let lines: Vec<String> = s
        .conjuncts
        .iter()
        .map(|a| format!("({})", render_axiom(a)))
        .collect();
    format!("{}\n", lines.join("\n& "))
}

pub fn render_axiom(a: &SclAxiom) -> String {
    match a {
        SclAxiom::Target { form, shape, param } => match form {
            TargetForm::Node => shape_atom(shape, &param.to_string()),
            TargetForm::Class => format!("forall x . isA(x, {param}) -> {}", shape_atom(shape, "x")),
            TargetForm::SubjectsOf => {
                format!(
                    "forall x, y . {} -> {}",
                    relation(param, false, "x", "y"),
                    shape_atom(shape, "x")
                )
            }
            TargetForm::ObjectsOf => {
                format!(
                    "forall x, y . {} -> {}",
                    relation(param, true, "x", "y"),
                    shape_atom(shape, "x")
                )
            }
        },
        SclAxiom::Constraint { shape, body } => format!(
            "forall x . {} <-> {}",
            shape_atom(shape, "x"),
            unwrap(render_formula(body, "x"))
        ),
    }
}

/// Renders `f` with free variable `var`.
pub fn render_formula(f: &SclFormula, var: &str) -> String {
    Renderer::default().formula(f, var)
}

fn shape_atom(s: &ShapeName, arg: &str) -> String {
    format!("S_{}({arg})", s.0)
}

fn relation(p: &Term, inverse: bool, a: &str, b: &str) -> String {
    format!("R_{p}{}({a}, {b})", if inverse { "^" } else { "" })
}

/// Drops one pair of enclosing parentheses when they span the whole text.
fn unwrap(text: String) -> String {
    if !(text.starts_with('(') && text.ends_with(')')) {
        return text;
    }
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < text.len() {
                    return text;
                }
            }
            _ => {}
        }
    }
    text[1..text.len() - 1].to_string()
}

fn filter_atom(f: &FilterKind, var: &str) -> String {
    let name = match f {
        FilterKind::NodeKindIri => "isIRI".to_string(),
        FilterKind::NodeKindBlank => "isBlank".to_string(),
        FilterKind::NodeKindLiteral => "isLiteral".to_string(),
        FilterKind::Datatype(d) => format!("datatype_{d}"),
        FilterKind::MinLength(k) => format!("minLength_{k}"),
        FilterKind::MaxLength(k) => format!("maxLength_{k}"),
        FilterKind::Pattern(p) if p.flags().is_empty() => format!("pattern_{:?}", p.source()),
        FilterKind::Pattern(p) => format!("pattern_{:?}_{}", p.source(), p.flags()),
        FilterKind::In(set) => {
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            format!("in_[{}]", items.join(" "))
        }
    };
    format!("F_{name}({var})")
}

/// Hands out bound variable names `y, z, w, y1, z1, w1, …`.
#[derive(Default)]
struct Renderer {
    next: usize,
}

impl Renderer {
    fn fresh(&mut self) -> String {
        const BASE: [&str; 3] = ["y", "z", "w"];
        let (round, i) = (self.next / BASE.len(), self.next % BASE.len());
        self.next += 1;
        if round == 0 {
            BASE[i].to_string()
        } else {
            format!("{}{round}", BASE[i])
        }
    }

    fn formula(&mut self, f: &SclFormula, x: &str) -> String {
        match f {
            SclFormula::Top => "true".to_string(),
            SclFormula::Neg(inner) => format!("!{}", self.formula(inner, x)),
            SclFormula::Conj(a, b) => {
                format!("({} & {})", self.formula(a, x), self.formula(b, x))
            }
            SclFormula::EqConst(c) => format!("{x} = {c}"),
            SclFormula::Filter(kind) => filter_atom(kind, x),
            SclFormula::Shape(s) => shape_atom(s, x),
            SclFormula::Exists { path, body } => {
                let y = self.fresh();
                let p = self.path(path, x, &y);
                format!("(exists {y} . {p} & {})", self.formula(body, &y))
            }
            SclFormula::CountGeq { count, path, body } => {
                let y = self.fresh();
                let p = self.path(path, x, &y);
                format!("(exists>={count} {y} . {p} & {})", self.formula(body, &y))
            }
            SclFormula::Disjoint { path, relation: r } => {
                let y = self.fresh();
                let p = self.path(path, x, &y);
                format!("!(exists {y} . {p} & {})", relation(r, false, x, &y))
            }
            SclFormula::Equals { path, relation: r } => {
                let y = self.fresh();
                let p = self.path(path, x, &y);
                format!("(forall {y} . {p} <-> {})", relation(r, false, x, &y))
            }
            SclFormula::OrderAll {
                path,
                relation: r,
                comparison,
            } => {
                let y = self.fresh();
                let z = self.fresh();
                let p = self.path(path, x, &y);
                format!(
                    "(forall {y}, {z} . {p} & {} -> {y} {} {z})",
                    relation(r, false, x, &z),
                    comparison.symbol()
                )
            }
            SclFormula::Closed(allowed) => {
                let y = self.fresh();
                let options: Vec<String> = allowed.iter().map(|a| format!("p = {a}")).collect();
                let rhs = if options.is_empty() {
                    "false".to_string()
                } else {
                    format!("({})", options.join(" | "))
                };
                format!("(forall {y}, p . triple({x}, p, {y}) -> {rhs})")
            }
        }
    }

    fn path(&mut self, p: &SclPath, a: &str, b: &str) -> String {
        match p {
            SclPath::Rel { relation: r, inverse } => relation(r, *inverse, a, b),
            SclPath::Seq(first, second) => {
                let z = self.fresh();
                let left = self.path(first, a, &z);
                let right = self.path(second, &z, b);
                format!("(exists {z} . {left} & {right})")
            }
            SclPath::ZeroOrOne(q) => format!("({a} = {b} | {})", self.path(q, a, b)),
            SclPath::Alt(l, r) => format!("({} | {})", self.path(l, a, b), self.path(r, a, b)),
            SclPath::Star(q) => format!("({})*", self.path(q, a, b)),
            SclPath::Plus(q) => {
                let z = self.fresh();
                let first = self.path(q, a, &z);
                let rest = self.path(q, &z, b);
                format!("(exists {z} . {first} & ({rest})*)")
            }
        }
    }
}
