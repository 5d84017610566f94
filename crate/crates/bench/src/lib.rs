//! Scalable inputs for the benchmarks in `benches/`.

use shaperec::{Constraint, Document, Graph, Path, Shape, ShapeName, TargetDecl, Term, Triple};

const EX: &str = "http://example.org/";

fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

/// `n` employees, every other one with an office number.
pub fn employees(n: usize) -> (Graph, Document) {
    let ty = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    let mut g = Graph::new();
    for i in 0..n {
        let e = ex(&format!("e{i}"));
        g.insert(Triple::new(e.clone(), ty.clone(), ex("Employee")));
        if i % 2 == 0 {
            g.insert(Triple::new(
                e,
                ex("hasOfficeNumber"),
                Term::string(format!("{}", 100 + i)),
            ));
        }
    }
    let d = Document::new([Shape::new(
        ShapeName(ex("EmployeeShape")),
        [TargetDecl::Class(ex("Employee"))],
        Constraint::at_least(
            1,
            Path::predicate(&format!("{EX}hasOfficeNumber")),
            Constraint::True,
        )
        .expect("count is positive"),
    )])
    .expect("single shape");
    (g, d)
}

/// A `:next` chain of `n` nodes and a self-referencing shape
/// `s ↔ (x = :n0 ∨ ∃ next⁻. s)`, targeting the last node.
pub fn recursive_chain(n: usize) -> (Graph, Document) {
    let mut g = Graph::new();
    for i in 1..n {
        g.insert(Triple::new(
            ex(&format!("n{}", i - 1)),
            ex("next"),
            ex(&format!("n{i}")),
        ));
    }
    let s = ShapeName(ex("ReachableShape"));
    let back = Path::predicate(&format!("{EX}next")).inverse();
    let d = Document::new([Shape::new(
        s.clone(),
        [TargetDecl::Node(ex(&format!("n{}", n.saturating_sub(1))))],
        Constraint::or(
            Constraint::HasValue(ex("n0")),
            Constraint::at_least(1, back, Constraint::Ref(s)).expect("count is positive"),
        ),
    )])
    .expect("single shape");
    (g, d)
}
