use super::*;
use crate::ast::{Pattern, Shape};
use crate::rdf::parse_turtle_subset;
use crate::reader::read_document;

fn ex(s: &str) -> Term {
    Term::iri(format!("http://example.org/{s}"))
}

fn name(s: &str) -> ShapeName {
    ShapeName(ex(s))
}

fn fixture_doc(file: &str) -> Document {
    let text =
        std::fs::read_to_string(format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    read_document(&parse_turtle_subset(&text).unwrap()).unwrap()
}

fn rel(p: &str) -> SclPath {
    SclPath::Rel {
        relation: ex(p),
        inverse: false,
    }
}

#[test]
fn fig2_translation() {
    let s = translate(&fixture_doc("fig2_shapes.ttl"));
    let expected = vec![
        SclAxiom::Target {
            form: TargetForm::Class,
            shape: name("EmployeeShapeB"),
            param: ex("Employee"),
        },
        SclAxiom::Constraint {
            shape: name("EmployeeShapeB"),
            body: SclFormula::Exists {
                path: rel("hasOfficeNumber"),
                body: Box::new(SclFormula::Shape(name("OfficeNumberShape"))),
            },
        },
        SclAxiom::Constraint {
            shape: name("OfficeNumberShape"),
            body: SclFormula::Filter(FilterKind::MinLength(3)),
        },
    ];
    assert_eq!(s.conjuncts, expected);
    assert!(well_formed(&s));
    assert_eq!(
        render(&s),
        "(forall x . isA(x, <http://example.org/Employee>) -> S_<http://example.org/EmployeeShapeB>(x))\n\
         & (forall x . S_<http://example.org/EmployeeShapeB>(x) <-> exists y . R_<http://example.org/hasOfficeNumber>(x, y) & S_<http://example.org/OfficeNumberShape>(y))\n\
         & (forall x . S_<http://example.org/OfficeNumberShape>(x) <-> F_minLength_3(x))\n"
    );
}

#[test]
fn target_table_rows() {
    let d = Document::new([Shape::new(
        name("s"),
        [
            TargetDecl::Node(ex("c")),
            TargetDecl::Class(ex("C")),
            TargetDecl::SubjectsOf(ex("p")),
            TargetDecl::ObjectsOf(ex("q")),
        ],
        Constraint::True,
    )])
    .unwrap();
    let s = translate(&d);
    let lines: Vec<String> = s.conjuncts.iter().map(render_axiom).collect();
    let sx = "S_<http://example.org/s>(x)";
    let mut expected = vec![
        "S_<http://example.org/s>(<http://example.org/c>)".to_string(),
        format!("forall x . isA(x, <http://example.org/C>) -> {sx}"),
        format!("forall x, y . R_<http://example.org/p>(x, y) -> {sx}"),
        format!("forall x, y . R_<http://example.org/q>^(x, y) -> {sx}"),
        format!("forall x . {sx} <-> true"),
    ];
    let mut got = lines.clone();
    got[..4].sort();
    expected[..4].sort();
    assert_eq!(got, expected);
    assert_eq!(s.target_axioms().count(), 4);
}

#[test]
fn empty_document_is_true() {
    let s = translate(&Document::empty());
    assert!(s.conjuncts.is_empty());
    assert_eq!(render(&s), "true\n");
    assert!(well_formed(&s));
}

#[test]
fn count_and_top_rendering() {
    let c = Constraint::at_least(2, Path::predicate("http://example.org/p"), Constraint::True).unwrap();
    let axiom = SclAxiom::Constraint {
        shape: name("s"),
        body: translate_constraint(&c),
    };
    assert_eq!(
        render_axiom(&axiom),
        "forall x . S_<http://example.org/s>(x) <-> exists>=2 y . R_<http://example.org/p>(x, y) & true"
    );
    assert_eq!(render_formula(&SclFormula::Top, "x"), "true");
}

#[test]
fn inverse_is_pushed_to_relations() {
    let p = Path::predicate("http://example.org/p")
        .then(Path::predicate("http://example.org/q").zero_or_more())
        .inverse();
    let expected = SclPath::Seq(
        Box::new(SclPath::Star(Box::new(SclPath::Rel {
            relation: ex("q"),
            inverse: true,
        }))),
        Box::new(SclPath::Rel {
            relation: ex("p"),
            inverse: true,
        }),
    );
    assert_eq!(translate_path(&p, false), expected);
    assert_eq!(
        translate_path(&p.clone().inverse(), false),
        translate_path(&p.clone().inverse().inverse().inverse(), false)
    );
}

#[test]
fn path_rendering() {
    let p = Path::predicate("http://example.org/p");
    let q = Path::predicate("http://example.org/q");
    let cases = [
        (
            p.clone().then(q.clone()),
            "(exists z . R_<http://example.org/p>(x, z) & R_<http://example.org/q>(z, y))",
        ),
        (
            p.clone().or(q.clone()),
            "(R_<http://example.org/p>(x, y) | R_<http://example.org/q>(x, y))",
        ),
        (
            p.clone().zero_or_one(),
            "(x = y | R_<http://example.org/p>(x, y))",
        ),
        (p.clone().zero_or_more(), "(R_<http://example.org/p>(x, y))*"),
        (
            p.clone().one_or_more(),
            "(exists z . R_<http://example.org/p>(x, z) & (R_<http://example.org/p>(z, y))*)",
        ),
    ];
    for (path, text) in cases {
        let f = translate_constraint(&Constraint::at_least(1, path, Constraint::True).unwrap());
        assert_eq!(render_formula(&f, "x"), format!("(exists y . {text} & true)"));
    }
}

#[test]
fn pair_and_closed_rendering() {
    let p = Path::predicate("http://example.org/p");
    let r = ex("r");
    let f = |c: Constraint| render_formula(&translate_constraint(&c), "x");
    assert_eq!(
        f(Constraint::Disjoint {
            path: p.clone(),
            predicate: r.clone()
        }),
        "!(exists y . R_<http://example.org/p>(x, y) & R_<http://example.org/r>(x, y))"
    );
    assert_eq!(
        f(Constraint::Equals {
            path: p.clone(),
            predicate: r.clone()
        }),
        "(forall y . R_<http://example.org/p>(x, y) <-> R_<http://example.org/r>(x, y))"
    );
    assert_eq!(
        f(Constraint::Order {
            path: p,
            predicate: r,
            comparison: Comparison::LessOrEqual
        }),
        "(forall y, z . R_<http://example.org/p>(x, y) & R_<http://example.org/r>(x, z) -> y <= z)"
    );
    assert_eq!(
        f(Constraint::Closed([ex("a"), ex("b")].into_iter().collect())),
        "(forall y, p . triple(x, p, y) -> (p = <http://example.org/a> | p = <http://example.org/b>))"
    );
    assert_eq!(
        f(Constraint::Closed(BTreeSet::new())),
        "(forall y, p . triple(x, p, y) -> false)"
    );
}

#[test]
fn filter_atoms() {
    let f = |k: FilterKind| render_formula(&SclFormula::Filter(k), "x");
    assert_eq!(f(FilterKind::NodeKindIri), "F_isIRI(x)");
    assert_eq!(f(FilterKind::NodeKindBlank), "F_isBlank(x)");
    assert_eq!(f(FilterKind::NodeKindLiteral), "F_isLiteral(x)");
    assert_eq!(f(FilterKind::MaxLength(4)), "F_maxLength_4(x)");
    assert_eq!(
        f(FilterKind::Datatype(Term::iri(
            "http://www.w3.org/2001/XMLSchema#integer"
        ))),
        "F_datatype_<http://www.w3.org/2001/XMLSchema#integer>(x)"
    );
    assert_eq!(
        f(FilterKind::Pattern(Pattern::new("^a", "").unwrap())),
        "F_pattern_\"^a\"(x)"
    );
    assert_eq!(
        f(FilterKind::Pattern(Pattern::new("^a", "i").unwrap())),
        "F_pattern_\"^a\"_i(x)"
    );
    assert_eq!(
        f(FilterKind::In([ex("a"), ex("b")].into_iter().collect())),
        "F_in_[<http://example.org/a> <http://example.org/b>](x)"
    );
}

#[test]
fn fresh_variables_do_not_collide() {
    let p = Path::predicate("http://example.org/p");
    let mut c = Constraint::True;
    for _ in 0..4 {
        c = Constraint::at_least(1, p.clone(), c).unwrap();
    }
    let text = render_formula(&translate_constraint(&c), "x");
    assert_eq!(
        text,
        "(exists y . R_<http://example.org/p>(x, y) & (exists z . R_<http://example.org/p>(y, z) & \
         (exists w . R_<http://example.org/p>(z, w) & (exists y1 . R_<http://example.org/p>(w, y1) & true))))"
    );
}

#[test]
fn well_formedness() {
    let axiom = |s: &str, body: SclFormula| SclAxiom::Constraint { shape: name(s), body };
    let twice = SclSentence {
        conjuncts: vec![axiom("s", SclFormula::Top), axiom("s", SclFormula::Top)],
    };
    assert!(!well_formed(&twice));
    let dangling = SclSentence {
        conjuncts: vec![axiom("s", SclFormula::Shape(name("t")))],
    };
    assert!(!well_formed(&dangling));
    let untargeted = SclSentence {
        conjuncts: vec![SclAxiom::Target {
            form: TargetForm::Node,
            shape: name("t"),
            param: ex("a"),
        }],
    };
    assert!(!well_formed(&untargeted));
    for file in [
        "fig1_shapes.ttl",
        "fig2_shapes.ttl",
        "vegdish_shapes.ttl",
        "inconsistent_shapes.ttl",
    ] {
        assert!(well_formed(&translate(&fixture_doc(file))), "{file}");
    }
}

#[test]
fn fragments_match_the_document() {
    let p = Path::predicate("http://example.org/p");
    let q = Path::predicate("http://example.org/q");
    let d = Document::new([
        Shape::new(
            name("a"),
            [],
            Constraint::at_least(3, p.clone().then(q.clone()), Constraint::True).unwrap(),
        ),
        Shape::new(
            name("b"),
            [],
            Constraint::Disjoint {
                path: p.clone().or(q.clone()),
                predicate: ex("r"),
            },
        ),
        Shape::new(
            name("c"),
            [],
            Constraint::Equals {
                path: p.clone().zero_or_one(),
                predicate: ex("r"),
            },
        ),
        Shape::new(
            name("d"),
            [],
            Constraint::Order {
                path: p.one_or_more(),
                predicate: ex("r"),
                comparison: Comparison::Less,
            },
        ),
    ])
    .unwrap();
    let s = translate(&d);
    assert_eq!(fragment_of(&s), d.fragment_letters());
    assert_eq!(fragment_of(&s).to_string(), "SZATDEOC");
    for file in ["fig1_shapes.ttl", "fig2_shapes.ttl", "vegdish_shapes.ttl"] {
        let d = fixture_doc(file);
        assert_eq!(fragment_of(&translate(&d)), d.fragment_letters(), "{file}");
    }
}

#[test]
fn rendering_is_deterministic() {
    let d = fixture_doc("vegdish_shapes.ttl");
    assert_eq!(render(&translate(&d)), render(&translate(&d.clone())));
}
