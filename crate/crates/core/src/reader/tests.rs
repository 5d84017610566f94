use super::*;
use crate::rdf::parse_turtle_subset;

const PREFIXES: &str = "@prefix : <http://example.org/> .
@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

fn ex(s: &str) -> Term {
    Term::iri(format!("http://example.org/{s}"))
}

fn name(s: &str) -> ShapeName {
    ShapeName(ex(s))
}

fn p(s: &str) -> Path {
    Path::predicate(&format!("http://example.org/{s}"))
}

fn read(text: &str) -> Result<Document, ReaderError> {
    read_document(&parse_turtle_subset(&format!("{PREFIXES}{text}")).unwrap())
}

fn fixture(file: &str) -> Document {
    let path = format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    read_document(&parse_turtle_subset(&text).unwrap()).unwrap()
}

#[test]
fn fig1_employee_shape() {
    let d = fixture("fig1_shapes.ttl");
    assert_eq!(d.len(), 1);
    let s = d.get(&name("EmployeeShape")).unwrap();
    assert_eq!(s.targets, BTreeSet::from([TargetDecl::Class(ex("Employee"))]));
    assert_eq!(
        s.constraint,
        Constraint::at_least(1, p("hasOfficeNumber"), Constraint::True).unwrap()
    );
}

#[test]
fn fig2_qualified_reference() {
    let d = fixture("fig2_shapes.ttl");
    assert_eq!(d.len(), 2);
    assert_eq!(
        d.get(&name("EmployeeShapeB")).unwrap().constraint,
        Constraint::at_least(
            1,
            p("hasOfficeNumber"),
            Constraint::Ref(name("OfficeNumberShape"))
        )
        .unwrap()
    );
    let office = d.get(&name("OfficeNumberShape")).unwrap();
    assert!(office.targets.is_empty());
    assert_eq!(office.constraint, Constraint::Filter(FilterKind::MinLength(3)));
}

#[test]
fn vegdish_desugaring() {
    let d = fixture("vegdish_shapes.ttl");
    assert_eq!(d.len(), 2, "anonymous qualified shape is inlined");
    let dish = d.get(&name("VegDishShape")).unwrap();
    assert_eq!(
        dish.targets,
        BTreeSet::from([TargetDecl::Node(ex("DailySpecial"))])
    );
    let expected_dish = Constraint::and(
        Constraint::at_least(1, p("hasIngredient"), Constraint::True).unwrap(),
        Constraint::not(
            Constraint::at_least(
                1,
                p("hasIngredient"),
                Constraint::not(Constraint::Ref(name("VegIngredientShape"))),
            )
            .unwrap(),
        ),
    );
    assert_eq!(dish.constraint, expected_dish);
    let expected_ingredient = Constraint::not(
        Constraint::at_least(
            1,
            p("hasIngredient").inverse(),
            Constraint::not(Constraint::Ref(name("VegDishShape"))),
        )
        .unwrap(),
    );
    assert_eq!(
        d.get(&name("VegIngredientShape")).unwrap().constraint,
        expected_ingredient
    );
}

#[test]
fn inconsistent_shape() {
    let d = fixture("inconsistent_shapes.ttl");
    let s = d.get(&name("InconsistentS")).unwrap();
    assert!(s.targets.is_empty());
    assert_eq!(
        s.constraint,
        Constraint::not(Constraint::Ref(name("InconsistentS")))
    );
}

#[test]
fn all_target_kinds() {
    let d = read(
        ":s a sh:NodeShape ; sh:targetNode :n ; sh:targetClass :C ;
            sh:targetSubjectsOf :p ; sh:targetObjectsOf :q .",
    )
    .unwrap();
    assert_eq!(
        d.get(&name("s")).unwrap().targets,
        BTreeSet::from([
            TargetDecl::Node(ex("n")),
            TargetDecl::Class(ex("C")),
            TargetDecl::SubjectsOf(ex("p")),
            TargetDecl::ObjectsOf(ex("q")),
        ])
    );
}

#[test]
fn referenced_only_shape_is_trivial() {
    let d = read(":s a sh:NodeShape ; sh:node :t .").unwrap();
    let t = d.get(&name("t")).unwrap();
    assert!(t.targets.is_empty());
    assert_eq!(t.constraint, Constraint::True);
}

#[test]
fn counts_and_value_components_on_property_shape() {
    let d = read(
        ":s sh:path :p ; sh:minCount 2 ; sh:maxCount 3 ; sh:datatype xsd:integer ;
            sh:hasValue 7 ; sh:node :t .
         :t a sh:NodeShape .",
    )
    .unwrap();
    let expected = Constraint::conjunction([
        Constraint::at_least(2, p("p"), Constraint::True).unwrap(),
        Constraint::at_most(3, p("p"), Constraint::True),
        Constraint::all(
            p("p"),
            Constraint::Filter(FilterKind::Datatype(Term::iri(xsd::INTEGER))),
        ),
        Constraint::at_least(1, p("p"), Constraint::HasValue(Term::integer(7))).unwrap(),
        Constraint::all(p("p"), Constraint::Ref(name("t"))),
    ]);
    assert_eq!(d.get(&name("s")).unwrap().constraint, expected);
}

#[test]
fn min_count_zero_is_dropped() {
    let d = read(":s sh:path :p ; sh:minCount 0 .").unwrap();
    assert_eq!(d.get(&name("s")).unwrap().constraint, Constraint::True);
}

#[test]
fn node_shape_components_are_bare() {
    let d = read(
        ":s a sh:NodeShape ; sh:class :C ; sh:nodeKind sh:IRI ; sh:hasValue :v ;
            sh:in ( :a :b ) ; sh:not :t ; sh:or ( :t :u ) ; sh:and ( ) .
         :t a sh:NodeShape . :u a sh:NodeShape .",
    )
    .unwrap();
    let class = Constraint::at_least(1, Path::predicate(rdf::TYPE), Constraint::HasValue(ex("C"))).unwrap();
    let expected = Constraint::conjunction([
        class,
        Constraint::Filter(FilterKind::NodeKindIri),
        Constraint::Filter(FilterKind::In(BTreeSet::from([ex("a"), ex("b")]))),
        Constraint::HasValue(ex("v")),
        Constraint::not(Constraint::Ref(name("t"))),
        Constraint::True,
        Constraint::or(Constraint::Ref(name("t")), Constraint::Ref(name("u"))),
    ]);
    assert_eq!(d.get(&name("s")).unwrap().constraint, expected);
}

#[test]
fn composite_node_kind_is_a_disjunction() {
    let d = read(":s a sh:NodeShape ; sh:nodeKind sh:BlankNodeOrIRI .").unwrap();
    assert_eq!(
        d.get(&name("s")).unwrap().constraint,
        Constraint::or(
            Constraint::Filter(FilterKind::NodeKindBlank),
            Constraint::Filter(FilterKind::NodeKindIri)
        )
    );
}

#[test]
fn pair_components() {
    let d = read(":s sh:path :p ; sh:equals :q ; sh:disjoint :r ; sh:lessThan :t ; sh:lessThanOrEquals :u .")
        .unwrap();
    let expected = Constraint::conjunction([
        Constraint::Equals {
            path: p("p"),
            predicate: ex("q"),
        },
        Constraint::Disjoint {
            path: p("p"),
            predicate: ex("r"),
        },
        Constraint::Order {
            path: p("p"),
            predicate: ex("t"),
            comparison: Comparison::Less,
        },
        Constraint::Order {
            path: p("p"),
            predicate: ex("u"),
            comparison: Comparison::LessOrEqual,
        },
    ]);
    assert_eq!(d.get(&name("s")).unwrap().constraint, expected);
}

#[test]
fn closed_uses_sibling_paths_and_ignored_properties() {
    let d = read(
        ":s a sh:NodeShape ; sh:closed true ; sh:ignoredProperties ( :z ) ;
            sh:property [ sh:path :a ] , [ sh:path [ sh:inversePath :b ] ] .",
    )
    .unwrap();
    let s = d.get(&name("s")).unwrap();
    let Constraint::And(_, rest) = &s.constraint else {
        panic!("expected a conjunction, got {:?}", s.constraint);
    };
    let Constraint::And(_, closed) = &**rest else {
        panic!("expected two property references");
    };
    assert_eq!(**closed, Constraint::Closed(BTreeSet::from([ex("a"), ex("z")])));
    assert!(d.contains_closed());
}

#[test]
fn closed_false_is_ignored() {
    let d = read(":s a sh:NodeShape ; sh:closed false .").unwrap();
    assert_eq!(d.get(&name("s")).unwrap().constraint, Constraint::True);
}

#[test]
fn pattern_with_flags() {
    let d = read(":s a sh:NodeShape ; sh:pattern \"^ab\" ; sh:flags \"i\" .").unwrap();
    let Constraint::Filter(FilterKind::Pattern(pat)) = &d.get(&name("s")).unwrap().constraint else {
        panic!("expected pattern filter");
    };
    assert!(pat.is_match("ABc"));
    assert_eq!(pat.flags(), "i");
}

#[test]
fn errors() {
    assert!(matches!(
        read(":s a sh:PropertyShape ; sh:minCount 1 ."),
        Err(ReaderError::MissingPath { .. })
    ));
    assert!(matches!(
        read(":s sh:path \"x\" ."),
        Err(ReaderError::LiteralPath { .. })
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:xone ( :a ) ."),
        Err(ReaderError::UnsupportedPredicate { .. })
    ));
    assert!(matches!(
        read(":s sh:path :p ; sh:qualifiedValueShape :t ."),
        Err(ReaderError::QualifiedWithoutCount { .. })
    ));
    assert!(matches!(
        read(":s sh:path :p ; sh:qualifiedMinCount 1 ."),
        Err(ReaderError::CountWithoutQualifiedShape { .. })
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:minCount 1 ."),
        Err(ReaderError::NotOnNodeShape { .. })
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:equals :p ."),
        Err(ReaderError::NotOnNodeShape { .. })
    ));
    assert!(matches!(
        read(":s sh:path :p ; sh:closed true ."),
        Err(ReaderError::NotOnNodeShape { .. })
    ));
    assert!(matches!(
        read(":s sh:path :p ; sh:minCount \"one\" ."),
        Err(ReaderError::InvalidValue { .. })
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:nodeKind :Nope ."),
        Err(ReaderError::InvalidValue { .. })
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:pattern \"(\" ."),
        Err(ReaderError::Ast(AstError::InvalidPattern { .. }))
    ));
    assert!(matches!(
        read(":s a sh:NodeShape ; sh:node \"lit\" ."),
        Err(ReaderError::InvalidValue { .. })
    ));
}

#[test]
fn unknown_predicates_downgrade_to_warnings() {
    let g = parse_turtle_subset(&format!(
        "{PREFIXES}:s a sh:NodeShape ; sh:deactivated true ; sh:minLength 2 ."
    ))
    .unwrap();
    let outcome = read_document_with(&g, &ReaderOptions { allow_unknown: true }).unwrap();
    assert_eq!(outcome.warnings.len(), 1);
    assert_eq!(
        outcome.document.get(&name("s")).unwrap().constraint,
        Constraint::Filter(FilterKind::MinLength(2))
    );
}

#[test]
fn annotations_are_accepted() {
    let d = read(":s a sh:NodeShape ; sh:name \"S\" ; sh:description \"d\" .").unwrap();
    assert_eq!(d.get(&name("s")).unwrap().constraint, Constraint::True);
}

#[test]
fn anonymous_shapes_referenced_twice_stay_named() {
    let d = read(
        ":s a sh:NodeShape ; sh:node _:x . :t a sh:NodeShape ; sh:node _:x .
         _:x sh:minLength 1 .",
    )
    .unwrap();
    assert_eq!(d.len(), 3);
}

#[test]
fn self_referencing_anonymous_shape_is_kept() {
    let d = read(":s a sh:NodeShape ; sh:node _:x . _:x sh:not _:x .").unwrap();
    assert_eq!(d.len(), 2);
    assert!(d.is_recursive());
}

#[test]
fn vocabulary_report_flags() {
    let fig1 = std::fs::read_to_string(format!(
        "{}/../../fixtures/fig1_shapes.ttl",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let report = vocabulary_report(&parse_turtle_subset(&fig1).unwrap());
    assert_eq!(report.len(), 3);
    assert!(report.iter().all(|(_, ok)| *ok));

    let g = parse_turtle_subset(&format!("{PREFIXES}:s sh:sparql :q .")).unwrap();
    assert_eq!(
        vocabulary_report(&g),
        vec![(Term::iri(format!("{}sparql", sh::NS)), false)]
    );
    assert!(vocabulary_report(&Graph::new()).is_empty());

    let veg = vocabulary_report(&graph_of("vegdish_shapes.ttl"));
    assert!(veg.iter().all(|(_, ok)| *ok), "{veg:?}");
    assert!(veg.iter().any(|(p, _)| p == &Term::iri(sh::INVERSE_PATH)));
}

fn graph_of(file: &str) -> Graph {
    let text =
        std::fs::read_to_string(format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    parse_turtle_subset(&text).unwrap()
}

#[test]
fn reading_is_deterministic() {
    let text = std::fs::read_to_string(format!(
        "{}/../../fixtures/vegdish_shapes.ttl",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let g = parse_turtle_subset(&text).unwrap();
    assert_eq!(read_document(&g).unwrap(), read_document(&g).unwrap());
}
