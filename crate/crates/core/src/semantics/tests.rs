use super::*;
use crate::ast::{Constraint, Path, Shape, TargetDecl};
use crate::eval::{is_faithful, is_total};
use crate::rdf::parse_turtle_subset;
use crate::reader::read_document;

use SemanticsMode::*;

fn ex(s: &str) -> Term {
    Term::iri(format!("http://example.org/{s}"))
}

fn name(s: &str) -> ShapeName {
    ShapeName(ex(s))
}

fn fixture_text(file: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn graph(file: &str) -> Graph {
    parse_turtle_subset(&fixture_text(file)).unwrap()
}

fn doc(file: &str) -> Document {
    read_document(&graph(file)).unwrap()
}

fn both(g: &Graph, d: &Document, mode: SemanticsMode) -> bool {
    let engine = validate(g, d, mode).unwrap();
    let oracle = brute_force_validate_with(g, d, mode, 20).unwrap();
    assert_eq!(
        engine.valid, oracle.valid,
        "engine and oracle disagree under {mode}"
    );
    engine.valid
}

fn pairs(result: &ValidationResult) -> Vec<(Term, ShapeName)> {
    result
        .violations
        .iter()
        .map(|v| (v.focus.clone(), v.shape.clone()))
        .collect()
}

#[test]
fn fig1_standard_reports_anne() {
    let r = validate_standard(&graph("fig1_data.ttl"), &doc("fig1_shapes.ttl")).unwrap();
    assert!(!r.valid);
    assert_eq!(pairs(&r), vec![(ex("Anne"), name("EmployeeShape"))]);
    assert_eq!(r.stats.nodes, 9);
    assert_eq!(r.stats.guessable_pairs, 0);
}

#[test]
fn fig2_standard_reports_anne_and_bob() {
    let r = validate_standard(&graph("fig1_data.ttl"), &doc("fig2_shapes.ttl")).unwrap();
    assert!(!r.valid);
    assert_eq!(
        pairs(&r),
        vec![
            (ex("Anne"), name("EmployeeShapeB")),
            (ex("Bob"), name("EmployeeShapeB"))
        ]
    );
}

#[test]
fn empty_instance_is_valid_everywhere() {
    for mode in SemanticsMode::ALL {
        let r = validate(&Graph::new(), &Document::empty(), mode).unwrap();
        assert!(r.valid);
        assert_eq!(r.witness, Some(Assignment::new()));
        assert!(
            brute_force_validate(&Graph::new(), &Document::empty(), mode)
                .unwrap()
                .valid
        );
    }
}

#[test]
fn standard_rejects_recursion() {
    let err = validate_standard(&graph("small_graph_a.ttl"), &doc("inconsistent_shapes.ttl")).unwrap_err();
    assert_eq!(
        err,
        ValidationError::Recursion {
            shapes: vec![name("InconsistentS")]
        }
    );
    assert!(matches!(
        brute_force_validate(
            &graph("small_graph_a.ttl"),
            &doc("inconsistent_shapes.ttl"),
            Standard
        ),
        Err(ValidationError::Recursion { .. })
    ));
}

#[test]
fn inconsistent_shape_splits_partial_and_total() {
    let d = doc("inconsistent_shapes.ttl");
    for file in ["small_graph_a.ttl", "small_graph_b.ttl", "fig1_data.ttl"] {
        let g = graph(file);
        let partial = validate(&g, &d, BravePartial).unwrap();
        assert!(partial.valid, "{file}");
        assert_eq!(partial.witness, Some(Assignment::new()));
        let total = validate(&g, &d, BraveTotal).unwrap();
        assert!(!total.valid, "{file}");
        assert_eq!(total.violations.len(), node_count(&g));
        assert!(!validate(&g, &d, CautiousTotal).unwrap().valid);
        assert!(validate(&g, &d, CautiousPartial).unwrap().valid);
    }
    // on the empty graph there are no pairs to sign
    assert!(validate(&Graph::new(), &d, BraveTotal).unwrap().valid);
}

fn node_count(g: &Graph) -> usize {
    g.nodes().len()
}

#[test]
fn vegdish_brave_and_cautious() {
    let g = graph("vegdish_data.ttl");
    let d = doc("vegdish_shapes.ttl");
    for mode in [BravePartial, BraveTotal] {
        let r = validate(&g, &d, mode).unwrap();
        assert!(r.valid, "{mode}");
        let w = r.witness.unwrap();
        assert_eq!(w.get(&ex("DailySpecial"), &name("VegDishShape")), Some(Sign::Pos));
        assert_eq!(
            w.get(&ex("Chicken"), &name("VegIngredientShape")),
            Some(Sign::Pos)
        );
        assert!(is_faithful(&g, &w, &d));
    }
    for mode in [CautiousPartial, CautiousTotal] {
        let r = validate(&g, &d, mode).unwrap();
        assert!(!r.valid, "{mode}");
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].focus, ex("DailySpecial"));
        assert!(r.violations[0].detail.contains("assignment"));
    }
    for mode in [BravePartial, BraveTotal, CautiousPartial, CautiousTotal] {
        both(&g, &d, mode);
    }
}

#[test]
fn non_recursive_modes_agree() {
    let g = graph("fig1_data.ttl");
    for file in ["fig1_shapes.ttl", "fig2_shapes.ttl"] {
        let d = doc(file);
        let expected = validate_standard(&g, &d).unwrap();
        for mode in SemanticsMode::ALL {
            let r = validate(&g, &d, mode).unwrap();
            assert_eq!(r.valid, expected.valid);
            assert_eq!(pairs(&r), pairs(&expected), "{file} {mode}");
        }
    }
}

#[test]
fn witnesses_are_faithful_and_total_when_required() {
    let g = graph("vegdish_data.ttl");
    let d = doc("vegdish_shapes.ttl");
    let r = validate(&g, &d, BraveTotal).unwrap();
    let w = r.witness.unwrap();
    assert!(is_faithful(&g, &w, &d) && is_total(&w, &g, &d));
    let fig1 = doc("fig1_shapes.ttl");
    let g1 =
        parse_turtle_subset("@prefix : <http://example.org/> . :Anne a :Employee ; :hasOfficeNumber \"1\" .")
            .unwrap();
    let r = validate_standard(&g1, &fig1).unwrap();
    assert!(r.valid);
    let w = r.witness.unwrap();
    assert!(is_faithful(&g1, &w, &fig1) && is_total(&w, &g1, &fig1));
}

#[test]
fn budgets() {
    let g = graph("fig1_data.ttl");
    let d = doc("inconsistent_shapes.ttl");
    assert_eq!(
        validate_with(&g, &d, BravePartial, 8).unwrap_err(),
        ValidationError::SearchBudgetExceeded { pairs: 9, limit: 8 }
    );
    assert_eq!(
        brute_force_validate_with(&g, &d, BravePartial, 8).unwrap_err(),
        ValidationError::OracleBudgetExceeded { pairs: 9, limit: 8 }
    );
    // non-recursive documents need no guesses, whatever their size
    assert!(validate_with(&g, &doc("fig2_shapes.ttl"), CautiousTotal, 0).is_ok());
}

#[test]
fn oracle_counts_every_assignment() {
    let g = graph("small_graph_a.ttl");
    let d = doc("inconsistent_shapes.ttl");
    assert_eq!(
        brute_force_validate(&g, &d, CautiousPartial)
            .unwrap()
            .stats
            .assignments_tried,
        9
    );
    assert_eq!(
        brute_force_validate(&g, &d, BraveTotal)
            .unwrap()
            .stats
            .assignments_tried,
        4
    );
}

#[test]
fn monotone_extension_precondition() {
    let g = graph("fig1_data.ttl");
    let d = doc("fig1_shapes.ttl");
    let t = |p: &str| Triple::new(ex("x"), ex(p), ex("y"));
    assert!(monotone_extension_check(&g, &d, &t("unknownPred")));
    assert!(!monotone_extension_check(&g, &d, &t("hasOfficeNumber")));
    assert!(!monotone_extension_check(
        &g,
        &d,
        &Triple::new(ex("x"), Term::iri(crate::vocab::rdf::TYPE), ex("y"))
    ));
    let closed = Document::new([Shape::new(name("c"), [], Constraint::Closed(Default::default()))]).unwrap();
    assert!(!monotone_extension_check(&g, &closed, &t("unknownPred")));
}

/// Under total semantics a fresh node can make a recursive document
/// unsatisfiable: `s ↔ (x = :a ∨ ¬s(x))` has a total model only where every
/// node is `:a`.
#[test]
fn total_modes_are_not_monotone_for_recursive_documents() {
    let s = name("s");
    let d = Document::new([Shape::new(
        s.clone(),
        [],
        Constraint::or(Constraint::HasValue(ex("a")), Constraint::not(Constraint::Ref(s))),
    )])
    .unwrap();
    let g: Graph = [Triple::new(ex("a"), ex("p"), ex("a"))].into_iter().collect();
    let t = Triple::new(ex("b"), ex("q"), ex("c"));
    assert!(monotone_extension_check(&g, &d, &t));
    assert!(both(&g, &d, BraveTotal));
    let mut bigger = g.clone();
    bigger.insert(t);
    assert!(!both(&bigger, &d, BraveTotal));
    assert!(both(&bigger, &d, BravePartial));
}

#[test]
fn target_free_documents_are_brave_partial_valid() {
    let d = Document::new([
        Shape::new(name("s"), [], Constraint::not(Constraint::Ref(name("t")))),
        Shape::new(
            name("t"),
            [],
            Constraint::at_least(
                1,
                Path::predicate("http://example.org/p"),
                Constraint::Ref(name("s")),
            )
            .unwrap(),
        ),
    ])
    .unwrap();
    assert!(both(&graph("small_graph_a.ttl"), &d, BravePartial));
}

#[test]
fn node_target_outside_graph() {
    let d = Document::new([Shape::new(
        name("s"),
        [TargetDecl::Node(ex("DailySpecial"))],
        Constraint::at_least(1, Path::predicate("http://example.org/p"), Constraint::True).unwrap(),
    )])
    .unwrap();
    let r = validate(&Graph::new(), &d, BravePartial).unwrap();
    assert!(!r.valid);
    assert_eq!(pairs(&r), vec![(ex("DailySpecial"), name("s"))]);
}

#[test]
fn digest_is_stable() {
    let sigma: Assignment = [(ex("a"), name("s"), Sign::Pos)].into_iter().collect();
    assert_eq!(assignment_digest(&sigma), assignment_digest(&sigma.clone()));
    assert_eq!(assignment_digest(&sigma).len(), 16);
    assert_ne!(assignment_digest(&sigma), assignment_digest(&Assignment::new()));
}

#[test]
fn modes_parse_and_print() {
    for mode in SemanticsMode::ALL {
        assert_eq!(mode.as_str().parse::<SemanticsMode>().unwrap(), mode);
    }
    assert!("brave".parse::<SemanticsMode>().is_err());
}
