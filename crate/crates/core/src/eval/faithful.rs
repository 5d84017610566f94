use super::{eval_constraint, node_universe, target_nodes, Assignment, NodeUniverse, Sign};
use crate::ast::Document;
use crate::rdf::Graph;

/// Consistency over `nodes(g, d)`: every pair's sign agrees with the
/// evaluation of the shape's constraint, and nothing outside the universe is
/// signed.
pub fn check_condition1(g: &Graph, sigma: &Assignment, d: &Document) -> bool {
    check_condition1_over(g, sigma, d, &node_universe(g, d))
}

/// Consistency over an explicit universe. Used for target-stripped
/// documents, which keep the universe of the original document.
pub fn check_condition1_over(g: &Graph, sigma: &Assignment, d: &Document, universe: &NodeUniverse) -> bool {
    let in_domain = sigma
        .iter()
        .all(|(n, s, _)| universe.contains(n) && d.get(s).is_some());
    in_domain
        && d.shapes().all(|shape| {
            universe.iter().all(|n| {
                let value = eval_constraint(g, sigma, &shape.constraint, n);
                sigma.get(n, &shape.name) == Sign::of(value)
            })
        })
}

/// Target coverage: every target node of every shape is signed `Pos`.
pub fn check_targets(g: &Graph, sigma: &Assignment, d: &Document) -> bool {
    d.shapes().all(|shape| {
        shape.targets.iter().all(|t| {
            target_nodes(g, t)
                .iter()
                .all(|n| sigma.get(n, &shape.name) == Some(Sign::Pos))
        })
    })
}

pub fn is_faithful(g: &Graph, sigma: &Assignment, d: &Document) -> bool {
    check_condition1(g, sigma, d) && check_targets(g, sigma, d)
}

/// No pair of `nodes(g, d)` × shapes is `Undefined`.
pub fn is_total(sigma: &Assignment, g: &Graph, d: &Document) -> bool {
    let universe = node_universe(g, d);
    d.names()
        .all(|s| universe.iter().all(|n| sigma.get(n, s).is_some()))
}
