use std::cmp::Ordering;

use super::{compare_literals, eval_filter, path_eval, ShapeSigns, TruthValue};
use crate::ast::{Comparison, Constraint};
use crate::rdf::{Graph, Term};

/// Evaluates `c` on `node` under the assignment `signs`.
///
/// Shape references are read from the assignment, never recursively
/// evaluated. Only `Ref` can introduce `Undefined`; every other leaf is
/// two-valued.
pub fn eval_constraint<S: ShapeSigns + ?Sized>(
    g: &Graph,
    signs: &S,
    c: &Constraint,
    node: &Term,
) -> TruthValue {
    match c {
        Constraint::True => TruthValue::True,
        Constraint::Not(inner) => !eval_constraint(g, signs, inner, node),
        Constraint::And(a, b) => match eval_constraint(g, signs, a, node) {
            TruthValue::False => TruthValue::False,
            left => left.and(eval_constraint(g, signs, b, node)),
        },
        Constraint::HasValue(t) => TruthValue::from_bool(node == t),
        Constraint::Filter(f) => TruthValue::from_bool(eval_filter(f, node)),
        Constraint::Ref(s) => signs.truth(node, s),
        Constraint::AtLeast { count, path, inner } => {
            // satisfied: values evaluating True; possible: values not False
            let needed = count.get();
            let values = path_eval(g, path, node);
            if values.len() < needed {
                return TruthValue::False;
            }
            let (mut satisfied, mut possible) = (0usize, 0usize);
            for v in &values {
                match eval_constraint(g, signs, inner, v) {
                    TruthValue::True => {
                        satisfied += 1;
                        possible += 1;
                        if satisfied >= needed {
                            return TruthValue::True;
                        }
                    }
                    TruthValue::Undefined => possible += 1,
                    TruthValue::False => {}
                }
            }
            if possible < needed {
                TruthValue::False
            } else {
                TruthValue::Undefined
            }
        }
        Constraint::Equals { path, predicate } => {
            TruthValue::from_bool(&path_eval(g, path, node) == g.objects(node, predicate))
        }
        Constraint::Disjoint { path, predicate } => {
            let others = g.objects(node, predicate);
            TruthValue::from_bool(path_eval(g, path, node).is_disjoint(others))
        }
        Constraint::Order {
            path,
            predicate,
            comparison,
        } => {
            let others = g.objects(node, predicate);
            let ok = path_eval(g, path, node).iter().all(|a| {
                others
                    .iter()
                    .all(|b| compare_literals(a, b).is_some_and(|o| ordered(o, *comparison)))
            });
            TruthValue::from_bool(ok)
        }
        Constraint::Closed(allowed) => {
            TruthValue::from_bool(g.predicates_of(node).all(|p| allowed.contains(p)))
        }
    }
}

fn ordered(o: Ordering, comparison: Comparison) -> bool {
    match comparison {
        Comparison::Less => o == Ordering::Less,
        Comparison::LessOrEqual => o != Ordering::Greater,
        Comparison::Greater => o == Ordering::Greater,
        Comparison::GreaterOrEqual => o != Ordering::Less,
    }
}
